from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpfaff import schur as sc
from qpfaff.partitions import Partition
from qpfaff.poly import PoleError
from qpfaff.rng import stream

xs = st.lists(st.integers(-30, 30).filter(bool), min_size=2, max_size=4, unique_by=abs).map(
    lambda v: tuple(Fraction(t) for t in v))


def test_small_p_functions():
    x = (Fraction(2), Fraction(3))
    assert sc.schur_p(Partition.of(1), x) == 5
    assert sc.schur_p(Partition.of(2, 1), x) == 2 * 3 * 5
    assert sc.schur_p(Partition.of(3, 2, 1), x) == 0
    assert sc.schur_q(Partition.of(2, 1), x) == 4 * 30


def test_cli_sample_value_is_integral():
    v = sc.schur_p(Partition.of(3, 1), (2, 3, 5, 7))
    assert v.denominator == 1


@given(xs, st.sampled_from([Partition.of(1), Partition.of(2), Partition.of(3, 1), Partition.of(4, 2, 1)]))
@settings(max_examples=40)
def test_symmetric_and_integral(x, mu):
    p = sc.schur_p(mu, x)
    assert sc.schur_p(mu, tuple(reversed(x))) == p
    assert p.denominator == 1


def test_pole_rules():
    with pytest.raises(PoleError):
        sc.SchurContext((1, -1), {k: 1 for k in "abcd"})
    with pytest.raises(PoleError):
        sc.SchurContext((0, 2), {k: 1 for k in "abcd"})


def test_zeta_three_ways():
    rng = stream(3, "test")
    for n in range(0, 4):
        ctx = sc.random_rational_context(rng, n)
        for N in range(n + 1):
            b = sc.zeta_finite(N, ctx, "bruteforce")
            assert sc.zeta_finite(N, ctx, "pfaffian_C") == b
            assert sc.zeta_finite(N, ctx, "pfaffian_D") == b
    with pytest.raises(ValueError):
        sc.zeta_finite(3, sc.random_rational_context(rng, 2))


def test_zeta_infinite_matches_bruteforce():
    ctx = sc.SchurContext.series((Fraction(2), Fraction(5, 3), Fraction(-1, 2)), 6)
    assert sc.zeta_infinite(ctx) == sc.zeta_infinite_bruteforce(ctx)


def test_corrected_determinants_and_printed_misprint():
    rng = stream(5, "test")
    ctx = sc.random_rational_context(rng, 2)
    assert sc.det_xi_even(ctx) == sc.det_xi_even_corrected(ctx)
    reports = {r.id: r for r in sc.check_det_formulas(3, 2, 11)}
    assert reports["schur.det.xi_odd.corrected.n3"].ok
    assert not reports["schur.det.xi_odd.printed.n3"].ok
    assert reports["schur.det.xi_odd.printed.n1"].ok


def test_check_functions_small():
    for reports in (sc.check_schur_basic(3, 3, 1), sc.check_zeta_finite(3, 2, 1), sc.check_displayed_matrix(1),
                    sc.check_zeta_infinite(3, 6, 1), sc.check_cauchy(6, 2, 1)):
        assert reports and all(r.ok for r in reports), [r.id for r in reports if not r.ok]
