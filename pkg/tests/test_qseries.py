from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpfaff import qseries as qs
from qpfaff.poly import STD, q_of

Q = q_of(STD)
fracs = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=20)


def test_pochhammer_small():
    a = STD.var("a")
    assert qs.q_pochhammer(a, 0) == STD.one()
    assert qs.q_pochhammer(a, 2) == (1 - a) * (1 - a * Q)
    assert qs.q_pochhammer(Fraction(1, 2), 3, Fraction(1, 3)) == Fraction(1, 2) * Fraction(5, 6) * Fraction(17, 18)


def test_infinite_pochhammer_numeric():
    # Euler: (q;q)_inf at q = 0.1 from the pentagonal series
    q = 0.1
    pent = sum((-1) ** k * q ** (k * (3 * k - 1) // 2) for k in range(-6, 7))
    assert qs.q_pochhammer(q, qs.INF, q) == pytest.approx(pent, rel=1e-14)
    with pytest.raises(qs.DomainError):
        qs.q_pochhammer(0.5, qs.INF, 1.5)


def test_gauss_binomial_symmetry_and_pascal():
    for N in range(13):
        for j in range(N + 1):
            assert qs.gauss_binomial(N, j) == qs.gauss_binomial(N, N - j)
            if 0 < j < N:
                assert qs.gauss_binomial(N, j) == qs.gauss_binomial(N - 1, j - 1) + Q ** j * qs.gauss_binomial(N - 1, j)
    assert qs.gauss_binomial(3, 5) == STD.zero()


def _abs_term_sum(ups, downs, q, z, n):
    total, term = Fraction(0), Fraction(1)
    for k in range(n + 1):
        total += abs(term)
        num = den = Fraction(1)
        for a in ups:
            num *= 1 - a * q ** k
        den *= 1 - q ** (k + 1)
        for b in downs:
            den *= 1 - b * q ** k
        term = term * num * z / den
    return total


@given(st.integers(0, 6), fracs, fracs, fracs, fracs)
@settings(max_examples=40)
def test_terminating_hypergeometric_exact_vs_numeric(n, q, b, c, z):
    exact = qs.phi21(q ** -n, b, c, q, z, n=n)
    approx = qs.phi21(float(q) ** -n, float(b), float(c), float(q), float(z), mode="numeric")
    # floating error is measured against the size of the terms, since they may cancel
    scale = float(_abs_term_sum([q ** -n, b], [c], q, z, n))
    assert abs(float(exact) - approx) <= 1e-12 * scale


def test_exact_mode_needs_terminating_series():
    with pytest.raises(ValueError):
        qs.phi21(Fraction(1, 3), Fraction(1, 2), Fraction(1, 5), Fraction(1, 2), Fraction(1, 2))


def test_q_chu_vandermonde():
    # 2phi1(q^-n, b; c; q, cq^n/b) = (c/b;q)_n / (c;q)_n
    q, b, c = Fraction(1, 3), Fraction(2, 7), Fraction(3, 5)
    for n in range(6):
        lhs = qs.phi21(q ** -n, b, c, q, c * q ** n / b, n=n)
        assert lhs == qs.q_pochhammer(c / b, n, q) / qs.q_pochhammer(c, n, q)


@given(fracs, fracs, fracs, fracs)
@settings(max_examples=30)
def test_associated_recurrence_at_t1_is_plain(x, al, be, q):
    direct = qs.asc_sequence(7, x, al, be, q)
    assert qs.aasc_sequence(7, x, al, be, q, 1, (1, 2 * x - (al + be))) == direct


def test_second_polynomial_against_explicit_sum():
    u, al, be, q = Fraction(3, 2), Fraction(1, 4), Fraction(-2, 3), Fraction(1, 5)
    x = (u + 1 / u) / 2
    want = qs.q_pochhammer(al * be, 2, q) / al ** 2 * qs.phi32(q ** -2, al * u, al / u, al * be, 0, q, q, n=2)
    assert qs.asc_polynomial(2, x, al, be, q) == want


def test_scaled_sequence_matches_plain():
    u, al, be, q, t = Fraction(1, 3), Fraction(1, 2), Fraction(1, 5), Fraction(1, 7), Fraction(2, 9)
    x = (u + 1 / u) / 2
    plain = qs.aasc_sequence(6, x, al, be, q, t, (1, 2 * x - (al + be) * t))
    scaled = qs.aasc_scaled_sequence(6, u * u, (al + be) * u, al * be, q, t, (1, u * u + 1 - (al + be) * u * t))
    assert all(s == u ** k * p for k, (s, p) in enumerate(zip(scaled, plain)))


def test_casorati_closed_form():
    st_ = qs.AASCState(alpha=0.3, beta=0.2, t=0.4, u=0.5, q=0.1)
    w = qs.w1_closed(st_)
    # product recurrence: W_{n+1} = (1 - t q^n)(1 - t ab q^(n-1)) W_n
    for n in range(1, 6):
        ratio = qs.casorati(st_, n + 1) / qs.casorati(st_, n)
        assert ratio == pytest.approx((1 - st_.t * st_.q ** n) * (1 - st_.t * 0.06 * st_.q ** (n - 1)), rel=1e-10)
    assert qs.casorati(st_, 1) == pytest.approx(w, rel=1e-9)
