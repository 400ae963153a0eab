import pytest

from qpfaff import genfun as gf
from qpfaff.poly import parse_poly


def test_printed_small_values():
    for N in range(4):
        assert gf.psi(N).render() == parse_poly(gf.PRINTED_PSI[N]).render()
    assert gf.psi(2).render() == "1 + a*z + a*b*z + a*b*c*z^2"
    assert gf.psi(0).render() == "1"


@pytest.mark.parametrize("N", range(7))
def test_three_methods_agree(N):
    assert gf.psi(N, "bruteforce") == gf.psi(N, "pfaffian") == gf.psi(N, "recurrence")


def test_psi_at_z1_closed_form():
    for N in range(8):
        assert gf.at_z1(gf.psi(N)) == gf.psi_z1_closed(N)


def test_asc_form_reproduces_psi_at_z1():
    for N in range(6):
        assert gf.psi_asc_form(N) == gf.at_z1(gf.psi(N))


def test_unknown_method():
    with pytest.raises(ValueError):
        gf.psi(3, "nope")
    with pytest.raises(ValueError):
        gf.psi(-1)


def test_phi_closed_matches_bruteforce():
    for N in range(6):
        assert gf.phi_closed(N, 8) == gf.phi_bruteforce(N, 8)


def test_phi_tilde_printed_values():
    for N, text in gf.PRINTED_PHI_TILDE.items():
        assert gf.phi_nm(N, method="pfaffian_sum") == parse_poly(text)
    assert gf.phi_nm(4, method="pfaffian_sum").coeff("z", 1) == parse_poly("1+a+ab+ac+abc+abcd")


def test_phi_nm_methods():
    for N in range(7):
        assert gf.phi_nm(N, method="pfaffian_sum") == gf.phi_nm(N, method="recurrence") == gf.phi_tilde_sum(N)


def test_alternative_odd_parameters_fail_at_two():
    assert gf.aac_alternative_y_params(3) == 2


def test_andrews_printed_denominator_is_off():
    ok, diff = gf.andrews_printed_ordinary_ok(1, False, 10)
    assert not ok
    assert "z^2*q^2" in diff


def test_limit_strict_head_detects_tampering(monkeypatch):
    assert gf.limit_strict_head(10) is None
    bad = list(gf.PRINTED_LIMIT_STRICT_HEAD)
    bad[2] = ("abc(1+a+ad)", bad[2][1])
    monkeypatch.setattr(gf, "PRINTED_LIMIT_STRICT_HEAD", bad)
    assert gf.limit_strict_head(10)["z_power"] == 2


def test_row_recursion_matches_enumeration():
    st = dict(gf.SAMPLE_STATE)
    for kind in ("strict", "ordinary"):
        for zexp in ("length", "size"):
            rows = gf.partition_sum_numeric(st, kind, zexp)
            listed = gf.partition_sum_numeric(st, kind, zexp, method="enumerate", max_size=40)
            assert rows == pytest.approx(listed, rel=1e-12)


def test_numeric_closed_form_matches_polynomial():
    st = gf.random_states(7, 1)[0]
    for N in range(8):
        assert gf.psi_numeric_closed(N, st) == pytest.approx(gf._fval(gf.psi(N), st), rel=1e-9)


def test_limit_strict_lines_agree_with_sum():
    st = gf.SAMPLE_STATE
    even, odd = gf.limit_strict_numeric(st)
    direct = gf.strict_sum_numeric(st)
    assert even == pytest.approx(direct, rel=1e-10)
    assert odd == pytest.approx(direct, rel=1e-10)


def test_random_states_are_reproducible_and_in_range():
    s1, s2 = gf.random_states(42), gf.random_states(42)
    assert s1 == s2 and len(s1) == 5
    for st in s1:
        assert all(0.05 <= st[k] <= 0.35 for k in "abcd") and 0.2 <= st["z"] <= 0.8


def test_check_functions_small():
    for reports in (gf.check_psi_triple(5), gf.check_psi_aac(3), gf.check_psi_z1(6, 3, 1),
                    gf.check_phi_closed(5, 8), gf.check_boulet(8), gf.check_phi_nm_pfaffian(5),
                    gf.check_phi_nm_rec(4), gf.check_bijection(max_part=5, max_size=9, cap=8, max_n=5)):
        assert reports and all(r.ok for r in reports), [r.id for r in reports if not r.ok]


def test_andrews_check_ids():
    reports = {r.id: r for r in gf.check_andrews(1, 12)}
    assert reports["psi.andrews.strict.even.N1"].ok
    assert reports["phi.andrews.corrected.odd.N1"].ok
    assert not reports["phi.andrews.printed.odd.N1"].ok
    assert reports["phi.andrews.printed.even.N0"].ok
