"""One test per acceptance criterion; each prints a PASS or FAIL line.

Criteria 4, 9 and 10 fail as stated because three printed determinant
formulas and one printed denominator are wrong.  Those tests are strict
xfails, and each has a companion test that checks the corrected reading
and confirms that the printed reading is the only thing failing.
"""
import time
from functools import lru_cache

import pytest

from qpfaff.suites import SuiteConfig, run_suites

from . import acceptance_log

PRINTED_MISPRINTS = ("phi.andrews.printed.", "schur.det.xi_even.printed.", "schur.det.xi_odd.printed.",
                     "schur.det.zeta_even.printed.")


@lru_cache(maxsize=None)
def run(suites: tuple, **kw):
    t0 = time.perf_counter()
    summary = run_suites(SuiteConfig(suites=list(suites), **kw))
    return summary, time.perf_counter() - t0


def report(number: int, ok: bool, text: str):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
    acceptance_log.LINES.append(line)
    print(line)


def failures(summary):
    return [r.id for r in summary.reports if not r.ok]


def is_misprint(check_id: str) -> bool:
    return check_id.startswith(PRINTED_MISPRINTS)


def test_criterion_1_psi_three_ways():
    s, dt = run(("psi.triple",), max_n=12)
    ok = s.failed == 0 and dt <= 60 and any(r.id == "psi.triple.printed" for r in s.reports)
    report(1, ok, f"Psi_N three ways for N<=12 and printed Psi_0..Psi_3, {s.passed} checks in {dt:.1f} s")
    assert ok, failures(s)


def test_criterion_2_associated_recurrences():
    s, dt = run(("psi.aac",), max_n=10)
    ids = {r.id for r in s.reports}
    ok = s.failed == 0 and {"psi.aac.recX.N5", "psi.aac.recY.N5", "psi.aac.seeds"} <= ids
    report(2, ok, f"even and odd index recurrences for N<=5 with printed seeds, {s.passed} checks")
    assert ok, failures(s)


def test_criterion_3_z1_closed_forms():
    s, dt = run(("psi.z1",), max_n=12, trials=20)
    ok = s.failed == 0 and "psi.z1.hyper.N12" in {r.id for r in s.reports}
    report(3, ok, f"z=1 closed forms for N<=12, hypergeometric forms at 20 points, {s.passed} checks")
    assert ok, failures(s)


@pytest.mark.xfail(strict=True, reason="the printed ordinary display has (z^2q^4;q^4) where (z^2q^2;q^4) holds")
def test_criterion_4_andrews_as_printed():
    s, dt = run(("psi.andrews.strict", "phi.andrews"), max_n=3, degree=16)
    bad = failures(s)
    report(4, not bad, f"Andrews specialisations to q^16 for N<=3; failing: {', '.join(bad) or 'none'}")
    assert not bad


def test_criterion_4_corrected_reading():
    s, _ = run(("psi.andrews.strict", "phi.andrews"), max_n=3, degree=16)
    ids = {r.id: r for r in s.reports}
    assert all(ids[f"phi.andrews.corrected.{p}.N{N}"].ok for p in ("even", "odd") for N in range(4))
    assert all(ids[f"psi.andrews.strict.{p}.N{N}"].ok for p in ("even", "odd") for N in range(4))
    assert all(is_misprint(i) for i in failures(s))
    assert all(r.witness["first_difference"] == "z^2*q^2" for r in s.reports if not r.ok)


def test_criterion_5_phi_structure():
    s, dt = run(("phi.closed", "phi.boulet", "boulet.bijection"), max_n=10, degree=12)
    ok = s.failed == 0 and "boulet.bijection.roundtrip" in {r.id for r in s.reports}
    report(5, ok, f"Phi_N division, recurrences, Boulet limits and bijection, {s.passed} checks")
    assert ok, failures(s)


def test_criterion_6_phi_nm():
    s, dt = run(("phi.nm.pfaffian", "phi.nm.rec"), max_n=10)
    ids = {r.id for r in s.reports}
    ok = s.failed == 0 and {"phi.nm.pfaffian.N8", "phi.nm.rec.U.N5", "phi.nm.pfaffian.printed"} <= ids
    report(6, ok, f"Phi_(N,M) Pfaffian for N<=8, U/V recurrences for N<=5, {s.passed} checks")
    assert ok, failures(s)


def test_criterion_7_minor_summation():
    s, dt = run(("pfaffian.minor_sum",), trials=20)
    notes = {r.id: r.note for r in s.reports}
    cases = [int(notes[i].split()[0]) for i in ("pfaffian.minor_sum.random", "pfaffian.minor_sum_fixed.random")]
    ok = s.failed == 0 and min(cases) >= 50
    report(7, ok, f"both minor summation identities on {min(cases)} random cases each")
    assert ok, failures(s)


def test_criterion_8_numeric():
    s, dt = run(("psi.numeric",))
    labels = {r.id.split("[")[1] for r in s.reports if "[" in r.id}
    ok = s.failed == 0 and dt <= 10 and len(labels) == 6
    report(8, ok, f"numeric closed forms at {len(labels)} states, {s.passed} checks in {dt:.1f} s")
    assert ok, failures(s)


@pytest.mark.xfail(strict=True, reason="three printed determinant formulas miss a cross factor for n>=3")
def test_criterion_9_schur_as_printed():
    s, dt = run(("schur",), n=5, trials=20)
    bad = failures(s)
    report(9, not bad and dt <= 120,
           f"Schur suite in {dt:.1f} s; failing: {', '.join(bad) or 'none'}")
    assert not bad and dt <= 120


def test_criterion_9_corrected_reading():
    s, dt = run(("schur",), n=5, trials=20)
    ids = {r.id: r for r in s.reports}
    assert dt <= 120
    assert all(ids[f"schur.zeta.finite.n{n}.N{N}"].ok for n in range(6) for N in range(n + 1))
    assert all(ids[f"schur.zeta.infinite.n{n}"].ok for n in range(1, 5))
    corrected = [r for i, r in ids.items() if i.startswith("schur.det.") and ".corrected." in i]
    assert len(corrected) == 6 and all(r.ok for r in corrected)
    assert all(ids[f"schur.cauchy.n{n}"].ok for n in range(5))
    assert set(failures(s)) == {"schur.det.xi_odd.printed.n3", "schur.det.xi_even.printed.n4",
                                "schur.det.zeta_even.printed.n4"}


@pytest.mark.xfail(strict=True, reason="exit code is 1 while the printed-reading checks fail")
def test_criterion_10_verify_all():
    s, dt = run(("all",))
    report(10, s.exit_code == 0 and dt < 300,
           f"verify all in {dt:.1f} s, exit code {s.exit_code}, {s.failed} of {len(s.reports)} checks failing")
    assert s.exit_code == 0 and dt < 300


def test_criterion_10_only_misprints_fail():
    s, dt = run(("all",))
    assert dt < 300
    assert s.failed > 0 and all(is_misprint(i) for i in failures(s))
