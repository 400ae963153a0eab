"""Registry of verification suites and the runner used by the CLI."""
from __future__ import annotations

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import genfun as gf
from . import qseries as qs
from . import schur as sc
from .partitions import Partition, enumerate_partitions
from .pfaffian import (SkewMatrix, det_bareiss, minor_summation, minor_summation_fixed, pfaffian,
                       subpfaffian_weight_check)
from .poly import STD, TruncatedSeries
from .report import CheckReport, Verdict, first_difference, rel_err, run_check
from .rng import stream


@dataclass
class SuiteConfig:
    suites: list[str] = field(default_factory=lambda: ["all"])
    max_n: int = 10
    degree: int = 12
    trials: int = 20
    seed: int = 42
    tol: float = 1e-9
    n: int | None = None
    json: bool = False
    stable: bool = False
    jobs: int = 1


@dataclass
class RunSummary:
    reports: list[CheckReport]
    wall_ms: float

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.reports)

    @property
    def failed(self) -> int:
        return len(self.reports) - self.passed

    @property
    def exit_code(self) -> int:
        return 0 if self.failed == 0 else 1

    def to_json_obj(self, stable: bool = False) -> dict:
        obj = {"summary": True, "total": len(self.reports), "passed": self.passed, "failed": self.failed,
               "exit_code": self.exit_code}
        if not stable:
            obj["wall_ms"] = round(self.wall_ms, 3)
        return obj


# ---------------------------------------------------------------------------
# suite bodies


def _numeric_states(cfg: SuiteConfig) -> dict:
    states = {"sample": gf.SAMPLE_STATE}
    for i, st in enumerate(gf.random_states(cfg.seed)):
        states[f"random{i}"] = st
    return states


def suite_psi_numeric(cfg):
    states = _numeric_states(cfg)
    reports = [r for r in gf.check_numeric(states, max_n=min(cfg.max_n, 8), tol=cfg.tol)
               if not r.id.startswith("phi.limit2")]

    def head():
        return gf.limit_strict_head(16)
    reports.append(run_check("psi.numeric.limit_strict_head", head))
    return reports


def suite_phi_limit2(cfg):
    reports = []
    for label, st in _numeric_states(cfg).items():
        reports.extend(r for r in gf.check_numeric({label: st}, max_n=0, tol=cfg.tol)
                       if r.id.startswith("phi.limit2"))
    return reports


def _random_skew(rng, m):
    return SkewMatrix.from_func(range(1, m + 1), lambda i, j: rng.randint(-5, 5))


def suite_pfaffian_subpf(cfg):
    reports = []
    for lam in enumerate_partitions("strict", 6):
        reports.append(subpfaffian_weight_check(lam, "strict"))
    for lam in enumerate_partitions("ordinary", 4, max_size=8):
        reports.append(subpfaffian_weight_check(lam, "ordinary"))
    for lam in (Partition.of(5, 4, 4, 1), Partition.of(8, 5, 3)):
        reports.append(subpfaffian_weight_check(lam, "ordinary"))
    return reports


def suite_pfaffian_minor_sum(cfg):
    rng = stream(cfg.seed, "pfaffian.minor_sum")
    cases = max(50, cfg.trials)

    def plain():
        for k in range(cases):
            m = 1 + k % 6
            A, B = _random_skew(rng, m), _random_skew(rng, m)
            g, z = rng.randint(-3, 3), rng.randint(-3, 3)
            r = minor_summation(A, B, g, z)
            if not r.ok:
                return {"case": k, "size": m, **(r.witness or {})}
        return Verdict(note=f"{cases} random cases")

    def fixed():
        for k in range(cases):
            m = 1 + k % 6
            n = rng.randint(0, m)
            A, B = _random_skew(rng, m), _random_skew(rng, m)
            g, z = rng.randint(-3, 3), rng.randint(-3, 3)
            r = minor_summation_fixed(A, B, n, g, z)
            if not r.ok:
                return {"case": k, "size": m, "fixed": n, **(r.witness or {})}
        return Verdict(note=f"{cases} random cases")

    def symbolic():
        a, b, c, d, z = STD.gens("a b c d z")
        A = SkewMatrix.from_func(range(1, 5), lambda i, j: rng.randint(-4, 4))
        B = SkewMatrix.from_func(range(1, 5), lambda i, j: rng.randint(-4, 4))
        r = minor_summation(A, B, a, z)
        return r.witness
    return [run_check("pfaffian.minor_sum.random", plain),
            run_check("pfaffian.minor_sum_fixed.random", fixed),
            run_check("pfaffian.minor_sum.symbolic", symbolic)]


def suite_pfaffian_methods(cfg):
    rng = stream(cfg.seed, "pfaffian.methods")

    def body():
        for k in range(cfg.trials):
            m = 2 * (k % 4)
            A = SkewMatrix.from_func(range(1, m + 1),
                                     lambda i, j: Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            p = pfaffian(A)
            if p != pfaffian(A, "matching") or p != pfaffian(A, "eliminate"):
                return {"size": m, "expand": p, "matching": pfaffian(A, "matching"),
                        "eliminate": pfaffian(A, "eliminate")}
            if p * p != det_bareiss(A.dense()):
                return {"size": m, "pf_squared": p * p, "det": det_bareiss(A.dense())}
        return None
    return [run_check("pfaffian.methods", body)]


def suite_qseries(cfg):
    rng = stream(cfg.seed, "qseries")
    a, b, c, d = STD.gens("a b c d")
    q = a * b * c * d

    def gauss():
        for N in range(13):
            for j in range(N + 1):
                g = qs.gauss_binomial(N, j)
                if g != qs.gauss_binomial(N, N - j):
                    return {"N": N, "j": j, "identity": "symmetry"}
                if 0 < j < N:
                    pascal = qs.gauss_binomial(N - 1, j - 1) + q ** j * qs.gauss_binomial(N - 1, j)
                    if g != pascal:
                        return {"N": N, "j": j, "identity": "pascal"}
        return None

    def qbinomial():
        cap = 16
        lhs = TruncatedSeries(STD.zero(), cap)
        for k in range(cap + 1):
            lhs = lhs + (qs.q_pochhammer(-c, k, cap=cap) * (a * b) ** k
                         * gf.qs_series_inverse(qs.q_pochhammer(q, k, cap=cap)))
        rhs = qs.q_pochhammer(-a * b * c, qs.INF, cap=cap) * gf.qs_series_inverse(
            qs.q_pochhammer(a * b, qs.INF, cap=cap))
        return first_difference(lhs, rhs)

    def terminating():
        for _ in range(cfg.trials):
            n = rng.randint(0, 6)
            qv = Fraction(rng.randint(1, 9), rng.randint(10, 20))
            bu, cd, zz = (Fraction(rng.randint(1, 9), rng.randint(10, 30)) for _ in range(3))
            exact = qs.phi21(qv ** -n, bu, cd, qv, zz, n=n)
            approx = qs.phi21(float(qv) ** -n, float(bu), float(cd), float(qv), float(zz), mode="numeric")
            if rel_err(float(exact), approx) > 1e-12:
                return {"n": n, "exact": exact, "numeric": approx}
        return None

    def asc_explicit():
        # Q_n = (ab;q)_n a^-n 3phi2(q^-n, a u, a/u; ab, 0; q, q) with 2x = u + 1/u
        for _ in range(cfg.trials):
            u = rng.rational(20, 7)
            al, be = rng.rational(9, 5), rng.rational(9, 5)
            qv = Fraction(rng.randint(1, 9), rng.randint(10, 13))
            x = (u + 1 / u) / 2
            seq = qs.asc_sequence(6, x, al, be, qv)
            for n, got in enumerate(seq):
                want = (qs.q_pochhammer(al * be, n, qv) / al ** n
                        * qs.phi32(qv ** -n, al * u, al / u, al * be, 0, qv, qv, n=n))
                if got != want:
                    return {"n": n, "x": x, "alpha": al, "beta": be, "q": qv, "recurrence": got, "explicit": want}
        return None

    def asc_reduction():
        # the associated recurrence at t = 1 is the plain one
        for _ in range(cfg.trials):
            x, al, be = (rng.rational(20, 10) for _ in range(3))
            qv = Fraction(rng.randint(1, 9), 10)
            direct = qs.asc_sequence(8, x, al, be, qv)
            assoc = qs.aasc_sequence(8, x, al, be, qv, 1, (1, 2 * x - (al + be)))
            if direct != assoc:
                return {"x": x, "alpha": al, "beta": be, "q": qv}
        return None

    return [run_check("qseries.gauss", gauss), run_check("qseries.qbinomial", qbinomial),
            run_check("qseries.terminating", terminating), run_check("qseries.asc.explicit", asc_explicit),
            run_check("qseries.asc.t1", asc_reduction)]


SUITES: dict[str, Callable[[SuiteConfig], list[CheckReport]]] = {
    "psi.triple": lambda cfg: gf.check_psi_triple(cfg.max_n),
    "psi.aac": lambda cfg: gf.check_psi_aac(max(1, cfg.max_n // 2)),
    "psi.z1": lambda cfg: gf.check_psi_z1(cfg.max_n, cfg.trials, cfg.seed),
    "psi.numeric": suite_psi_numeric,
    "psi.andrews.strict": lambda cfg: [r for r in gf.check_andrews(min(cfg.max_n, 3), max(cfg.degree, 16))
                                       if r.id.startswith("psi.andrews.strict")],
    "phi.closed": lambda cfg: gf.check_phi_closed(cfg.max_n, cfg.degree),
    "phi.andrews": lambda cfg: [r for r in gf.check_andrews(min(cfg.max_n, 3), max(cfg.degree, 16))
                                if r.id.startswith("phi.andrews")],
    "phi.boulet": lambda cfg: gf.check_boulet(cfg.degree),
    "phi.limit2": suite_phi_limit2,
    "phi.nm.pfaffian": lambda cfg: gf.check_phi_nm_pfaffian(min(cfg.max_n, 8)),
    "phi.nm.rec": lambda cfg: gf.check_phi_nm_rec(min(cfg.max_n, 5)),
    "boulet.bijection": lambda cfg: gf.check_bijection(cap=cfg.degree, max_n=cfg.max_n),
    "pfaffian.subpf": suite_pfaffian_subpf,
    "pfaffian.minor_sum": suite_pfaffian_minor_sum,
    "pfaffian.methods": suite_pfaffian_methods,
    "qseries": suite_qseries,
    "schur.p": lambda cfg: sc.check_schur_basic(cfg.n or 5, cfg.trials, cfg.seed),
    "schur.zeta.finite": lambda cfg: sc.check_zeta_finite(cfg.n if cfg.n is not None else 5, cfg.trials,
                                                          cfg.seed),
    "schur.zeta.displayed": lambda cfg: sc.check_displayed_matrix(cfg.seed),
    "schur.zeta.infinite": lambda cfg: sc.check_zeta_infinite(min(cfg.n or 4, 4), 8, cfg.seed),
    "schur.det": lambda cfg: sc.check_det_formulas(min(cfg.n or 4, 4), cfg.trials, cfg.seed),
    "schur.cauchy": lambda cfg: sc.check_cauchy(8, cfg.trials, cfg.seed),
}


class UnknownSuite(KeyError):
    pass


def select(names: list[str]) -> list[str]:
    """Suite ids for the requested names (``all``, an exact id, or a dotted prefix)."""
    chosen: list[str] = []
    for name in names:
        if name == "all":
            hits = list(SUITES)
        else:
            hits = [s for s in SUITES if s == name or s.startswith(name + ".")]
            if not hits:
                # a single check inside a suite, e.g. psi.triple.N3
                hits = [s for s in SUITES if name.startswith(s + ".")]
        if not hits:
            raise UnknownSuite(name)
        for h in hits:
            if h not in chosen:
                chosen.append(h)
    return chosen


def _natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


def _run_one(args):
    suite, cfg = args
    return SUITES[suite](cfg)


def run_suites(cfg: SuiteConfig) -> RunSummary:
    names = select(cfg.suites)
    t0 = time.perf_counter()
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            batches = list(pool.map(_run_one, [(n, cfg) for n in names]))
    else:
        batches = [_run_one((n, cfg)) for n in names]
    reports = [r for batch in batches for r in batch]
    # narrow to single checks when a check id (not a suite) was requested
    wanted = [n for n in cfg.suites if n != "all" and n not in SUITES
              and not any(s.startswith(n + ".") for s in SUITES)]
    if wanted:
        keep = set(n for n in cfg.suites if n in SUITES or n == "all"
                   or any(s.startswith(n + ".") for s in SUITES))
        reports = [r for r in reports
                   if any(r.id == w or r.id.startswith(w + ".") or r.id.startswith(w + "[") for w in wanted)
                   or any(_suite_of(r.id) == k or _suite_of(r.id).startswith(k + ".") for k in keep)]
    reports.sort(key=lambda r: _natural_key(r.id))
    return RunSummary(reports, (time.perf_counter() - t0) * 1000.0)


def _suite_of(check_id: str) -> str:
    best = ""
    for s in SUITES:
        if (check_id == s or check_id.startswith(s + ".") or check_id.startswith(s + "[")) and len(s) > len(best):
            best = s
    return best
