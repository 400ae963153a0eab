"""Command-line front end: ``qpfaff verify ...`` and ``qpfaff compute ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import genfun as gf
from . import qseries as qs
from . import schur as sc
from .partitions import Partition
from .poly import PoleError, TruncatedSeries, eval_at_point, parse_point
from .suites import SUITES, SuiteConfig, UnknownSuite, run_suites, select

USAGE_ERROR = 2


class UsageError(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("QPFAFF_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QPFAFF_SEED must be an integer, got {env!r}") from None


def build_parser(seed_default: int = 42) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpfaff", description="Weighted partition sums, Pfaffians and their checks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suites", nargs="+", help="suite ids, dotted prefixes, or 'all'")
    v.add_argument("--max-n", type=int, default=10)
    v.add_argument("--degree", type=int, default=12, help="weight cap for truncated series")
    v.add_argument("--trials", type=int, default=20, help="random points per identity")
    v.add_argument("--seed", type=int, default=seed_default)
    v.add_argument("--tol", type=float, default=1e-9, help="relative tolerance of numeric suites")
    v.add_argument("--n", type=int, default=None, help="number of variables for the Schur suites")
    v.add_argument("--json", action="store_true", help="newline-delimited JSON output")
    v.add_argument("--stable", action="store_true", help="omit timings so repeated runs are byte-identical")
    v.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")
    v.add_argument("--list", action="store_true", help="list the selected suite ids and exit")

    c = sub.add_parser("compute", help="compute a single object")
    c.add_argument("target", choices=["psi", "phi", "phinm", "schur-p", "asc", "zeta"])
    c.add_argument("--n", type=int, default=None, help="N (psi, phi, phinm, zeta) or the index of Q_n (asc)")
    c.add_argument("--m", type=int, default=None, help="length bound M for phinm")
    c.add_argument("--degree", type=int, default=12)
    c.add_argument("--coeff", default=None, help="extract a coefficient, e.g. z or z^2")
    c.add_argument("--mu", "--lambda", dest="mu", default=None, help="partition such as 3,1")
    c.add_argument("--nvars", type=int, default=None)
    c.add_argument("--point", default=None, help="assignments such as x1=2,x2=3/4")
    c.add_argument("--method", default=None)
    c.add_argument("--json", action="store_true")
    return p


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    cfg = SuiteConfig(suites=args.suites, max_n=args.max_n, degree=args.degree, trials=args.trials,
                      seed=args.seed, tol=args.tol, n=args.n, json=args.json, stable=args.stable,
                      jobs=args.jobs)
    try:
        names = select(cfg.suites)
    except UnknownSuite as exc:
        known = ", ".join(SUITES)
        raise UsageError(f"unknown suite {exc.args[0]!r}; known suites: {known}") from None
    if args.list:
        print("\n".join(names), file=out)
        return 0
    summary = run_suites(cfg)
    for r in summary.reports:
        if cfg.json:
            print(json.dumps(r.to_json_obj(cfg.stable), sort_keys=True), file=out)
        else:
            print(r.line(cfg.stable), file=out)
    if cfg.json:
        print(json.dumps(summary.to_json_obj(cfg.stable), sort_keys=True), file=out)
    else:
        tail = "" if cfg.stable else f" in {summary.wall_ms / 1000:.1f} s"
        print(f"{summary.passed} passed, {summary.failed} failed{tail}", file=out)
    return summary.exit_code


# ---------------------------------------------------------------------------
# compute


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def _coeff(poly, spec: str):
    name, _, power = spec.partition("^")
    try:
        k = int(power) if power else 1
    except ValueError:
        raise UsageError(f"bad --coeff {spec!r}") from None
    return poly.coeff(name.strip(), k)


def _x_values(args, point: dict) -> tuple:
    n = _need(args.nvars, "--nvars")
    try:
        return tuple(point[f"x{i}"] for i in range(1, n + 1))
    except KeyError as exc:
        raise UsageError(f"--point lacks {exc.args[0]}") from None


def compute_value(args):
    point = parse_point(args.point) if args.point else {}
    t = args.target
    if t == "psi":
        val = gf.psi(_need(args.n, "--n"), args.method or "recurrence")
    elif t == "phi":
        val = gf.phi(_need(args.n, "--n"), args.degree, args.method or "bruteforce_truncated")
    elif t == "phinm":
        N = _need(args.n, "--n")
        val = gf.phi_nm(N, args.m) if args.m is not None else gf.phi_nm(N, method=args.method or "pfaffian_sum")
    elif t == "schur-p":
        mu = Partition.parse(_need(args.mu, "--mu"))
        return sc.schur_p(mu, _x_values(args, point))
    elif t == "asc":
        n = _need(args.n, "--n")
        try:
            x, al, be, q = (point[k] for k in ("x", "alpha", "beta", "q"))
        except KeyError as exc:
            raise UsageError(f"--point lacks {exc.args[0]}") from None
        if "t" in point:
            return qs.aasc_sequence(n, x, al, be, q, point["t"], (Fraction(1), None))[n]
        return qs.asc_sequence(n, x, al, be, q)[n]
    elif t == "zeta":
        N = _need(args.n, "--n")
        ctx = sc.SchurContext(_x_values(args, point), {k: point.get(k, 1) for k in "abcdz"})
        return sc.zeta_finite(N, ctx, args.method or "pfaffian_C")
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(t)
    if args.coeff:
        body = val.body if isinstance(val, TruncatedSeries) else val
        val = _coeff(body, args.coeff)
    if point:
        return eval_at_point(val, point)
    return val


def cmd_compute(args, out=None) -> int:
    out = out or sys.stdout
    try:
        val = compute_value(args)
    except (ValueError, KeyError, PoleError) as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        rendered = val.to_json_obj() if hasattr(val, "to_json_obj") else str(val)
        if isinstance(val, TruncatedSeries):
            rendered = {"cap": val.cap, "terms": val.body.to_json_obj()}
        print(json.dumps({"target": args.target, "value": rendered}, sort_keys=True), file=out)
    else:
        print(val.render() if hasattr(val, "render") else str(val), file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser(_default_seed()).parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_compute(args)
    except UsageError as exc:
        print(f"qpfaff: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:  # argparse reports usage errors this way with code 2
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
