"""Wall time and pass/fail counts of every suite at the default settings."""
import argparse
import time

from qpfaff.suites import SUITES, SuiteConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    cfg = SuiteConfig(seed=args.seed)
    total = 0.0
    print(f"{'suite':24} {'checks':>6} {'failed':>6} {'seconds':>8}")
    for name, fn in SUITES.items():
        t0 = time.perf_counter()
        reports = fn(cfg)
        dt = time.perf_counter() - t0
        total += dt
        print(f"{name:24} {len(reports):6} {sum(not r.ok for r in reports):6} {dt:8.2f}")
    print(f"{'total':24} {'':6} {'':6} {total:8.2f}")


if __name__ == "__main__":
    main()
