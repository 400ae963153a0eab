"""Compare the two candidate denominators of the ordinary Andrews display.

For each N and parity, print the lowest-order term of (candidate - statistic
sum) after the substitution a=zyq, b=y^-1 q, c=z^-1 y q, d=z y^-1 q.
"""
import argparse

from qpfaff import genfun as gf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--degree", type=int, default=16)
    args = ap.parse_args()
    print(f"{'N':>2} {'parity':6} {'(z^2q^4;q^4)':>14} {'(z^2q^2;q^4)':>14}")
    for N in range(args.max_n + 1):
        for odd in (False, True):
            lhs = gf._l(gf.andrews_statistic_sum("ordinary", 2 * N + odd, args.degree)).truncate(args.degree)
            cells = []
            for power in (4, 2):
                diff = (gf.andrews_ordinary_rhs(N, odd, args.degree, power) - lhs).truncate(args.degree)
                cells.append("equal" if not diff else diff.render().split(" + ")[0])
            print(f"{N:>2} {'odd' if odd else 'even':6} {cells[0]:>14} {cells[1]:>14}")


if __name__ == "__main__":
    main()
