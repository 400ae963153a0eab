"""Numeric comparison of the two readings of the ordinary-partition limit.

The limit of the ordinary sums divided by its infinite products is either
sum omega(lambda) z^length or sum omega(lambda) z^size.  Print the relative
error of both readings at the sample state and at seeded random states.
"""
import argparse

from qpfaff import genfun as gf
from qpfaff.report import rel_err


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    states = {"sample": gf.SAMPLE_STATE}
    states.update({f"random{i}": s for i, s in enumerate(gf.random_states(args.seed))})
    print(f"{'state':8} {'z^length':>10} {'z^size':>10} {'even vs odd':>12}")
    for label, st in states.items():
        even, odd = gf.limit_strict_numeric(st)
        a, b, c, d, z, q = gf._num_params(st)
        closed = even / (gf._qpi(a * c * z * z, q) * gf._qpi(z * z * q, q))
        by_length = gf.strict_sum_numeric(st, "ordinary", "length")
        by_size = gf.strict_sum_numeric(st, "ordinary", "size")
        print(f"{label:8} {rel_err(closed, by_length):10.1e} {rel_err(closed, by_size):10.1e}"
              f" {rel_err(even, odd):12.1e}")


if __name__ == "__main__":
    main()
