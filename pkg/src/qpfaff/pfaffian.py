"""Pfaffians and determinants over exact or approximate coefficient domains.

Entries may be ints, Fractions, floats, MultiPoly or TruncatedSeries values;
anything with ``+``, ``*`` and truthiness works with the default Pfaffian
algorithm, which never divides.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from .partitions import Partition, omega
from .poly import STD, MultiPoly, VarTable, q_of
from .report import CheckReport, run_check, first_difference


class SkewMatrix:
    """Skew-symmetric matrix with integer row labels; only i<j is stored.

    ``labels`` gives the row/column labels in storage order, so a matrix may
    be indexed from -1 or 0 to match the formulas they encode.
    """

    __slots__ = ("labels", "upper", "_pos")

    def __init__(self, labels: Sequence[int], upper: Sequence[Sequence[Any]]):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        if len(upper) != n or any(len(r) != n for r in upper):
            raise ValueError("upper must be an n x n grid (only i<j entries are read)")
        self.upper = [list(r) for r in upper]
        self._pos = {l: i for i, l in enumerate(self.labels)}

    # ----- construction ---------------------------------------------------

    @classmethod
    def from_func(cls, labels: Iterable[int], f: Callable[[int, int], Any]) -> "SkewMatrix":
        """Entry (i, j) for labels i before j in storage order is ``f(i, j)``."""
        labels = tuple(labels)
        n = len(labels)
        up = [[0] * n for _ in range(n)]
        for p in range(n):
            for r in range(p + 1, n):
                up[p][r] = f(labels[p], labels[r])
        return cls(labels, up)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]], labels: Iterable[int] | None = None,
                   check: bool = True) -> "SkewMatrix":
        n = len(rows)
        if check:
            for i in range(n):
                if rows[i][i]:
                    raise ValueError(f"nonzero diagonal entry at {i}")
                for j in range(i + 1, n):
                    if rows[j][i] != -rows[i][j]:
                        raise ValueError(f"not skew-symmetric at ({i},{j})")
        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        return cls(labels, rows)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence[Sequence[Sequence[Any]]]],
               labels: Iterable[int] | None = None) -> "SkewMatrix":
        """Assemble from a grid of dense blocks (lists of rows)."""
        rows: list[list[Any]] = []
        for block_row in grid:
            height = len(block_row[0])
            for r in range(height):
                row: list[Any] = []
                for blk in block_row:
                    row.extend(blk[r])
                rows.append(row)
        return cls.from_dense(rows, labels, check=False)

    # ----- access ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def position(self, label: int) -> int:
        return self._pos[label]

    def at(self, p: int, r: int):
        """Entry by storage positions."""
        if p < r:
            return self.upper[p][r]
        if p > r:
            return -self.upper[r][p]
        return 0

    def __getitem__(self, key: tuple[int, int]):
        i, j = key
        return self.at(self._pos[i], self._pos[j])

    def dense(self) -> list[list[Any]]:
        n = self.size
        return [[self.at(p, r) for r in range(n)] for p in range(n)]

    def sub(self, labels: Iterable[int]) -> "SkewMatrix":
        """Principal submatrix on the given labels, kept in storage order."""
        chosen = sorted(set(labels), key=self._pos.__getitem__)
        pos = [self._pos[l] for l in chosen]
        up = [[self.at(p, r) if p < r else 0 for r in pos] for p in pos]
        return SkewMatrix(chosen, up)

    def map(self, f: Callable[[Any], Any]) -> "SkewMatrix":
        n = self.size
        return SkewMatrix(self.labels, [[f(self.upper[p][r]) if p < r else 0 for r in range(n)]
                                        for p in range(n)])

    def scale(self, label: int, s) -> "SkewMatrix":
        """Multiply row and column ``label`` by ``s``."""
        k = self._pos[label]
        n = self.size
        up = [[(self.upper[p][r] * s if k in (p, r) else self.upper[p][r]) if p < r else 0
               for r in range(n)] for p in range(n)]
        return SkewMatrix(self.labels, up)

    def __str__(self):
        grid = [[str(v) for v in row] for row in self.dense()]
        width = max((len(s) for row in grid for s in row), default=1)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in grid)

    def __repr__(self):
        return f"SkewMatrix(labels={self.labels})"


# ---------------------------------------------------------------------------
# Pfaffians


def _pfaffian_expand(up: list[list[Any]], n: int, one):
    memo: dict[int, Any] = {0: one}

    def pf(mask: int):
        got = memo.get(mask)
        if got is not None:
            return got
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        row = up[i]
        total = None
        sign = 1
        m = rest
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            e = row[j]
            if e:
                sub = pf(rest & ~low)
                if sub:
                    term = e * sub
                    if total is None:
                        total = term if sign > 0 else -term
                    elif sign > 0:
                        total = total + term
                    else:
                        total = total - term
            sign = -sign
        if total is None:
            total = 0 * one
        memo[mask] = total
        return total

    return pf((1 << n) - 1)


def _pfaffian_eliminate(dense: list[list[Any]]):
    """Skew Gaussian elimination; needs exact division (Fraction) or floats."""
    a = [row[:] for row in dense]
    n = len(a)
    result = 1
    approx = any(isinstance(v, float) for row in a for v in row)
    for k in range(0, n, 2):
        # choose a pivot in row k among columns > k
        if approx:
            j = max(range(k + 1, n), key=lambda c: abs(a[k][c]))
            if a[k][j] == 0:
                return 0.0
        else:
            j = next((c for c in range(k + 1, n) if a[k][c]), None)
            if j is None:
                return 0
        if j != k + 1:
            a[k + 1], a[j] = a[j], a[k + 1]
            for row in a:
                row[k + 1], row[j] = row[j], row[k + 1]
            result = -result
        p = a[k][k + 1]
        result = result * p
        if k + 2 >= n:
            continue
        inv = (1.0 / p) if approx else Fraction(1) / Fraction(p)
        rk, rk1 = a[k], a[k + 1]
        for i in range(k + 2, n):
            aik, aik1 = a[i][k], a[i][k + 1]
            if not aik and not aik1:
                continue
            ri = a[i]
            for jj in range(k + 2, n):
                ri[jj] = ri[jj] + (aik * rk1[jj] - aik1 * rk[jj]) * inv
    return result if approx else Fraction(result)


def perfect_matchings(items: Sequence[int]):
    """Yield (sign, pairs) over perfect matchings of ``items`` in the given order."""
    if not items:
        yield 1, ()
        return
    first, rest = items[0], items[1:]
    for p, partner in enumerate(rest):
        remaining = rest[:p] + rest[p + 1:]
        s = -1 if p % 2 else 1
        for sign, pairs in perfect_matchings(remaining):
            yield s * sign, ((first, partner),) + pairs


def _pfaffian_matchings(A: SkewMatrix):
    total = 0
    for sign, pairs in perfect_matchings(list(range(A.size))):
        t = sign
        for p, r in pairs:
            t = t * A.at(p, r)
            if not t:
                break
        total = total + t
    return total


def pfaffian(A: SkewMatrix, method: str = "expand", one=None):
    """Pfaffian of ``A``; Pf of the empty matrix is 1.

    ``expand`` (default) works over any commutative ring; ``eliminate`` is
    a faster path for Fraction or float entries; ``matching`` sums over all
    perfect matchings and exists as an oracle.
    """
    n = A.size
    if n % 2:
        raise ValueError(f"Pfaffian of odd-size ({n}) matrix")
    if method == "expand":
        if one is None:
            one = _one_like(A)
        if n == 0:
            return one
        return _pfaffian_expand(A.upper, n, one)
    if method == "eliminate":
        if n == 0:
            return Fraction(1)
        return _pfaffian_eliminate(A.dense())
    if method == "matching":
        return _pfaffian_matchings(A) if n else 1
    raise ValueError(f"unknown Pfaffian method {method!r}")


def _one_like(A: SkewMatrix):
    for row in A.upper:
        for v in row:
            if isinstance(v, MultiPoly):
                return v.vt.one()
            if hasattr(v, "body") and hasattr(v, "cap"):
                from .poly import TruncatedSeries
                return TruncatedSeries(v.vt.one(), v.cap)
            if isinstance(v, float):
                return 1.0
    return 1


# ---------------------------------------------------------------------------
# determinants


def det_bareiss(rows: Sequence[Sequence[Any]]) -> Fraction:
    """Fraction-free Gaussian elimination (exact division at each step)."""
    m = [[Fraction(v) for v in r] for r in rows]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pkk - mik * rk[j]) / prev
            ri[k] = Fraction(0)
        prev = pkk
    return sign * m[n - 1][n - 1]


def det_expand(rows: Sequence[Sequence[Any]], one=1):
    """Division-free determinant by memoized Laplace expansion (rings)."""
    n = len(rows)
    if n == 0:
        return one
    memo: dict[int, Any] = {}

    def rec(r: int, cols: int):
        if r == n:
            return one
        got = memo.get(cols)
        if got is not None:
            return got
        total = None
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                e = rows[r][j]
                if e:
                    sub = rec(r + 1, cols & ~(1 << j))
                    if sub:
                        t = e * sub
                        if total is None:
                            total = t if sign > 0 else -t
                        else:
                            total = total + t if sign > 0 else total - t
                sign = -sign
        if total is None:
            total = 0 * one
        memo[cols] = total
        return total

    return rec(0, (1 << n) - 1)


def det(rows: Sequence[Sequence[Any]], one=None):
    exact = all(isinstance(v, (int, Fraction)) for r in rows for v in r)
    if exact:
        return det_bareiss(rows)
    if one is None:
        one = next((v.vt.one() for r in rows for v in r if isinstance(v, MultiPoly)), 1)
    return det_expand(rows, one)


def matrix_J(n: int) -> list[list[int]]:
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def neg(block: Sequence[Sequence[Any]]) -> list[list[Any]]:
    return [[-v for v in row] for row in block]


def transpose(block: Sequence[Sequence[Any]]) -> list[list[Any]]:
    return [list(col) for col in zip(*block)] if block else []


def matmul(x: Sequence[Sequence[Any]], y: Sequence[Sequence[Any]]) -> list[list[Any]]:
    inner = len(y)
    cols = len(y[0]) if y else 0
    out = []
    for row in x:
        out_row = []
        for j in range(cols):
            s = 0
            for k in range(inner):
                if row[k] and y[k][j]:
                    s = s + row[k] * y[k][j]
            out_row.append(s)
        out.append(out_row)
    return out


# ---------------------------------------------------------------------------
# weight matrices


def alpha_entry(i: int, j: int, vt: VarTable = STD) -> MultiPoly:
    """a^⌈(j-1)/2⌉ b^⌊(j-1)/2⌋ c^⌈i/2⌉ d^⌊i/2⌋ for i < j."""
    return vt.mono(a=j // 2, b=(j - 1) // 2, c=(i + 1) // 2, d=i // 2)


def beta_entry(i: int, j: int, vt: VarTable = STD) -> MultiPoly:
    """Strict-partition weight entry for labels -1 <= i < j."""
    if i == -1 and j == 0:
        return vt.one()
    if i in (-1, 0):
        return vt.mono(a=(j + 1) // 2, b=j // 2, z=1)
    return vt.mono(a=(j + 1) // 2, b=j // 2, c=(i + 1) // 2, d=i // 2, z=2)


def build_weight_matrix(kind: str, max_label: int, vt: VarTable = STD) -> SkewMatrix:
    if max_label < 0:
        raise ValueError("max_label must be non-negative")
    if kind == "alpha_ordinary":
        return SkewMatrix.from_func(range(0, max_label + 1), lambda i, j: alpha_entry(i, j, vt))
    if kind == "beta_strict":
        return SkewMatrix.from_func(range(-1, max_label + 1), lambda i, j: beta_entry(i, j, vt))
    raise ValueError(f"unknown weight matrix kind {kind!r}")


def subpfaffian_labels(lam: Partition, kind: str) -> list[int]:
    """Row labels selecting the weight of ``lam`` as a sub-Pfaffian."""
    if kind == "ordinary":
        parts = list(lam.parts)
        if len(parts) % 2:
            parts.append(0)
        m = len(parts)
        return sorted(p + m - i - 1 for i, p in enumerate(parts))
    if kind == "strict":
        labels = sorted(lam.parts)
        if len(labels) % 2:
            labels = [-1] + labels
        return labels
    raise ValueError(kind)


def subpfaffian_weight_check(lam: Partition, kind: str, vt: VarTable = STD) -> CheckReport:
    def body():
        labels = subpfaffian_labels(lam, kind)
        top = max(labels, default=0)
        if kind == "ordinary":
            A = build_weight_matrix("alpha_ordinary", top, vt)
            n = len(labels) // 2
            want = q_of(vt) ** (n * (n - 1) // 2) * omega(lam, vt)
        else:
            A = build_weight_matrix("beta_strict", max(top, 0), vt)
            want = omega(lam, vt, z=True)
        got = pfaffian(A.sub(labels)) if labels else vt.one()
        w = first_difference(got, want)
        return {"partition": str(lam), **w} if w else None

    return run_check(f"pfaffian.subpf.{kind}[{lam}]", body)


# ---------------------------------------------------------------------------
# minor summation formulas


def _gpow(gamma, k: int):
    return gamma ** k


def pf_sum_lhs(A: SkewMatrix, B: SkewMatrix, gamma, z, fixed: int = 0):
    """Weighted sum of products of principal sub-Pfaffians of A and B.

    Positions are 1-based.  With ``fixed = n`` every index set contains
    1..n and the remaining indices are drawn from n+1..size; the power of
    ``z`` is half the index-set size.
    """
    size = A.size
    if B.size != size:
        raise ValueError(f"size mismatch: {A.size} vs {B.size}")
    if not 0 <= fixed <= size:
        raise ValueError("fixed block larger than the matrices")
    base = tuple(range(fixed))
    free = range(fixed, size)
    total = 0
    for t in range(0, size - fixed + 1):
        if (fixed + t) % 2:
            continue
        for extra in combinations(free, t):
            pos = base + extra
            la = [A.labels[p] for p in pos]
            lb = [B.labels[p] for p in pos]
            pa = pfaffian(A.sub(la)) if pos else 1
            if not pa:
                continue
            pb = pfaffian(B.sub(lb)) if pos else 1
            if not pb:
                continue
            weight = sum(p + 1 for p in pos)
            total = total + _gpow(gamma, weight) * z ** (len(pos) // 2) * pa * pb
    return total


def pf_sum_matrix(A: SkewMatrix, B: SkewMatrix, gamma, z, fixed: int = 0) -> SkewMatrix:
    """Block matrix [[J tA J, K], [-tK, C]] with C_ij = γ^(i+j) b_ij z."""
    size = A.size
    if B.size != size:
        raise ValueError(f"size mismatch: {A.size} vs {B.size}")
    J = matrix_J(size)
    a = A.dense()
    top_left = matmul(matmul(J, transpose(a)), J)
    E = [[1 if (i == j and i >= fixed) else 0 for j in range(size)] for i in range(size)]
    K = matmul(J, E)
    b = B.dense()
    C = [[(_gpow(gamma, i + j + 2) * b[i][j] * z) if b[i][j] else 0 for j in range(size)]
         for i in range(size)]
    return SkewMatrix.blocks([[top_left, K], [neg(transpose(K)), C]],
                             labels=range(1, 2 * size + 1))


def minor_summation(A: SkewMatrix, B: SkewMatrix, gamma, z) -> CheckReport:
    return minor_summation_fixed(A, B, 0, gamma, z, check_id="pfaffian.minor_sum")


def minor_summation_fixed(A: SkewMatrix, B: SkewMatrix, n: int, gamma, z,
                          check_id: str = "pfaffian.minor_sum_fixed") -> CheckReport:
    def body():
        lhs = pf_sum_lhs(A, B, gamma, z, fixed=n)
        rhs = pfaffian(pf_sum_matrix(A, B, gamma, z, fixed=n))
        if lhs == rhs:
            return None
        return first_difference(lhs, rhs) if isinstance(lhs, MultiPoly) else {"lhs": lhs, "rhs": rhs}

    return run_check(check_id, body)
