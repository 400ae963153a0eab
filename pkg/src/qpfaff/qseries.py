"""q-shifted factorials, Gaussian binomials, basic hypergeometric series and
the (associated) Al-Salam-Chihara three-term recurrence.

Symbolic values are MultiPoly / TruncatedSeries, exact numeric values are
Fractions, and non-terminating series are summed in double precision.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .poly import STD, MultiPoly, TruncatedSeries, VarTable, q_of

INF = math.inf

# numeric stop rules
REL_STOP = 1e-16
PRODUCT_STOP = 1e-18
MAX_TERMS = 10**6


class DomainError(ValueError):
    """Parameters outside the region where a numeric formula converges."""


class DivergenceError(ArithmeticError):
    pass


def _is_symbolic(x) -> bool:
    return isinstance(x, (MultiPoly, TruncatedSeries))


# ---------------------------------------------------------------------------
# q-shifted factorials


def q_pochhammer(a, n, q=None, cap: int | None = None, vt: VarTable = STD):
    """(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1)); ``n = INF`` for the infinite product.

    In symbolic mode ``q`` defaults to ``abcd`` and the infinite product needs
    a weighted-degree ``cap``; factors whose every term lies above the cap are
    skipped.  In numeric mode (float/complex) multiplication stops once the
    factor is within 1e-18 of 1.
    """
    if _is_symbolic(a) or (q is not None and _is_symbolic(q)):
        return _qp_symbolic(a, n, q, cap, vt)
    if q is None:
        raise ValueError("numeric q-Pochhammer needs q")
    if n == INF:
        if isinstance(a, Fraction) or isinstance(q, Fraction):
            a, q = float(a), float(q)
        if abs(q) >= 1:
            raise DomainError("infinite product needs |q| < 1")
        prod = 1.0
        term = a
        k = 0
        while abs(term) >= PRODUCT_STOP:
            prod *= 1 - term
            term *= q
            k += 1
            if k > MAX_TERMS:
                raise DivergenceError("infinite product did not settle")
        return prod
    if n < 0:
        raise ValueError("order must be non-negative")
    prod = 1 if not isinstance(a, float) else 1.0
    term = a
    for _ in range(int(n)):
        prod = prod * (1 - term)
        term = term * q
    return prod


def _qp_symbolic(a, n, q, cap, vt):
    if isinstance(a, TruncatedSeries):
        vt = a.vt
        cap = a.cap if cap is None else min(cap, a.cap)
        a = a.body
    elif isinstance(a, MultiPoly):
        vt = a.vt
    else:
        a = vt.const(a)
    if q is None:
        q = q_of(vt)
    if n == INF:
        if cap is None:
            raise ValueError("infinite q-Pochhammer needs a truncation cap")
        if q.wdeg_min() <= 0:
            raise ValueError("infinite product needs q of positive weight")
        result = TruncatedSeries(vt.one(), cap)
        term = a.truncate(cap)
        while term:
            result = result * (1 - TruncatedSeries(term, cap))
            term = term._mul(q, cap)
        return result
    if n < 0:
        raise ValueError("order must be non-negative")
    if cap is not None:
        result = TruncatedSeries(vt.one(), cap)
        term = a.truncate(cap)
        for _ in range(n):
            result = result * (1 - TruncatedSeries(term, cap))
            term = term._mul(q, cap)
        return result
    result = vt.one()
    term = a
    for _ in range(n):
        result = result * (1 - term)
        term = term * q
    return result


def q_pochhammer_multi(params: Sequence, n, q=None, cap=None, vt: VarTable = STD):
    """(a_1, ..., a_m; q)_n."""
    result = None
    for a in params:
        f = q_pochhammer(a, n, q, cap, vt)
        result = f if result is None else result * f
    return 1 if result is None else result


# ---------------------------------------------------------------------------
# Gaussian binomials


def gauss_binomial(N: int, j: int, q=None, vt: VarTable = STD):
    """[N choose j]_q, computed with the Pascal rule [N,j] = [N-1,j-1] + q^j [N-1,j]."""
    if q is None:
        q = q_of(vt)
    if j < 0 or j > N or N < 0:
        return q * 0 if isinstance(q, MultiPoly) else 0
    return _gauss_table(q, N)[j]


def _gauss_table(q, N: int):
    key = (q if isinstance(q, MultiPoly) else Fraction(q) if isinstance(q, (int, Fraction)) else q, N)
    try:
        return _gauss_cache(key)
    except TypeError:
        return _gauss_build(q, N)


@lru_cache(maxsize=256)
def _gauss_cache(key):
    return _gauss_build(*key)


def _gauss_build(q, N: int):
    one = q ** 0 if not isinstance(q, MultiPoly) else q.vt.one()
    row = [one]
    qpow = [one]
    for _ in range(N):
        qpow.append(qpow[-1] * q)
    for n in range(1, N + 1):
        new = [one]
        for j in range(1, n):
            new.append(row[j - 1] + qpow[j] * row[j])
        new.append(one)
        row = new
    return tuple(row)


# ---------------------------------------------------------------------------
# basic hypergeometric series


def _terminating_order(a_up, q, n):
    if n is not None:
        if a_up * q**n != 1:
            raise ValueError(f"upper parameter is not q^-{n}")
        return n
    if a_up == 1:
        return 0
    x = Fraction(a_up)
    for k in range(1, 10_000):
        x *= q
        if x == 1:
            return k
        if abs(q) < 1 and abs(x) < 1 or abs(q) > 1 and abs(x) > 1:
            break
    raise ValueError("exact mode requires a terminating series (an upper parameter q^-n)")


def hyper_phi(ups: Sequence, downs: Sequence, q, z, mode: str = "exact", n: int | None = None):
    """The series sum_k (ups;q)_k / (q, downs;q)_k z^k.

    ``mode="exact"`` sums a terminating series in exact arithmetic; the first
    upper parameter must equal q^-n.  ``mode="numeric"`` sums in floating
    point until the term falls below 1e-16 of the partial sum.
    """
    if mode == "exact":
        k_max = _terminating_order(ups[0], q, n)
        total = 0
        term = 1
        qk = 1
        for k in range(k_max + 1):
            total = total + term
            num = 1
            for a in ups:
                num = num * (1 - a * qk)
            den = 1 - q * qk
            for b in downs:
                den = den * (1 - b * qk)
            if k == k_max:
                break
            if den == 0:
                raise ZeroDivisionError("lower parameter hits a pole of the series")
            term = term * num * z / den
            qk = qk * q
        return total
    if mode == "numeric":
        return _hyper_numeric(ups, downs, q, z)
    raise ValueError(f"unknown mode {mode!r}")


def _hyper_numeric(ups, downs, q, z):
    c = any(isinstance(v, complex) for v in (*ups, *downs, q, z))
    conv = complex if c else float
    ups = [conv(a) for a in ups]
    downs = [conv(b) for b in downs]
    q, z = conv(q), conv(z)
    total = conv(1)
    term = conv(1)
    qk = conv(1)
    for k in range(MAX_TERMS):
        num = 1.0
        for a in ups:
            num *= 1 - a * qk
        den = 1 - q * qk
        for b in downs:
            den *= 1 - b * qk
        if den == 0:
            raise ZeroDivisionError("lower parameter hits a pole of the series")
        term = term * num * z / den
        qk *= q
        if term == 0:
            return total
        total += term
        if abs(term) < REL_STOP * abs(total):
            return total
        if not (math.isfinite(abs(total))):
            raise DivergenceError("series overflowed")
    raise DivergenceError(f"no convergence after {MAX_TERMS} terms")


def phi21(a_up, b_up, c_down, q, z, mode: str = "exact", n: int | None = None):
    return hyper_phi([a_up, b_up], [c_down], q, z, mode, n)


def phi32(a1, a2, a3, b1, b2, q, z, mode: str = "exact", n: int | None = None):
    return hyper_phi([a1, a2, a3], [b1, b2], q, z, mode, n)


# ---------------------------------------------------------------------------
# Al-Salam-Chihara polynomials


def asc_sequence(n: int, x, alpha, beta, q) -> list:
    """Q_0..Q_n from 2x Q_k = Q_{k+1} + (α+β) q^k Q_k + (1-q^k)(1-αβq^(k-1)) Q_{k-1}."""
    return aasc_sequence(n, x, alpha, beta, q, 1, (1, None))


def asc_polynomial(n: int, x, alpha, beta, q):
    return asc_sequence(n, x, alpha, beta, q)[n]


def aasc_sequence(n: int, x, alpha, beta, q, t, init) -> list:
    """Iterate the associated recurrence; ``init[1] = None`` means Q_{-1} = 0."""
    q0, q1 = init
    ab = alpha * beta
    s = alpha + beta
    if q1 is None:
        q1 = 2 * x * q0 - s * t * q0
    seq = [q0, q1]
    qk, qk1 = q, 1      # q^k and q^(k-1) for k = 1
    while len(seq) <= n:
        k = len(seq) - 1
        nxt = (2 * x - s * t * qk) * seq[k] - (1 - t * qk) * (1 - t * ab * qk1) * seq[k - 1]
        seq.append(nxt)
        qk1 = qk
        qk = qk * q
    return seq[: n + 1]


def aasc_scaled_sequence(n: int, u2, s, p, q, t, init) -> list:
    """P_k = u^k Q~_k, exact in any ring.

    With ``u2 = u^2``, ``s = (α+β)u`` and ``p = αβ`` the associated
    recurrence becomes
    (u^2+1) P_k = P_{k+1} + s t q^k P_k + u^2 (1-tq^k)(1-t p q^(k-1)) P_{k-1},
    so odd powers of u never appear.
    """
    p0, p1 = init
    seq = [p0, p1]
    qk = q          # q^k for k = 1
    qk1 = 1         # q^(k-1)
    while len(seq) <= n:
        k = len(seq) - 1
        nxt = (u2 + 1 - s * t * qk) * seq[k] - u2 * (1 - t * qk) * (1 - t * p * qk1) * seq[k - 1]
        seq.append(nxt)
        qk1 = qk
        qk = qk * q
    return seq[: n + 1]


@dataclass(frozen=True)
class AASCState:
    alpha: float
    beta: float
    t: float
    u: float
    q: float

    @property
    def x(self):
        return (self.u + 1 / self.u) / 2

    def check_numeric(self):
        if not abs(self.u) < 1:
            raise DomainError(f"|u| = {abs(self.u)} must be < 1")
        if not abs(self.q) < abs(self.alpha) < 1:
            raise DomainError(f"need |q| < |alpha| < 1, got q={self.q}, alpha={self.alpha}")


def aasc_solve(state: AASCState, n: int, init) -> object:
    return aasc_sequence(n, state.x, state.alpha, state.beta, state.q, state.t, init)[n]


def _phi(a, b, c, q, z):
    return _hyper_numeric([a, b], [c], q, z)


def aasc_q1(state: AASCState, n: int) -> float:
    """First solution u^-n (tαu;q)_n 2phi1(t^-1 q^-n, βu^-1; t^-1 α^-1 q^(1-n) u^-1; q, α^-1 q u)."""
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    return (u ** -n * q_pochhammer(t * al * u, n, q)
            * _phi(q ** -n / t, be / u, q ** (1 - n) / (t * al * u), q, q * u / al))


def aasc_q2(state: AASCState, n: int) -> float:
    """Second solution u^n (tq, tαβ;q)_n/(tβuq;q)_n 2phi1(tq^(n+1), α^-1 q u; tβq^(n+1)u; q, αu)."""
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    pre = (u ** n * q_pochhammer(t * q, n, q) * q_pochhammer(t * al * be, n, q)
           / q_pochhammer(t * be * u * q, n, q))
    return pre * _phi(t * q ** (n + 1), q * u / al, t * be * q ** (n + 1) * u, q, al * u)


def aasc_solutions(state: AASCState, n: int) -> tuple[float, float]:
    state.check_numeric()
    return aasc_q1(state, n), aasc_q2(state, n)


def casorati(state: AASCState, n: int) -> float:
    """W_n = Q1_n Q2_{n-1} - Q1_{n-1} Q2_n."""
    a1, a2 = aasc_solutions(state, n)
    b1, b2 = aasc_solutions(state, n - 1)
    return a1 * b2 - b1 * a2


def w1_closed(state: AASCState) -> float:
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    qp = lambda a: q_pochhammer(a, INF, q)
    return qp(t * al * u) * qp(be * u) / (u * qp(al * u) * qp(t * be * u * q))


def aasc_combination(state: AASCState, n: int, init) -> float:
    """The solution with the given Q~_0, Q~_1 as a combination of the two series solutions."""
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    Q0, Q1 = init
    s10, s20 = aasc_solutions(state, 0)
    s11, s21 = aasc_solutions(state, 1)
    qp = lambda a: q_pochhammer(a, INF, q)
    pre = u * qp(al * u) * qp(t * be * u * q) / (qp(t * al * u) * qp(be * u))
    c1 = Q1 * s20 - Q0 * s21
    c2 = Q0 * s11 - Q1 * s10
    r1, r2 = aasc_solutions(state, n)
    return pre * (c1 * r1 + c2 * r2)


def aasc_limit_closed(state: AASCState, init) -> float:
    """Closed form of lim u^n Q~_n."""
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    Q0, Q1 = init
    s20 = aasc_q2(state, 0)
    s21 = aasc_q2(state, 1)
    qp = lambda a: q_pochhammer(a, INF, q)
    return u * qp(t * be * u * q) * qp(al * u) / qp(u * u) * (Q1 * s20 - Q0 * s21)


def aasc_q1_limit(state: AASCState) -> float:
    """Closed form of lim u^n Q1_n."""
    al, be, t, u, q = state.alpha, state.beta, state.t, state.u, state.q
    qp = lambda a: q_pochhammer(a, INF, q)
    return qp(t * al * u) * qp(be * u) / qp(u * u)


def sqrt(x):
    return math.sqrt(x) if x >= 0 else cmath.sqrt(x)
