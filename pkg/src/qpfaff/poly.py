"""Exact sparse multivariate polynomials, truncated series and rational points.

Coefficients are Python ints when integral and ``Fraction`` otherwise, so two
equal polynomials always carry identical term maps.  Monomials are exponent
tuples indexed by a shared :class:`VarTable`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from operator import add
from typing import Iterable, Iterator, Mapping

Scalar = (int, Fraction)

DEFAULT_WEIGHTS = {"a": 1, "b": 1, "c": 1, "d": 1, "q": 1}


class VarTableMismatch(ValueError):
    """Operands were built over different variable tables."""


class PoleError(ZeroDivisionError):
    """A denominator evaluated to zero."""

    def __init__(self, subexpr: str):
        super().__init__(f"denominator vanishes: {subexpr}")
        self.subexpr = subexpr


class UnassignedVariable(KeyError):
    pass


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class VarTable:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, *names: str, weights: Mapping[str, int] | None = None) -> "VarTable":
        w = dict(DEFAULT_WEIGHTS)
        if weights:
            w.update(weights)
        return cls(tuple(names), tuple(w.get(n, 0) for n in names))

    @classmethod
    def standard(cls, nx: int = 0) -> "VarTable":
        """a, b, c, d, z, y followed by x1..x{nx}."""
        return cls.of("a", "b", "c", "d", "z", "y", *(f"x{i}" for i in range(1, nx + 1)))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def wdeg(self, exps: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self)

    def one(self) -> "MultiPoly":
        return MultiPoly.constant(self, 1)

    def const(self, c) -> "MultiPoly":
        return MultiPoly.constant(self, c)

    def var(self, name: str) -> "MultiPoly":
        return MultiPoly.monomial(self, {name: 1})

    def gens(self, names: str) -> tuple["MultiPoly", ...]:
        return tuple(self.var(n) for n in names.split())

    def mono(self, coeff=1, **exps: int) -> "MultiPoly":
        return MultiPoly.monomial(self, exps, coeff)


STD = VarTable.standard()


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vt", "terms")

    def __init__(self, vt: VarTable, terms: Mapping[tuple[int, ...], object] | None = None):
        self.vt = vt
        clean = {}
        if terms:
            n = len(vt)
            for m, c in terms.items():
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {vt.names}")
                if not isinstance(c, Rational):
                    raise TypeError(f"coefficient {c!r} is not rational")
                c = _norm(Fraction(c)) if type(c) is not int else c
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vt, terms):
        p = object.__new__(cls)
        p.vt = vt
        p.terms = terms
        return p

    @classmethod
    def constant(cls, vt: VarTable, c) -> "MultiPoly":
        return cls(vt, {(0,) * len(vt): c})

    @classmethod
    def monomial(cls, vt: VarTable, exps: Mapping[str, int], coeff=1) -> "MultiPoly":
        m = [0] * len(vt)
        for name, e in exps.items():
            m[vt.index(name)] += e
        return cls(vt, {tuple(m): coeff})

    # ----- coercion -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.vt is not self.vt and other.vt != self.vt:
                raise VarTableMismatch(f"{self.vt.names} vs {other.vt.names}")
            return other
        if isinstance(other, Scalar):
            return MultiPoly.constant(self.vt, other)
        return None

    # ----- ring operations ------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        res = dict(self.terms)
        for m, c in o.terms.items():
            v = res.get(m, 0) + c
            if v:
                res[m] = _norm(v)
            else:
                del res[m]
        return MultiPoly._raw(self.vt, res)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vt, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if not other:
                return MultiPoly._raw(self.vt, {})
            return MultiPoly._raw(self.vt, {m: _norm(c * other) for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._mul(o, None)

    __rmul__ = __mul__

    def _mul(self, o: "MultiPoly", cap: int | None) -> "MultiPoly":
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        res: dict = {}
        if cap is None:
            for mb, cb in b.items():
                for ma, ca in a.items():
                    m = tuple(map(add, ma, mb))
                    v = res.get(m, 0) + ca * cb
                    if v:
                        res[m] = v
                    else:
                        del res[m]
        else:
            wd = self.vt.wdeg
            wa = [(wd(m), m, c) for m, c in a.items() if wd(m) <= cap]
            for mb, cb in b.items():
                room = cap - wd(mb)
                if room < 0:
                    continue
                for w, ma, ca in wa:
                    if w > room:
                        continue
                    m = tuple(map(add, ma, mb))
                    v = res.get(m, 0) + ca * cb
                    if v:
                        res[m] = v
                    else:
                        del res[m]
        if res and any(type(c) is Fraction for c in res.values()):
            res = {m: _norm(c) for m, c in res.items()}
        return MultiPoly._raw(self.vt, res)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.vt.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    # ----- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return other == self
        if isinstance(other, Scalar):
            if not other:
                return not self.terms
            return self.terms == {(0,) * len(self.vt): other}
        if isinstance(other, MultiPoly):
            return self.vt == other.vt and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vt.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # ----- inspection -----------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        zero = (0,) * len(self.vt)
        return all(m == zero for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vt), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def wdeg_max(self) -> int:
        return max((self.vt.wdeg(m) for m in self.terms), default=-1)

    def wdeg_min(self) -> int:
        return min((self.vt.wdeg(m) for m in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.vt.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def coeff(self, name: str, k: int) -> "MultiPoly":
        """Coefficient of ``name**k``, as a polynomial in the other variables."""
        i = self.vt.index(name)
        res = {}
        for m, c in self.terms.items():
            if m[i] == k:
                mm = list(m)
                mm[i] = 0
                res[tuple(mm)] = c
        return MultiPoly._raw(self.vt, res)

    def coeff_of(self, **exps: int):
        m = [0] * len(self.vt)
        for n, e in exps.items():
            m[self.vt.index(n)] = e
        return self.terms.get(tuple(m), 0)

    def free_vars(self) -> set[str]:
        out = set()
        for m in self.terms:
            out.update(n for n, e in zip(self.vt.names, m) if e)
        return out

    def truncate(self, cap: int) -> "MultiPoly":
        wd = self.vt.wdeg
        return MultiPoly._raw(self.vt, {m: c for m, c in self.terms.items() if wd(m) <= cap})

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        wd = self.vt.wdeg
        return sorted(self.terms.items(), key=lambda t: (wd(t[0]), tuple(-e for e in t[0])))

    # ----- evaluation and substitution ------------------------------------

    def evaluate(self, point: Mapping[str, object]):
        """Value at a point assigning every variable that occurs."""
        vals = []
        for i, n in enumerate(self.vt.names):
            if n in point:
                vals.append(point[n])
            else:
                vals.append(None)
        total = 0
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    v = vals[i]
                    if v is None:
                        raise UnassignedVariable(self.vt.names[i])
                    t = t * v**e
            total = total + t
        if isinstance(total, int):
            return Fraction(total)
        return total

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute scalars or polynomials (same table) for some variables."""
        idx = [(self.vt.index(n), v) for n, v in values.items()]
        res = self.vt.zero()
        scalar_only = all(isinstance(v, Scalar) for _, v in idx)
        if scalar_only:
            out: dict = {}
            for m, c in self.terms.items():
                mm = list(m)
                t = c
                for i, v in idx:
                    if mm[i]:
                        t = t * Fraction(v) ** mm[i]
                        mm[i] = 0
                if t:
                    key = tuple(mm)
                    v = out.get(key, 0) + t
                    if v:
                        out[key] = v
                    else:
                        del out[key]
            return MultiPoly(self.vt, out)
        powers: dict = {}
        for m, c in self.terms.items():
            mm = list(m)
            t = MultiPoly.constant(self.vt, c)
            for i, v in idx:
                e = mm[i]
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = (v if isinstance(v, MultiPoly) else self.vt.const(v)) ** e
                    t = t * powers[key]
                    mm[i] = 0
            res = res + t * MultiPoly._raw(self.vt, {tuple(mm): 1})
        return res

    def map_vars(self, vt: VarTable) -> "MultiPoly":
        """Re-express over another table containing every occurring variable."""
        pos = [vt.index(n) for n in self.vt.names]
        res = {}
        for m, c in self.terms.items():
            mm = [0] * len(vt)
            for i, e in enumerate(m):
                if e:
                    mm[pos[i]] = e
            res[tuple(mm)] = c
        return MultiPoly._raw(vt, res)

    # ----- rendering ------------------------------------------------------

    def _mono_str(self, m):
        parts = []
        for n, e in zip(self.vt.names, m):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}")
        return "*".join(parts)

    def render(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            ms = self._mono_str(m)
            if not ms:
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            elif c == -1:
                out.append("-" + ms)
            else:
                out.append(f"{c}*{ms}")
        return " + ".join(out)

    __str__ = render

    def __repr__(self):
        return f"MultiPoly({self.render()!r})"

    def to_json_obj(self) -> list[dict]:
        out = []
        for m, c in self.sorted_terms():
            c = Fraction(c)
            out.append({
                "num": c.numerator,
                "den": c.denominator,
                "vars": {n: e for n, e in zip(self.vt.names, m) if e},
            })
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, vt: VarTable, obj: Iterable[Mapping]) -> "MultiPoly":
        terms: dict = {}
        for t in obj:
            m = [0] * len(vt)
            for n, e in t["vars"].items():
                m[vt.index(n)] = e
            key = tuple(m)
            terms[key] = terms.get(key, 0) + Fraction(t["num"], t["den"])
        return cls(vt, terms)


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """Polynomial known only up to a weighted total degree ``cap``."""

    __slots__ = ("body", "cap")

    def __init__(self, body: MultiPoly, cap: int):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.body = body.truncate(cap)
        self.cap = cap

    @classmethod
    def _raw(cls, body, cap):
        s = object.__new__(cls)
        s.body = body
        s.cap = cap
        return s

    @property
    def vt(self):
        return self.body.vt

    def _split(self, other):
        if isinstance(other, TruncatedSeries):
            return other.body, min(self.cap, other.cap)
        if isinstance(other, (MultiPoly,) + Scalar):
            return other, self.cap
        return None, None

    def __add__(self, other):
        b, cap = self._split(other)
        if b is None:
            return NotImplemented
        s = self.body + b
        return TruncatedSeries(s, cap) if cap < self.cap or isinstance(b, MultiPoly) else TruncatedSeries._raw(s, cap)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(-self.body, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return TruncatedSeries._raw(self.body * other, self.cap)
        b, cap = self._split(other)
        if b is None:
            return NotImplemented
        if isinstance(b, MultiPoly) and b.vt != self.vt:
            raise VarTableMismatch(f"{self.vt.names} vs {b.vt.names}")
        return TruncatedSeries._raw(self.body._mul(b, cap), cap)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries._raw(self.vt.one(), self.cap)
        for _ in range(k):
            result = result * self
        return result

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return TruncatedSeries._raw(self.body / other, self.cap)
        if isinstance(other, (TruncatedSeries, MultiPoly)):
            return self * series_inverse(other if isinstance(other, TruncatedSeries)
                                         else TruncatedSeries(other, self.cap))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Scalar + (MultiPoly,)):
            return series_inverse(self) * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            cap = min(self.cap, other.cap)
            return self.body.truncate(cap) == other.body.truncate(cap)
        if isinstance(other, MultiPoly):
            return self.body == other.truncate(self.cap)
        if isinstance(other, Scalar):
            return self.body == other
        return NotImplemented

    def __hash__(self):
        return hash((self.body, self.cap))

    def __bool__(self):
        return bool(self.body)

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.body, min(cap, self.cap))

    def constant_term(self):
        return self.body.constant_term()

    def subs(self, values) -> "TruncatedSeries":
        return TruncatedSeries(self.body.subs(values), self.cap)

    def render(self) -> str:
        return f"{self.body.render()} + O(deg>{self.cap})"

    def __repr__(self):
        return f"TruncatedSeries({self.body.render()!r}, cap={self.cap})"


def as_series(x, cap: int, vt: VarTable = STD) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x.truncate(cap)
    if isinstance(x, MultiPoly):
        return TruncatedSeries(x, cap)
    return TruncatedSeries(vt.const(x), cap)


def series_inv_one_minus(u, cap: int | None = None) -> TruncatedSeries:
    """Return sum_{k>=0} u^k, i.e. 1/(1-u), up to the cap.

    Every term of ``u`` must have weighted degree at least one.
    """
    if isinstance(u, MultiPoly):
        if cap is None:
            raise ValueError("a cap is required when expanding a polynomial")
        u = TruncatedSeries(u, cap)
    elif cap is not None:
        u = u.truncate(cap)
    vt = u.vt
    zero = (0,) * len(vt)
    for m in u.body.terms:
        if m == zero:
            raise ValueError("series_inv_one_minus: u has a nonzero constant term")
        if vt.wdeg(m) == 0:
            raise ValueError(
                "series_inv_one_minus: term "
                f"{MultiPoly._raw(vt, {m: 1}).render()} has weight 0 and would never truncate")
    result = TruncatedSeries._raw(vt.one().truncate(u.cap), u.cap)
    power = result
    while True:
        power = power * u
        if not power:
            return result
        result = result + power


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """1/s for a series whose constant term is a nonzero scalar."""
    c0 = s.constant_term()
    if not c0:
        raise ZeroDivisionError("series has zero constant term")
    inv0 = Fraction(1) / Fraction(c0)
    u = TruncatedSeries._raw(s.vt.one() - s.body * inv0, s.cap)
    return series_inv_one_minus(u) * inv0


# ---------------------------------------------------------------------------
# Laurent polynomials


class Laurent:
    """``x^shift * poly`` with ``poly`` free of any common monomial factor."""

    __slots__ = ("shift", "poly")

    def __init__(self, poly: MultiPoly, shift: tuple[int, ...] | None = None):
        n = len(poly.vt)
        shift = tuple(shift) if shift is not None else (0,) * n
        if not poly.terms:
            self.poly, self.shift = poly, (0,) * n
            return
        lows = [min(m[i] for m in poly.terms) for i in range(n)]
        if any(lows):
            poly = MultiPoly._raw(poly.vt, {tuple(e - l for e, l in zip(m, lows)): c
                                            for m, c in poly.terms.items()})
        self.poly = poly
        self.shift = tuple(s + l for s, l in zip(shift, lows))

    @property
    def vt(self):
        return self.poly.vt

    @classmethod
    def monomial(cls, vt: VarTable, coeff=1, **exps: int) -> "Laurent":
        m = [0] * len(vt)
        for n, e in exps.items():
            m[vt.index(n)] = e
        return cls(vt.const(coeff), tuple(m))

    @classmethod
    def lift(cls, x, vt: VarTable) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, MultiPoly):
            return cls(x)
        return cls(vt.const(x))

    def _align(self, other: "Laurent"):
        lo = tuple(map(min, self.shift, other.shift))

        def up(x):
            d = tuple(s - l for s, l in zip(x.shift, lo))
            return x.poly * MultiPoly._raw(x.vt, {d: 1})
        return up(self), up(other), lo

    def __add__(self, other):
        other = Laurent.lift(other, self.vt)
        if not other.poly:
            return self
        if not self.poly:
            return other
        p, q, lo = self._align(other)
        return Laurent(p + q, lo)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(-self.poly, self.shift)

    def __sub__(self, other):
        return self + (-Laurent.lift(other, self.vt))

    def __rsub__(self, other):
        return Laurent.lift(other, self.vt) - self

    def __mul__(self, other):
        other = Laurent.lift(other, self.vt)
        return Laurent(self.poly * other.poly, tuple(map(add, self.shift, other.shift)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Laurent(self.poly**k, tuple(s * k for s in self.shift))

    def __eq__(self, other):
        if isinstance(other, (MultiPoly,) + Scalar):
            other = Laurent.lift(other, self.vt)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.poly == other.poly and (not self.poly or self.shift == other.shift)

    def __hash__(self):
        return hash((self.poly, self.shift))

    def __bool__(self):
        return bool(self.poly)

    def terms(self) -> dict[tuple[int, ...], object]:
        return {tuple(map(add, m, self.shift)): c for m, c in self.poly.terms.items()}

    def truncate(self, cap: int) -> "Laurent":
        w = self.vt.weights
        keep = {m: c for m, c in self.poly.terms.items()
                if sum((e + s) * wi for e, s, wi in zip(m, self.shift, w)) <= cap}
        return Laurent(MultiPoly._raw(self.vt, keep), self.shift)

    def render(self) -> str:
        if not self.poly:
            return "0"
        vt = self.vt
        out = []
        items = sorted(self.terms().items(),
                       key=lambda t: (vt.wdeg(t[0]), tuple(-e for e in t[0])))
        for m, c in items:
            ms = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(vt.names, m) if e)
            if not ms:
                out.append(str(c))
            elif c == 1:
                out.append(ms)
            elif c == -1:
                out.append("-" + ms)
            else:
                out.append(f"{c}*{ms}")
        return " + ".join(out)

    __str__ = render

    def __repr__(self):
        return f"Laurent({self.render()!r})"


def substitute_monomials(p: MultiPoly, images: Mapping[str, Laurent], target: VarTable) -> Laurent:
    """Image of ``p`` under a monomial substitution into Laurent monomials.

    Variables of ``p`` without an image must also exist in ``target`` and are
    carried over unchanged.
    """
    occurring = p.free_vars()
    imgs = []
    for i, n in enumerate(p.vt.names):
        if n not in occurring:
            imgs.append(((0,) * len(target), 1))
        elif n in images:
            img = images[n]
            if len(img.poly) != 1:
                raise ValueError(f"image of {n} is not a monomial")
            (m0, c0), = img.poly.terms.items()
            imgs.append((tuple(map(add, m0, img.shift)), c0))
        else:
            m = [0] * len(target)
            m[target.index(n)] = 1
            imgs.append((tuple(m), 1))
    out: dict = {}
    n_t = len(target)
    for m, c in p.terms.items():
        e = [0] * n_t
        coeff = c
        for (im, ic), k in zip(imgs, m):
            if k:
                coeff = coeff * ic**k
                for j in range(n_t):
                    e[j] += im[j] * k
        key = tuple(e)
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    if not out:
        return Laurent(target.zero())
    lows = tuple(min(m[j] for m in out) for j in range(n_t))
    body = {tuple(e - l for e, l in zip(m, lows)): c for m, c in out.items()}
    return Laurent(MultiPoly(target, body), lows)


# ---------------------------------------------------------------------------
# rational expression trees (evaluation-only rational functions)


class RatExpr:
    """Rational function kept as an unevaluated tree; only point evaluation."""

    __slots__ = ("op", "args")

    def __init__(self, op: str, *args):
        self.op = op
        self.args = args

    @staticmethod
    def lift(x) -> "RatExpr":
        if isinstance(x, RatExpr):
            return x
        if isinstance(x, MultiPoly):
            return RatExpr("poly", x)
        if isinstance(x, Scalar):
            return RatExpr("const", Fraction(x))
        raise TypeError(f"cannot lift {x!r}")

    def __add__(self, o):
        return RatExpr("add", self, RatExpr.lift(o))

    def __radd__(self, o):
        return RatExpr("add", RatExpr.lift(o), self)

    def __sub__(self, o):
        return RatExpr("sub", self, RatExpr.lift(o))

    def __rsub__(self, o):
        return RatExpr("sub", RatExpr.lift(o), self)

    def __mul__(self, o):
        return RatExpr("mul", self, RatExpr.lift(o))

    def __rmul__(self, o):
        return RatExpr("mul", RatExpr.lift(o), self)

    def __truediv__(self, o):
        return RatExpr("div", self, RatExpr.lift(o))

    def __rtruediv__(self, o):
        return RatExpr("div", RatExpr.lift(o), self)

    def __neg__(self):
        return RatExpr("neg", self)

    def __pow__(self, k: int):
        return RatExpr("pow", self, k)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        op, args = self.op, self.args
        if op == "const":
            return args[0]
        if op == "poly":
            return Fraction(args[0].evaluate(point))
        if op == "neg":
            return -args[0].evaluate(point)
        if op == "pow":
            v = args[0].evaluate(point)
            if args[1] < 0 and v == 0:
                raise PoleError(str(args[0]))
            return v ** args[1]
        x = args[0].evaluate(point)
        y = args[1].evaluate(point)
        if op == "add":
            return x + y
        if op == "sub":
            return x - y
        if op == "mul":
            return x * y
        if op == "div":
            if y == 0:
                raise PoleError(str(args[1]))
            return x / y
        raise ValueError(op)

    def __str__(self):
        op, args = self.op, self.args
        if op == "const":
            return str(args[0])
        if op == "poly":
            return f"({args[0].render()})"
        if op == "neg":
            return f"-{args[0]}"
        if op == "pow":
            return f"({args[0]})^{args[1]}"
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[op]
        return f"({args[0]} {sym} {args[1]})"

    __repr__ = __str__


def eval_at_point(expr, point: Mapping[str, object]):
    """Exact value of a polynomial, series body or expression tree at a point."""
    if isinstance(expr, TruncatedSeries):
        expr = expr.body
    if isinstance(expr, (MultiPoly, RatExpr)):
        return expr.evaluate(point)
    if isinstance(expr, Scalar):
        return Fraction(expr)
    raise TypeError(f"cannot evaluate {type(expr).__name__}")


def parse_point(text: str) -> dict[str, Fraction]:
    """``"x1=2,x2=-3/4"`` -> ``{"x1": Fraction(2), "x2": Fraction(-3, 4)}``."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad assignment {item!r}")
        out[name.strip()] = Fraction(value.strip())
    return out


# ---------------------------------------------------------------------------
# parsing of compact formulas such as "1+a(1+b)z+abcz^2"

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\d*)|(\S))")


def _tokens(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num:
            yield "num", num
        elif name:
            yield "var", name
        elif sym:
            yield "sym", sym
    yield "end", ""


def parse_poly(text: str, vt: VarTable = STD) -> MultiPoly:
    """Parse a formula with implicit multiplication and single-letter names.

    ``q`` expands to ``a*b*c*d`` unless the table has its own ``q``.
    Names like ``x12`` are read as one variable.
    """
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() == ("sym", "-"):
            take()
            sign = -1
        elif peek() == ("sym", "+"):
            take()
        acc = term() * sign
        while peek() in (("sym", "+"), ("sym", "-")):
            s = take()[1]
            t = term()
            acc = acc + t if s == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            k, v = peek()
            if (k, v) == ("sym", "*"):
                take()
                acc = acc * factor()
            elif k in ("num", "var") or (k, v) == ("sym", "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            k, v = take()
            if k != "num":
                raise ValueError(f"expected exponent in {text!r}")
            base = base ** int(v)
        return base

    def atom():
        k, v = take()
        if k == "num":
            return vt.const(int(v))
        if k == "var":
            if v == "q" and "q" not in vt:
                return vt.mono(a=1, b=1, c=1, d=1)
            return vt.var(v)
        if (k, v) == ("sym", "("):
            e = expr()
            if take() != ("sym", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return e
        raise ValueError(f"unexpected token {v!r} in {text!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


def q_of(vt: VarTable = STD) -> MultiPoly:
    """The base ``q``: the standalone variable if registered, else ``abcd``."""
    if "q" in vt:
        return vt.var("q")
    return vt.mono(a=1, b=1, c=1, d=1)
