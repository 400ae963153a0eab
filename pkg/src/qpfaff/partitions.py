"""Partitions, the four-letter Andrews-Stanley weight and the Boulet splitting."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .poly import STD, MultiPoly, VarTable


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()
    strict: bool = False

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        if self.strict and any(x == y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"strict partition with a repeated part: {parts}")

    @classmethod
    def of(cls, *parts: int, strict: bool | None = None) -> "Partition":
        parts = tuple(sorted((p for p in parts if p), reverse=True))
        if strict is None:
            strict = len(set(parts)) == len(parts)
        return cls(parts, strict)

    @classmethod
    def parse(cls, text: str, strict: bool | None = None) -> "Partition":
        """Read ``"5,4,4,1"``; ``"-"`` or an empty string is the empty partition."""
        text = text.strip()
        if text in ("", "-"):
            return cls((), bool(strict))
        try:
            parts = tuple(int(s) for s in text.split(","))
        except ValueError:
            raise ValueError(f"invalid partition string {text!r}") from None
        if strict is None:
            strict = len(set(parts)) == len(parts)
        return cls(parts, strict)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        conj = tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        return Partition.of(*conj)

    def odd_parts(self) -> int:
        return sum(p & 1 for p in self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts)) if self.parts else "-"


@dataclass(frozen=True)
class WeightMonomial:
    ea: int = 0
    eb: int = 0
    ec: int = 0
    ed: int = 0

    def __mul__(self, other: "WeightMonomial") -> "WeightMonomial":
        return WeightMonomial(self.ea + other.ea, self.eb + other.eb,
                              self.ec + other.ec, self.ed + other.ed)

    @property
    def degree(self) -> int:
        return self.ea + self.eb + self.ec + self.ed

    def to_poly(self, vt: VarTable = STD, coeff=1, **extra: int) -> MultiPoly:
        return vt.mono(coeff, a=self.ea, b=self.eb, c=self.ec, d=self.ed, **extra)

    def __str__(self):
        return self.to_poly().render()


def omega_weight(lam: Partition) -> WeightMonomial:
    ea = eb = ec = ed = 0
    for i, p in enumerate(lam.parts):
        if i % 2 == 0:
            ea += (p + 1) // 2
            eb += p // 2
        else:
            ec += (p + 1) // 2
            ed += p // 2
    return WeightMonomial(ea, eb, ec, ed)


def omega_fill(lam: Partition) -> WeightMonomial:
    """The weight read cell by cell from the filled Ferrers diagram.

    Odd rows are filled a, b, a, b, ... and even rows c, d, c, d, ...
    """
    counts = Counter()
    for i, p in enumerate(lam.parts):
        row = "ab" if i % 2 == 0 else "cd"
        for j in range(p):
            counts[row[j % 2]] += 1
    return WeightMonomial(counts["a"], counts["b"], counts["c"], counts["d"])


def omega(lam: Partition, vt: VarTable = STD, z: bool = False) -> MultiPoly:
    """ω(λ) as a polynomial, times ``z^ℓ(λ)`` when ``z`` is set."""
    w = omega_weight(lam)
    return w.to_poly(vt, z=lam.length) if z else w.to_poly(vt)


def stats(lam: Partition) -> tuple[Partition, int, int]:
    """(conjugate, number of odd parts, number of odd parts of the conjugate)."""
    conj = lam.conjugate()
    return conj, lam.odd_parts(), conj.odd_parts()


# ---------------------------------------------------------------------------
# enumeration


def _decreasing(max_part: int, strict: bool, max_length: int | None,
                max_size: int | None) -> Iterator[tuple[int, ...]]:
    """Non-empty part lists in decreasing lexicographic order (extensions before their prefix)."""

    def rec(prefix: list[int], cap: int, used: int):
        for v in range(cap, 0, -1):
            if max_size is not None and used + v > max_size:
                continue
            prefix.append(v)
            if max_length is None or len(prefix) < max_length:
                yield from rec(prefix, v - 1 if strict else v, used + v)
            yield tuple(prefix)
            prefix.pop()

    yield from rec([], max_part, 0)


def enumerate_partitions(kind: str = "ordinary", max_part: int = 0, *,
                         max_length: int | None = None,
                         max_size: int | None = None) -> Iterator[Partition]:
    """Every partition with parts at most ``max_part`` under the given bound.

    ∅ comes first, then the rest in decreasing lexicographic order of part lists.
    """
    if kind not in ("ordinary", "strict"):
        raise ValueError(f"unknown partition kind {kind!r}")
    if max_length is not None and max_size is not None:
        raise ValueError("give at most one of max_length and max_size")
    strict = kind == "strict"
    if max_part < 0 or (max_length is not None and max_length < 0) or (max_size is not None and max_size < 0):
        raise ValueError("bounds must be non-negative")
    if not strict and max_part > 0 and max_length is None and max_size is None:
        raise ValueError("ordinary partitions need a length or size bound")
    yield Partition((), strict)
    if max_length == 0:
        return
    for parts in _decreasing(max_part, strict, max_length, max_size):
        yield Partition(parts, strict)


def count_ordinary_dp(max_part: int, size: int) -> list[int]:
    """Coefficients of prod_{i<=max_part} 1/(1-t^i) up to t^size."""
    coeffs = [1] + [0] * size
    for i in range(1, max_part + 1):
        for s in range(i, size + 1):
            coeffs[s] += coeffs[s - i]
    return coeffs


# ---------------------------------------------------------------------------
# Boulet bijection: partitions -> strict x all-multiplicities-even


def boulet_split(lam: Partition) -> tuple[Partition, Partition]:
    mult = Counter(lam.parts)
    mu = [i for i, k in mult.items() if k % 2]
    nu = []
    for i, k in mult.items():
        nu.extend([i] * (k - k % 2))
    return Partition.of(*mu, strict=True), Partition.of(*nu, strict=False)


def boulet_merge(mu: Partition, nu: Partition) -> Partition:
    if len(set(mu.parts)) != len(mu.parts):
        raise ValueError(f"first component must be strict: {mu}")
    odd = [i for i, k in Counter(nu.parts).items() if k % 2]
    if odd:
        raise ValueError(f"part {odd[0]} of {nu} has odd multiplicity")
    return Partition.of(*mu.parts, *nu.parts, strict=False)


def boulet_bijection(lam, direction: str = "forward"):
    if direction == "forward":
        return boulet_split(lam)
    if direction == "inverse":
        mu, nu = lam
        return boulet_merge(mu, nu)
    raise ValueError(f"unknown direction {direction!r}")
