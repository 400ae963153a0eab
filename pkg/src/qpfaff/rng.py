"""Portable splitmix64 generator, so random points are reproducible across ports.

State update ``s += 0x9E3779B97F4A7C15``; output mix
``z = (z ^ z>>30) * 0xBF58476D1CE4E5B9``, ``z = (z ^ z>>27) * 0x94D049BB133111EB``,
``z ^ z>>31`` (all mod 2^64).
"""
from __future__ import annotations

from fractions import Fraction

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK
        z = ((z ^ (z >> 27)) * MIX2) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def rational(self, num_max: int = 50, den_max: int = 10) -> Fraction:
        """±(1..num_max) / (1..den_max)."""
        num = self.randint(1, num_max)
        if self.below(2):
            num = -num
        return Fraction(num, self.randint(1, den_max))

    def spawn(self, tag: int) -> "SplitMix64":
        """Independent child stream keyed by ``tag``."""
        return SplitMix64(self.next_u64() ^ ((tag * GOLDEN) & MASK))


def stream(seed: int, tag: str) -> SplitMix64:
    """A generator keyed by a seed and a string label (stable across runs)."""
    h = 0xCBF29CE484222325
    for ch in tag.encode():
        h = ((h ^ ch) * 0x100000001B3) & MASK
    return SplitMix64(seed ^ h)


def random_point(rng: SplitMix64, names, avoid=None, tries: int = 1000) -> dict[str, Fraction]:
    """Rational point avoiding poles: ``avoid(point)`` returns True to reject."""
    for _ in range(tries):
        pt = {n: rng.rational() for n in names}
        if avoid is None or not avoid(pt):
            return pt
    raise RuntimeError("could not find a pole-free point")
