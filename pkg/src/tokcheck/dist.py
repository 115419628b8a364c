"""Finite-support probability distributions with exact rational masses.

Masses are `fractions.Fraction` values throughout, so equality of
distributions is decidable and distance computations are exact. Floats
appear only in `kl_divergence`. Sampling uses the stdlib Mersenne Twister
(`random.Random`) seeded explicitly, drawing integers below the common
denominator of the masses, so draws are exact and bit-reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EmptySample, SpaceMismatch
from .strings import Space, Str


class Dist:
    """A probability distribution with finite support inside a truncated space."""

    __slots__ = ("space", "mass")

    def __init__(self, space: Space, mass: Mapping[Str, Fraction]):
        clean: dict[Str, Fraction] = {}
        total = Fraction(0)
        for s, m in mass.items():
            m = Fraction(m)
            if m == 0:
                continue
            if m < 0:
                raise ValueError(f"negative mass {m} at {s!r}")
            space.require(s)
            clean[s] = m
            total += m
        if total != 1:
            raise ValueError(f"masses must sum to exactly 1, got {total}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "mass", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Dist is immutable")

    def mass_of(self, s: Str) -> Fraction:
        return self.mass.get(s, Fraction(0))

    def support(self) -> list[Str]:
        """Support strings in canonical order."""
        return sorted(self.mass, key=Str.sort_key)

    def embedded(self, space: Space) -> Dist:
        """The same distribution viewed inside a wider truncation of the same alphabet."""
        if space.alphabet != self.space.alphabet:
            raise SpaceMismatch("cannot embed into a space over a different alphabet")
        return Dist(space, self.mass)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self.space == other.space and self.mass == other.mass

    def __repr__(self) -> str:
        items = ", ".join(f"{s.render()}: {m}" for s, m in sorted(self.mass.items(), key=lambda kv: kv[0].sort_key()))
        return f"Dist({{{items}}})"


@dataclass(frozen=True)
class EstimatorTrace:
    """A sequence of estimates at strictly increasing sample counts, with its target."""

    steps: tuple[tuple[int, Dist], ...]
    target: Dist

    def __post_init__(self):
        counts = [n for n, _ in self.steps]
        if any(b <= a for a, b in zip(counts, counts[1:])):
            raise ValueError("sample counts must be strictly increasing")


def point_mass(x: Str, space: Space) -> Dist:
    """The distribution concentrated on a single string."""
    space.require(x)
    return Dist(space, {x: Fraction(1)})


def _require_same_space(p: Dist, q: Dist) -> None:
    if p.space != q.space:
        raise SpaceMismatch("distributions live over different spaces")


def l1_distance(p: Dist, q: Dist) -> Fraction:
    """Exact sum of |p(x) - q(x)| over the union of supports."""
    _require_same_space(p, q)
    total = Fraction(0)
    for x in p.mass.keys() | q.mass.keys():
        total += abs(p.mass_of(x) - q.mass_of(x))
    return total


def tv_distance(p: Dist, q: Dist) -> Fraction:
    """Total variation distance: half the L1 distance."""
    return l1_distance(p, q) / 2


def kl_divergence(p: Dist, q: Dist) -> float:
    """Relative entropy of p from q in nats; +inf when supp(p) is not inside supp(q)."""
    _require_same_space(p, q)
    total = 0.0
    for x, px in p.mass.items():
        qx = q.mass_of(x)
        if qx == 0:
            return math.inf
        total += float(px) * math.log(px / qx)
    return total


def sample(p: Dist, seed: int, n: int) -> list[Str]:
    """Draw n i.i.d. strings from p, reproducibly for a given seed.

    Inverse CDF over the canonical support order, with integer draws below
    the common denominator of the masses, so selection involves no floats.
    """
    if n < 0:
        raise ValueError("sample count must be >= 0")
    support = p.support()
    denom = math.lcm(*(p.mass[s].denominator for s in support))
    cuts = []
    acc = 0
    for s in support:
        acc += int(p.mass[s] * denom)
        cuts.append(acc)
    rng = random.Random(seed)
    draws = []
    for _ in range(n):
        r = rng.randrange(denom)
        lo, hi = 0, len(cuts) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if r < cuts[mid]:
                hi = mid
            else:
                lo = mid + 1
        draws.append(support[lo])
    return draws


def empirical(samples: Iterable[Str], space: Space) -> Dist:
    """Relative-frequency distribution of the samples (the MLE over the space)."""
    counts: dict[Str, int] = {}
    total = 0
    for s in samples:
        counts[s] = counts.get(s, 0) + 1
        total += 1
    if total == 0:
        raise EmptySample("cannot estimate from an empty sample")
    return Dist(space, {s: Fraction(c, total) for s, c in counts.items()})
