"""Finite-domain stochastic maps: kernels, composition, pushforward, predicates.

A map assigns a distribution over the codomain space to every string of its
domain space. Kernels are stored sparsely (positive masses only) and are
total: construction fails unless every domain string has a row. Composition
is row-column summation; with exact rational masses the row sums stay
exactly 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .dist import Dist, point_mass
from .errors import NotDeterministic, OutOfDomain, ProcUndefined, SpaceMismatch, TokcheckError
from .reports import Verdict
from .strings import Space, Str


class StochMap:
    """A total map from a truncated domain space to distributions over a codomain space."""

    __slots__ = ("dom_space", "cod_space", "kernel")

    def __init__(self, dom_space: Space, cod_space: Space, kernel: dict[Str, Dist]):
        if len(kernel) != dom_space.size():
            raise ValueError(
                f"kernel has {len(kernel)} rows but the domain has {dom_space.size()} strings"
            )
        for x, row in kernel.items():
            dom_space.require(x)
            if not isinstance(row, Dist) or row.space != cod_space:
                raise SpaceMismatch(f"row at {x!r} is not a distribution over the codomain space")
        object.__setattr__(self, "dom_space", dom_space)
        object.__setattr__(self, "cod_space", cod_space)
        object.__setattr__(self, "kernel", kernel)

    def __setattr__(self, name, value):
        raise AttributeError("StochMap is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StochMap):
            return NotImplemented
        return (
            self.dom_space == other.dom_space
            and self.cod_space == other.cod_space
            and self.kernel == other.kernel
        )

    def rows(self) -> Iterable[tuple[Str, Dist]]:
        """Kernel rows in canonical domain order."""
        for x in sorted(self.kernel, key=Str.sort_key):
            yield x, self.kernel[x]

    def value_at(self, x: Str) -> Str:
        """The single output of a deterministic row; raises if the row is stochastic."""
        row = kernel_at(self, x)
        if len(row.mass) != 1:
            raise NotDeterministic(f"row at {x!r} is not a point mass")
        return next(iter(row.mass))


def kernel_at(f: StochMap, x: Str) -> Dist:
    try:
        return f.kernel[x]
    except KeyError:
        raise OutOfDomain(f"{x!r} is outside the map's domain") from None


def identity_map(space: Space) -> StochMap:
    """The map sending every string to the point mass on itself."""
    return StochMap(space, space, {x: point_mass(x, space) for x in space.strings()})


def compose(g: StochMap, f: StochMap) -> StochMap:
    """Row-column composition: (g f)(z | x) = sum_y g(z | y) f(y | x)."""
    if f.cod_space != g.dom_space:
        raise SpaceMismatch("codomain of the inner map must equal domain of the outer map")
    kernel = {}
    for x, row in f.kernel.items():
        acc: dict[Str, Fraction] = {}
        for y, py in row.mass.items():
            for z, pz in g.kernel[y].mass.items():
                acc[z] = acc.get(z, Fraction(0)) + py * pz
        kernel[x] = Dist(g.cod_space, acc)
    return StochMap(f.dom_space, g.cod_space, kernel)


def pushforward(f: StochMap, p: Dist) -> Dist:
    """The image distribution: result(y) = sum_x f(y | x) p(x)."""
    if p.space != f.dom_space:
        raise SpaceMismatch("distribution does not live over the map's domain")
    acc: dict[Str, Fraction] = {}
    for x, px in p.mass.items():
        for y, pyx in f.kernel[x].mass.items():
            acc[y] = acc.get(y, Fraction(0)) + px * pyx
    return Dist(f.cod_space, acc)


def support_of(f: StochMap) -> set[Str]:
    """Union of the supports of all rows."""
    out: set[Str] = set()
    for row in f.kernel.values():
        out.update(row.mass)
    return out


def is_deterministic(f: StochMap) -> Verdict:
    """True iff every row is a point mass; witness is the first stochastic row."""
    for x, row in f.rows():
        if len(row.mass) != 1:
            return Verdict.failed(x, f"row has support size {len(row.mass)}")
    return Verdict.passed()


def is_injective(f: StochMap) -> Verdict:
    """True iff distinct inputs have disjoint row supports.

    The witness is the first colliding triple (x, x', y) with (x, x') minimal
    in canonical pair order.
    """
    first_hit: dict[Str, Str] = {}
    collided = False
    for x, row in f.rows():
        for y in row.mass:
            if y in first_hit and first_hit[y] != x:
                collided = True
                break
            first_hit[y] = x
        if collided:
            break
    if not collided:
        return Verdict.passed()
    ordered = [x for x, _ in f.rows()]
    supports = {x: frozenset(f.kernel[x].mass) for x in ordered}
    for i, x in enumerate(ordered):
        for xp in ordered[i + 1 :]:
            overlap = supports[x] & supports[xp]
            if overlap:
                y = min(overlap, key=Str.sort_key)
                return Verdict.failed((x, xp, y))
    raise AssertionError("collision detected but no witness found")


def is_surjective(f: StochMap, onto: Space | None = None) -> Verdict:
    """True iff every string of the target space gets positive mass from some row.

    `onto` restricts the check to a narrower truncation of the codomain
    alphabet; by default the full codomain space is scanned.
    """
    target = onto if onto is not None else f.cod_space
    if target.alphabet != f.cod_space.alphabet:
        raise SpaceMismatch("surjectivity target must share the codomain alphabet")
    hit = support_of(f)
    for y in target.strings():
        if y not in hit:
            return Verdict.failed(y)
    return Verdict.passed()


def materialize(
    proc: Callable[[Str], Str | Dist],
    dom_space: Space,
    cod_space: Space,
) -> StochMap:
    """Tabulate a procedural encoder/decoder over the whole domain space.

    The procedure may return either a string (a deterministic row) or a
    distribution over the codomain space. Any exception it raises is
    wrapped as ProcUndefined at the offending input.
    """
    kernel: dict[Str, Dist] = {}
    for x in dom_space.strings():
        try:
            out = proc(x)
        except TokcheckError as exc:
            raise ProcUndefined(x, exc) from exc
        if isinstance(out, Str):
            out = point_mass(out, cod_space)
        elif out.space != cod_space:
            out = out.embedded(cod_space)
        kernel[x] = out
    return StochMap(dom_space, cod_space, kernel)
