"""Ideals of the power set ring, Boolean subrings, Spec and the Stone map.

Finitely generated ideals of ``P(X)`` are principal, ``(A1, ..., An) =
P(A1 | ... | An)``, so an ideal is stored as its support. A finite Boolean
subring is stored as its partition into atoms (blocks); its elements are the
unions of blocks and its Spec has one point per block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .setcore import INF, PointMap, Subset, Universe, UniverseMismatch, complement, intersect, sym_diff, union
from .topo import (
    FiniteTopology,
    is_closed_map,
    is_continuous,
    quasi_components,
    topology_from_subbasis,
)


class UndecidableMembership(ValueError):
    """A Frechet-class membership query outside the finite/cofinite algebra."""


@dataclass(frozen=True)
class PrincipalIdeal:
    """The ideal ``P(support)``."""

    support: Subset

    @property
    def universe(self) -> Universe:
        return self.support.universe

    def contains(self, b: Subset) -> bool:
        return b.issubset(self.support)

    __contains__ = contains

    @property
    def is_proper(self) -> bool:
        return not self.support.is_whole()

    @property
    def is_maximal(self) -> bool:
        rest = complement(self.support)
        return rest.is_finite and len(rest) == 1


@dataclass(frozen=True)
class MaximalIdeal:
    """``Principal(x) = P(X - {x})``, or the Frechet class when ``point`` is None.

    The Frechet class stands for every maximal ideal containing all finite
    sets of a countable universe; on the finite/cofinite algebra they agree:
    finite sets are members and cofinite sets are not.
    """

    universe: Universe
    point: object = None

    def __post_init__(self) -> None:
        if self.point is None:
            if self.universe.is_finite:
                raise ValueError("a finite universe has no Frechet maximal ideal")
        else:
            self.universe.check_label(self.point)

    @property
    def is_frechet(self) -> bool:
        return self.point is None

    def contains(self, b: Subset) -> bool:
        if not isinstance(b, Subset):
            raise UndecidableMembership(f"cannot decide membership of {b!r}")
        if b.universe != self.universe:
            raise UniverseMismatch(f"{b.universe} != {self.universe}")
        if self.point is not None:
            return self.point not in b
        return not b.is_cofinite

    __contains__ = contains

    def contains_mask(self, bits: int) -> bool:
        return not bits >> self.point & 1

    def in_ultrafilter(self, b: Subset) -> bool:
        """Membership in the dual ultrafilter ``P(X) - M``."""
        return not self.contains(b)

    def __str__(self) -> str:
        if self.point is None:
            return "Frechet"
        return f"m_{'inf' if self.point == INF else self.point}"


def _common_universe(gens: Sequence[Subset], universe: Universe | None) -> Universe:
    us = {g.universe for g in gens}
    if universe is not None:
        us.add(universe)
    if len(us) != 1:
        if not us:
            raise ValueError("need a universe when there are no generators")
        raise UniverseMismatch(f"generators span several universes: {sorted(map(str, us))}")
    return us.pop()


def ideal_from_generators(gens: Sequence[Subset], universe: Universe | None = None) -> PrincipalIdeal:
    u = _common_universe(gens, universe)
    support = Subset.empty(u)
    for g in gens:
        support = union(support, g)
    return PrincipalIdeal(support)


def pair_generator(f1: Subset, f2: Subset) -> Subset:
    """Single idempotent generating ``(f1, f2)``: ``f1 + f2 - f1 f2``, which is
    ``f1 + f2 + f1 f2`` in characteristic 2."""
    return sym_diff(sym_diff(f1, f2), intersect(f1, f2))


def ideal_sum(i: PrincipalIdeal, j: PrincipalIdeal) -> PrincipalIdeal:
    return PrincipalIdeal(union(i.support, j.support))


def maximal_ideal_at(u: Universe, x) -> MaximalIdeal:
    return MaximalIdeal(u, x)


def frechet(u: Universe) -> MaximalIdeal:
    return MaximalIdeal(u, None)


class IdealEnumeration(NamedTuple):
    ideals: list
    exhaustive: bool


def enumerate_maximal_ideals(u: Universe, cutoff: int = 16) -> IdealEnumeration:
    """All maximal ideals of ``P(Finite(n))``; for a countable universe the
    principal ideals below ``cutoff`` (and at infinity) plus the Frechet class."""
    if u.is_finite:
        return IdealEnumeration([MaximalIdeal(u, x) for x in range(u.size)], True)
    pts: list = list(range(cutoff)) + ([INF] if u.infinity else [])
    return IdealEnumeration([MaximalIdeal(u, x) for x in pts] + [MaximalIdeal(u, None)], False)


# -- Boolean subrings -------------------------------------------------------------


def _low_key(mask: int) -> int:
    return mask & -mask


def _refine(blocks: list[int], cut: int) -> list[int]:
    out = []
    for b in blocks:
        for part in (b & cut, b & ~cut):
            if part:
                out.append(part)
    return out


@dataclass(frozen=True)
class BooleanSubring:
    """A subring of ``P(Finite(n))`` given by its atoms as disjoint bitmasks."""

    universe: Universe
    blocks: tuple

    def __post_init__(self) -> None:
        if not self.universe.is_finite:
            raise TypeError("Boolean subrings are built over finite universes")
        seen = 0
        for b in self.blocks:
            if b == 0 or b & seen:
                raise ValueError("blocks must be nonempty and pairwise disjoint")
            seen |= b
        if seen != self.universe.full_mask:
            raise ValueError("blocks must cover the universe")
        if list(self.blocks) != sorted(self.blocks, key=_low_key):
            raise ValueError("blocks must be ordered by lowest point")

    @classmethod
    def from_blocks(cls, u: Universe, blocks) -> BooleanSubring:
        masks = [b.bits if isinstance(b, Subset) else b for b in blocks]
        return cls(u, tuple(sorted(masks, key=_low_key)))

    @classmethod
    def full(cls, u: Universe) -> BooleanSubring:
        return cls(u, tuple(1 << x for x in range(u.size)))

    @classmethod
    def trivial(cls, u: Universe) -> BooleanSubring:
        return cls(u, (u.full_mask,) if u.size else ())

    @property
    def atoms(self) -> list[Subset]:
        return [Subset(self.universe, bits=b) for b in self.blocks]

    def __len__(self) -> int:
        return 1 << len(self.blocks)

    def element_masks(self) -> Iterator[int]:
        for sel in range(len(self)):
            m = 0
            for i, b in enumerate(self.blocks):
                if sel >> i & 1:
                    m |= b
            yield m

    def elements(self) -> list[Subset]:
        return [Subset(self.universe, bits=m) for m in self.element_masks()]

    def contains(self, a: Subset) -> bool:
        return all(b & a.bits in (0, b) for b in self.blocks)

    __contains__ = contains

    def block_of(self, x: int) -> int:
        for i, b in enumerate(self.blocks):
            if b >> x & 1:
                return i
        raise ValueError(f"point {x} not in {self.universe}")

    def is_subring_of(self, other: BooleanSubring) -> bool:
        """Inclusion of element sets: every atom of ``other`` lies in an atom of ``self``."""
        if other.universe != self.universe:
            raise UniverseMismatch(f"{self.universe} != {other.universe}")
        return all(any(b & ~a == 0 for a in self.blocks) for b in other.blocks)

    __le__ = is_subring_of


def subring_generated(gens: Sequence[Subset], universe: Universe | None = None) -> BooleanSubring:
    u = _common_universe(gens, universe)
    blocks = [u.full_mask] if u.size else []
    for g in gens:
        blocks = _refine(blocks, g.bits)
    return BooleanSubring.from_blocks(u, blocks)


def subring_join(a: BooleanSubring, b: BooleanSubring) -> BooleanSubring:
    """Smallest subring containing both: the common refinement of the atoms."""
    if a.universe != b.universe:
        raise UniverseMismatch(f"{a.universe} != {b.universe}")
    blocks = [x & y for x in a.blocks for y in b.blocks if x & y]
    return BooleanSubring.from_blocks(a.universe, blocks)


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """All set partitions of ``items`` (restricted growth order)."""
    items = list(items)
    if not items:
        yield []
        return

    def grow(i: int, parts: list[list]) -> Iterator[list[list]]:
        if i == len(items):
            yield [list(p) for p in parts]
            return
        for p in parts:
            p.append(items[i])
            yield from grow(i + 1, parts)
            p.pop()
        parts.append([items[i]])
        yield from grow(i + 1, parts)
        parts.pop()

    yield from grow(0, [])


def subrings(r: BooleanSubring) -> list[BooleanSubring]:
    """Every subring of ``r``, one per coarsening of its atom partition."""
    out = []
    for parts in set_partitions(r.blocks):
        masks = [sum(p) for p in parts]
        out.append(BooleanSubring.from_blocks(r.universe, masks))
    return out


# -- Spec -----------------------------------------------------------------------


@dataclass(frozen=True)
class SpecSpace:
    """Maximal ideals of a finite Boolean subring with the ``D(f)`` topology.

    Point ``i`` is the maximal ideal of elements disjoint from block ``i``.
    """

    ring: BooleanSubring
    topology: FiniteTopology

    @property
    def points(self) -> range:
        return range(len(self.ring.blocks))

    @property
    def space(self) -> Universe:
        return self.topology.universe

    def ideal_contains(self, i: int, f: Subset) -> bool:
        return f.bits & self.ring.blocks[i] == 0

    def ideal_members(self, i: int) -> list[Subset]:
        return [f for f in self.ring.elements() if self.ideal_contains(i, f)]

    def D(self, f: Subset) -> Subset:
        if f not in self.ring:
            raise ValueError(f"{f} is not an element of the ring")
        return Subset.of(self.space, (i for i in self.points if not self.ideal_contains(i, f)))


def spec(r: BooleanSubring) -> SpecSpace:
    k = len(r.blocks)
    u = Universe.finite(k)
    # D(f) is the union of D(a) over the atoms a below f, and D(atom i) = {i}
    return SpecSpace(r, topology_from_subbasis(u, [Subset.of(u, [i]) for i in range(k)]))


def contraction_elements(m: MaximalIdeal, r: BooleanSubring) -> list[Subset]:
    """``M & R`` element by element."""
    return [f for f in r.elements() if m.contains(f)]


def restrict_maximal(m: MaximalIdeal, r: BooleanSubring) -> int:
    """Spec point of ``r`` under ``M -> M & R``: the block holding the ideal's point."""
    if m.universe != r.universe:
        raise UniverseMismatch(f"{m.universe} != {r.universe}")
    return r.block_of(m.point)


def transition(big: BooleanSubring, small: BooleanSubring) -> tuple:
    """The map ``Spec(big) -> Spec(small)`` induced by ``small <= big``."""
    if not small.is_subring_of(big):
        raise ValueError("not a subring")
    out = []
    for b in big.blocks:
        out.append(next(j for j, s in enumerate(small.blocks) if b & ~s == 0))
    return tuple(out)


# -- Clop and the Stone map ----------------------------------------------------------


def clop_ring(t: FiniteTopology) -> BooleanSubring:
    return BooleanSubring.from_blocks(t.universe, [c.bits for c in quasi_components(t)])


@dataclass(frozen=True)
class StoneMap:
    map: PointMap
    spec: SpecSpace
    bijective: bool
    continuous: bool
    closed: bool

    @property
    def homeomorphism(self) -> bool:
        return self.bijective and self.continuous and self.closed


def stone_map(t: FiniteTopology) -> StoneMap:
    """``x -> m_x & Clop(X)`` into ``Spec(Clop(X))``."""
    r = clop_ring(t)
    sp = spec(r)
    f = PointMap(t.universe, sp.space, table=tuple(restrict_maximal(MaximalIdeal(t.universe, x), r) for x in range(t.n)))
    bij = sorted(f.table) == list(sp.points)
    return StoneMap(f, sp, bij, is_continuous(f, t, sp.topology), is_closed_map(f, t, sp.topology))
