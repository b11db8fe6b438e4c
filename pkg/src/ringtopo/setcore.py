"""The power set ring: subsets under symmetric difference and intersection.

Two representations live behind one :class:`Subset` type:

* over a finite universe ``{0, ..., n-1}`` a subset is a bitmask (a Python
  int, which is an unbounded word vector);
* over a countable universe (the naturals, optionally with a point at
  infinity) a subset is finite or cofinite, stored as a sorted tuple of the
  labels it contains or excludes.

Both are canonical at construction, so ``==`` and ``hash`` are structural.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

INF = math.inf
"""Reserved label for the point at infinity of a countable universe."""


class UniverseMismatch(ValueError):
    """Raised when two operands do not live over the same universe."""


@dataclass(frozen=True)
class Universe:
    """Ground set: ``Finite(n)`` when ``size`` is set, else a countable set."""

    size: int | None = None
    tag: str = "nat"
    infinity: bool = False

    def __post_init__(self) -> None:
        if self.size is not None:
            if self.size < 0:
                raise ValueError(f"finite universe needs size >= 0, got {self.size}")
            if self.infinity:
                raise ValueError("a finite universe has no point at infinity")

    @classmethod
    def finite(cls, n: int) -> Universe:
        return cls(size=n, tag="")

    @classmethod
    def countable(cls, tag: str = "nat", infinity: bool = False) -> Universe:
        return cls(size=None, tag=tag, infinity=infinity)

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    @property
    def full_mask(self) -> int:
        if self.size is None:
            raise TypeError("countable universe has no bitmask")
        return (1 << self.size) - 1

    def points(self) -> range:
        if self.size is None:
            raise TypeError("cannot list the points of a countable universe")
        return range(self.size)

    def has_label(self, x: object) -> bool:
        if self.size is not None:
            return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.size
        if x == INF:
            return self.infinity
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def check_label(self, x: object) -> None:
        if not self.has_label(x):
            raise ValueError(f"label {x!r} is not a point of {self}")

    def __str__(self) -> str:
        if self.size is not None:
            return f"Finite({self.size})"
        return f"Countable({self.tag}{'+inf' if self.infinity else ''})"


@dataclass(frozen=True)
class Subset:
    """An element of the power set ring over ``universe``.

    Use the constructors :meth:`of`, :meth:`from_mask`, :meth:`cofinite`,
    :meth:`empty` and :meth:`whole` rather than the raw initializer.
    """

    universe: Universe
    bits: int = 0
    labels: tuple = ()
    is_cofinite: bool = False

    def __post_init__(self) -> None:
        u = self.universe
        if u.is_finite:
            if self.labels or self.is_cofinite:
                raise ValueError("finite universes use the bitmask representation only")
            if self.bits < 0 or self.bits >> u.size:
                raise ValueError(f"bits {self.bits:#x} exceed {u}")
        else:
            if self.bits:
                raise ValueError("countable universes use the label representation only")
            for x in self.labels:
                u.check_label(x)
            if list(self.labels) != sorted(set(self.labels)):
                raise ValueError("labels must be sorted and duplicate-free")

    # -- constructors -----------------------------------------------------

    @classmethod
    def of(cls, universe: Universe, points: Iterable) -> Subset:
        pts = set(points)
        for x in pts:
            universe.check_label(x)
        if universe.is_finite:
            bits = 0
            for x in pts:
                bits |= 1 << x
            return cls(universe, bits=bits)
        return cls(universe, labels=tuple(sorted(pts)))

    @classmethod
    def from_mask(cls, universe: Universe, bits: int) -> Subset:
        return cls(universe, bits=bits)

    @classmethod
    def cofinite(cls, universe: Universe, excluded: Iterable) -> Subset:
        if universe.is_finite:
            raise ValueError("cofinite sets are only legal over a countable universe")
        ex = set(excluded)
        for x in ex:
            universe.check_label(x)
        return cls(universe, labels=tuple(sorted(ex)), is_cofinite=True)

    @classmethod
    def empty(cls, universe: Universe) -> Subset:
        return cls(universe)

    @classmethod
    def whole(cls, universe: Universe) -> Subset:
        if universe.is_finite:
            return cls(universe, bits=universe.full_mask)
        return cls(universe, is_cofinite=True)

    # -- queries ----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.universe.is_finite or not self.is_cofinite

    def __contains__(self, x: object) -> bool:
        if self.universe.is_finite:
            return self.universe.has_label(x) and bool(self.bits >> x & 1)
        if not self.universe.has_label(x):
            return False
        return (x in self.labels) != self.is_cofinite

    def __iter__(self) -> Iterator:
        """Iterate the points of a finite set (raises for cofinite sets)."""
        if self.universe.is_finite:
            b = self.bits
            while b:
                low = b & -b
                yield low.bit_length() - 1
                b ^= low
        elif self.is_cofinite:
            raise TypeError("cannot iterate a cofinite set")
        else:
            yield from self.labels

    def __len__(self) -> int:
        if self.universe.is_finite:
            return self.bits.bit_count()
        if self.is_cofinite:
            raise TypeError("cofinite set has no finite length")
        return len(self.labels)

    def __bool__(self) -> bool:
        return bool(self.bits) or bool(self.labels) or self.is_cofinite

    def is_empty(self) -> bool:
        return not self

    def is_whole(self) -> bool:
        if self.universe.is_finite:
            return self.bits == self.universe.full_mask
        return self.is_cofinite and not self.labels

    def issubset(self, other: Subset) -> bool:
        return intersect(self, other) == self

    __le__ = issubset

    def __lt__(self, other: Subset) -> bool:
        return self != other and self.issubset(other)

    def sort_key(self) -> tuple:
        """Order used for deterministic listings: by sorted point tuple."""
        if self.universe.is_finite:
            return (0, tuple(self))
        return (int(self.is_cofinite), self.labels)

    # -- ring operators -----------------------------------------------------

    def __add__(self, other: Subset) -> Subset:
        return sym_diff(self, other)

    def __mul__(self, other: Subset) -> Subset:
        return intersect(self, other)

    __xor__ = __add__
    __and__ = __mul__

    def __or__(self, other: Subset) -> Subset:
        return union(self, other)

    def __sub__(self, other: Subset) -> Subset:
        return intersect(self, complement(other))

    def __invert__(self) -> Subset:
        return complement(self)

    def __str__(self) -> str:
        return format_subset(self)

    def __repr__(self) -> str:
        return f"Subset({self.universe}, {format_subset(self)})"


def _same(a: Subset, b: Subset) -> Universe:
    if a.universe != b.universe:
        raise UniverseMismatch(f"{a.universe} != {b.universe}")
    return a.universe


def _sym(x: tuple, y: tuple) -> tuple:
    return tuple(sorted(set(x) ^ set(y)))


def sym_diff(a: Subset, b: Subset) -> Subset:
    """Ring sum ``(a | b) - (a & b)``."""
    u = _same(a, b)
    if u.is_finite:
        return Subset(u, bits=a.bits ^ b.bits)
    # finite+finite and cofinite+cofinite are finite; mixed sums are cofinite
    return Subset(u, labels=_sym(a.labels, b.labels), is_cofinite=a.is_cofinite != b.is_cofinite)


def intersect(a: Subset, b: Subset) -> Subset:
    """Ring product."""
    u = _same(a, b)
    if u.is_finite:
        return Subset(u, bits=a.bits & b.bits)
    sa, sb = set(a.labels), set(b.labels)
    if not a.is_cofinite and not b.is_cofinite:
        return Subset(u, labels=tuple(sorted(sa & sb)))
    if a.is_cofinite and b.is_cofinite:
        return Subset(u, labels=tuple(sorted(sa | sb)), is_cofinite=True)
    fin, ex = (sa, sb) if not a.is_cofinite else (sb, sa)
    return Subset(u, labels=tuple(sorted(fin - ex)))


def union(a: Subset, b: Subset) -> Subset:
    u = _same(a, b)
    if u.is_finite:
        return Subset(u, bits=a.bits | b.bits)
    sa, sb = set(a.labels), set(b.labels)
    if not a.is_cofinite and not b.is_cofinite:
        return Subset(u, labels=tuple(sorted(sa | sb)))
    if a.is_cofinite and b.is_cofinite:
        return Subset(u, labels=tuple(sorted(sa & sb)), is_cofinite=True)
    fin, ex = (sa, sb) if not a.is_cofinite else (sb, sa)
    return Subset(u, labels=tuple(sorted(ex - fin)), is_cofinite=True)


def complement(a: Subset) -> Subset:
    """``1 + a``."""
    u = a.universe
    if u.is_finite:
        return Subset(u, bits=a.bits ^ u.full_mask)
    return Subset(u, labels=a.labels, is_cofinite=not a.is_cofinite)


def all_subsets(u: Universe) -> list[Subset]:
    """Every subset of a finite universe, in bitmask order."""
    return [Subset(u, bits=b) for b in range(1 << u.size)]


# -- point maps --------------------------------------------------------------


@dataclass(frozen=True)
class PointMap:
    """A total function between universes.

    Finite domains carry an explicit ``table``. Countable domains carry a
    ``rule`` on labels together with ``fiber(y)``, the preimage of a single
    codomain point, which must be finite or cofinite. ``finite_to_one`` marks
    countable-domain maps whose fibers are all finite.
    """

    domain: Universe
    codomain: Universe
    table: tuple | None = None
    rule: Callable | None = field(default=None, compare=False)
    fiber: Callable | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)
    finite_to_one: bool = False

    def __post_init__(self) -> None:
        if self.domain.is_finite:
            if self.table is None or len(self.table) != self.domain.size:
                raise ValueError("a finite-domain map needs a table with one entry per point")
            for y in self.table:
                if not self.codomain.has_label(y):
                    raise ValueError(f"table value {y!r} is not a point of {self.codomain}")
        elif self.rule is None or self.fiber is None:
            raise ValueError("a countable-domain map needs both rule and fiber")

    @classmethod
    def from_table(cls, domain: Universe, codomain: Universe, table: Sequence, name: str = "") -> PointMap:
        return cls(domain, codomain, table=tuple(table), name=name)

    @classmethod
    def identity(cls, u: Universe) -> PointMap:
        if u.is_finite:
            return cls(u, u, table=tuple(range(u.size)), name="id")
        return cls(u, u, rule=lambda x: x, fiber=lambda y: Subset.of(u, [y]), name="id", finite_to_one=True)

    def __call__(self, x):
        if self.table is not None:
            return self.table[x]
        self.domain.check_label(x)
        return self.rule(x)

    def then(self, g: PointMap) -> PointMap:
        """The composite ``g o self`` (finite domains only)."""
        if g.domain != self.codomain:
            raise UniverseMismatch(f"cannot compose {self.codomain} with {g.domain}")
        if not self.domain.is_finite:
            raise TypeError("composition is only tabulated for finite domains")
        return PointMap(self.domain, g.codomain, table=tuple(g(y) for y in self.table))

    def image(self, a: Subset) -> Subset:
        if a.universe != self.domain:
            raise UniverseMismatch(f"{a.universe} != {self.domain}")
        return Subset.of(self.codomain, (self(x) for x in a))


def preimage_hom(f: PointMap, a: Subset) -> Subset:
    """Apply the ring morphism ``P(f)``: ``a`` over the codomain to ``f^-1(a)``."""
    if a.universe != f.codomain:
        raise UniverseMismatch(f"{a.universe} != codomain {f.codomain}")
    if f.domain.is_finite:
        bits = 0
        for x, y in enumerate(f.table):
            if y in a:
                bits |= 1 << x
        return Subset(f.domain, bits=bits)
    pre = Subset.empty(f.domain)
    for y in a.labels if not a.universe.is_finite else a:
        pre = union(pre, f.fiber(y))
    return complement(pre) if a.is_cofinite else pre


def all_maps(x: Universe, y: Universe) -> Iterator[PointMap]:
    """Every function between two finite universes."""
    for table in itertools.product(range(y.size), repeat=x.size):
        yield PointMap(x, y, table=table)


# -- ring axioms -------------------------------------------------------------


@dataclass
class Report:
    ok: bool
    checked: int
    witness: dict | None = None


def validate_ring_axioms(
    u: Universe,
    sample: Sequence[Subset] | None = None,
    *,
    add: Callable[[Subset, Subset], Subset] = sym_diff,
    mul: Callable[[Subset, Subset], Subset] = intersect,
) -> Report:
    """Check the Boolean ring laws on every triple drawn from ``sample``.

    With no sample the universe must be finite with at most 4 points and all
    subsets are used. ``add``/``mul`` are injectable so a corrupted operation
    can be shown to fail.
    """
    if sample is None:
        if not u.is_finite or u.size > 4:
            raise ValueError("exhaustive mode needs a finite universe with n <= 4")
        sample = all_subsets(u)
    zero, one = Subset.empty(u), Subset.whole(u)
    laws: list[tuple[str, Callable]] = [
        ("add-assoc", lambda a, b, c: add(add(a, b), c) == add(a, add(b, c))),
        ("mul-assoc", lambda a, b, c: mul(mul(a, b), c) == mul(a, mul(b, c))),
        ("add-comm", lambda a, b, c: add(a, b) == add(b, a)),
        ("mul-comm", lambda a, b, c: mul(a, b) == mul(b, a)),
        ("distrib", lambda a, b, c: mul(a, add(b, c)) == add(mul(a, b), mul(a, c))),
        ("idempotent", lambda a, b, c: mul(a, a) == a),
        ("char-2", lambda a, b, c: add(a, a) == zero),
        ("zero", lambda a, b, c: add(a, zero) == a),
        ("unit", lambda a, b, c: mul(a, one) == a),
    ]
    checked = 0
    for a, b, c in itertools.product(sample, repeat=3):
        for name, law in laws:
            checked += 1
            if not law(a, b, c):
                return Report(False, checked, {"law": name, "a": str(a), "b": str(b), "c": str(c)})
    return Report(True, checked)


# -- text literals -----------------------------------------------------------


def _fmt_label(x) -> str:
    return "inf" if x == INF else str(x)


def format_subset(a: Subset) -> str:
    """Render ``{0,2,5}`` for finite sets and ``~{0,2}`` for cofinite ones."""
    if a.universe.is_finite:
        body = ",".join(str(x) for x in a)
        return "{" + body + "}"
    body = ",".join(_fmt_label(x) for x in a.labels)
    return ("~" if a.is_cofinite else "") + "{" + body + "}"


_LITERAL = re.compile(r"^\s*(~?)\s*\{([^{}]*)\}\s*$")


def parse_subset(text: str, universe: Universe) -> Subset:
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"bad set literal {text!r}")
    items = [s.strip() for s in m.group(2).split(",") if s.strip()]
    labels = [INF if s in ("inf", "∞") else int(s) for s in items]
    if m.group(1):
        return Subset.cofinite(universe, labels)
    return Subset.of(universe, labels)
