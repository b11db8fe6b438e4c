"""Zariski convergence of maximal ideals and the checkers built on it.

A maximal ideal ``M`` of ``P(X)`` converges to ``x`` when no open set around
``x`` belongs to ``M``. Ideals are downward closed, so it is enough to test a
neighbourhood basis: if ``B <= U`` and ``U`` is in ``M`` then so is ``B``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .ringide import MaximalIdeal, UndecidableMembership, enumerate_maximal_ideals
from .setcore import INF, PointMap, Subset, preimage_hom
from .topo import (
    FiniteTopology,
    SymbolicTopology,
    Topology,
    closure,
    cofinite_subcover,
    extract_subcover,
    is_hausdorff,
    is_quasi_compact_direct,
    is_totally_disconnected,
    product,
    topology_from_subbasis,
    truncation_model,
)

DEFAULT_CUTOFF = 16


def _label(x) -> str | int:
    return "inf" if x == INF else x


def _points_json(a: Subset):
    if a.is_finite:
        return [_label(x) for x in a]
    return str(a)


def describe(t: Topology) -> str:
    if isinstance(t, SymbolicTopology):
        return f"symbolic {t.name}"
    if t.n <= 5:
        return f"universe {t.n}; opens " + " ".join(str(o) for o in t.opens)
    return f"universe {t.n}; minimal-opens " + " ".join(str(t.minimal_open(x)) for x in range(t.n))


# -- convergence ----------------------------------------------------------------


def refuting_neighborhood(m: MaximalIdeal, x, t: Topology) -> Subset | None:
    """A basic open around ``x`` lying in ``m``, or None if there is none."""
    if m.universe != t.universe:
        raise ValueError(f"ideal over {m.universe} but space over {t.universe}")
    if isinstance(t, FiniteTopology):
        nb = t.minimal_open(x)
        return nb if m.contains(nb) else None
    nb = t.minimal_open(x)
    if nb is not None:
        return nb if m.contains(nb) else None
    # basis at x: all cofinite sets containing x; none is Frechet-small
    if m.is_frechet or m.point == x:
        return None
    return Subset.cofinite(t.universe, [m.point])


def converges(m: MaximalIdeal, x, t: Topology) -> bool:
    return refuting_neighborhood(m, x, t) is None


def converges_all_opens(m: MaximalIdeal, x: int, t: FiniteTopology) -> bool:
    """The definition read literally: every open containing ``x`` avoids ``m``."""
    return all(not m.contains(u) for u in t.opens if x in u)


@dataclass(frozen=True)
class LimitSet:
    ideal: MaximalIdeal
    points: Subset

    @property
    def size(self) -> float:
        return len(self.points) if self.points.is_finite else math.inf

    @property
    def verdict(self) -> str:
        if self.points.is_empty():
            return "none"
        if self.points.is_whole():
            return "all"
        return "single" if self.size == 1 else "many"

    def to_dict(self) -> dict:
        return {"ideal": str(self.ideal), "points": _points_json(self.points)}


def limit_set(m: MaximalIdeal, t: Topology) -> LimitSet:
    if isinstance(t, FiniteTopology):
        pts = [x for x in range(t.n) if converges(m, x, t)]
        return LimitSet(m, Subset.of(t.universe, pts))
    u = t.universe
    if not m.is_frechet:
        # every named space is T1 and a principal ideal converges exactly on cl{x}
        return LimitSet(m, closure(t, Subset.of(u, [m.point])))
    # the Frechet class converges exactly where no neighbourhood is finite
    if t.name == "discrete-nat":
        return LimitSet(m, Subset.empty(u))
    if t.name == "cofinite-nat":
        return LimitSet(m, Subset.whole(u))
    return LimitSet(m, Subset.of(u, [INF]))


def pushforward(m: MaximalIdeal, f: PointMap) -> MaximalIdeal:
    """The contraction ``P(f)^-1(M)``: ``B`` is a member iff ``f^-1(B)`` is in ``M``."""
    if m.universe != f.domain:
        raise ValueError(f"ideal over {m.universe} but map from {f.domain}")
    if not m.is_frechet:
        return MaximalIdeal(f.codomain, f(m.point))
    if f.codomain.is_finite:
        for y in range(f.codomain.size):
            if not m.contains(preimage_hom(f, Subset.of(f.codomain, [y]))):
                return MaximalIdeal(f.codomain, y)
        raise AssertionError("the fibres of a map to a finite set cannot all lie in a maximal ideal")
    if f.finite_to_one:
        return MaximalIdeal(f.codomain, None)
    raise UndecidableMembership("contraction of the Frechet class needs a finite-to-one map")


# -- reports --------------------------------------------------------------------------


@dataclass
class TheoremReport:
    """Topological (``direct``) and ring-theoretic (``ring``) answers to one question.

    ``expected`` is set for lemmas whose conclusion must hold outright;
    ``precondition`` names a violated hypothesis, in which case nothing was
    checked.
    """

    space: str
    theorem: str
    direct: bool
    ring: bool
    witness: dict | None = None
    limits: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    expected: bool | None = None
    precondition: str | None = None
    artifacts: dict = field(default_factory=dict, repr=False)

    @property
    def agree(self) -> bool:
        return self.direct == self.ring

    @property
    def ok(self) -> bool:
        if self.precondition is not None:
            return True
        return self.agree and (self.expected is None or self.direct == self.expected)

    def to_dict(self) -> dict:
        out = {
            "space": self.space,
            "theorem": self.theorem,
            "direct": self.direct,
            "ring": self.ring,
            "agree": self.agree,
            "limits": [lim.to_dict() if isinstance(lim, LimitSet) else lim for lim in self.limits],
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        if self.expected is not None:
            out["expected"] = self.expected
        if self.precondition is not None:
            out["precondition"] = self.precondition
        return out


def _ideals_and_limits(t: Topology, cutoff: int) -> tuple[list[LimitSet], list[str]]:
    enum = enumerate_maximal_ideals(t.universe, cutoff)
    notes = []
    if not enum.exhaustive:
        notes.append(
            f"principal ideals sampled below {cutoff}; every principal ideal converges to its own "
            "point since each open around x contains x; the Frechet class stands for every "
            "maximal ideal containing all finite sets"
        )
    return [limit_set(m, t) for m in enum.ideals], notes


def check_theorem_I(t: Topology, cutoff: int = DEFAULT_CUTOFF) -> TheoremReport:
    """Quasi-compact iff every maximal ideal converges somewhere."""
    direct = is_quasi_compact_direct(t)
    limits, notes = _ideals_and_limits(t, cutoff)
    empty = [lim for lim in limits if lim.points.is_empty()]
    rep = TheoremReport(describe(t), "I", direct.holds, not empty, limits=limits, notes=notes)
    witness = {"direct": direct.witness}
    if empty:
        witness["ideal_without_limit"] = str(empty[0].ideal)
    rep.witness = witness
    return rep


def check_theorem_III(t: Topology, cutoff: int = DEFAULT_CUTOFF) -> TheoremReport:
    """Hausdorff iff every maximal ideal converges to at most one point."""
    direct = is_hausdorff(t)
    limits, notes = _ideals_and_limits(t, cutoff)
    many = [lim for lim in limits if lim.size > 1]
    rep = TheoremReport(describe(t), "III", direct.holds, not many, limits=limits, notes=notes)
    witness = {"direct": direct.witness}
    if many:
        witness["ideal_with_several_limits"] = many[0].to_dict()
    rep.witness = witness
    return rep


def check_compact_corollary(t: Topology, cutoff: int = DEFAULT_CUTOFF) -> TheoremReport:
    """Compact (quasi-compact and Hausdorff) iff every maximal ideal has exactly one limit."""
    qc, t2 = is_quasi_compact_direct(t), is_hausdorff(t)
    limits, notes = _ideals_and_limits(t, cutoff)
    bad = [lim for lim in limits if lim.size != 1]
    rep = TheoremReport(describe(t), "compact", qc.holds and t2.holds, not bad, limits=limits, notes=notes)
    witness: dict = {"quasi_compact": qc.holds, "hausdorff": t2.holds}
    if bad:
        witness["ideal_without_unique_limit"] = bad[0].to_dict()
    rep.witness = witness
    return rep


def check_closure_law(t: FiniteTopology) -> TheoremReport:
    """``limit_set(m_x) == cl{x}`` at every point."""
    bad = []
    for x in range(t.n):
        lim = limit_set(MaximalIdeal(t.universe, x), t).points
        cl = closure(t, Subset.of(t.universe, [x]))
        if lim != cl:
            bad.append({"point": x, "limit_set": sorted(lim), "closure": sorted(cl)})
    return TheoremReport(
        describe(t), "closure", True, not bad, witness={"mismatches": bad} if bad else None, expected=True
    )


def mixed_radix(sizes: Sequence[int], coords: Sequence[int]) -> int:
    label = 0
    for s, c in zip(sizes, coords):
        label = label * s + c
    return label


def tychonoff_check(xs: Sequence[FiniteTopology]) -> TheoremReport:
    """Product quasi-compactness through factor contractions.

    For each maximal ideal ``M`` of the product, contract along every
    projection, take any limit point of each contraction and check that ``M``
    converges to the assembled tuple; every choice of limits is tried.
    """
    prod, projections = product(xs)
    sizes = [x.n for x in xs]
    failures = []
    certificates = []
    for m in enumerate_maximal_ideals(prod.universe).ideals:
        factor_limits = [limit_set(pushforward(m, pi), x).points for pi, x in zip(projections, xs)]
        if any(lim.is_empty() for lim in factor_limits):
            failures.append({"ideal": str(m), "reason": "a factor contraction has no limit"})
            continue
        for choice in itertools.product(*(list(lim) for lim in factor_limits)):
            target = mixed_radix(sizes, choice)
            if not converges(m, target, prod):
                failures.append({"ideal": str(m), "tuple": list(choice)})
        certificates.append({"ideal": str(m), "factor_limits": [list(lim) for lim in factor_limits]})
    direct = is_quasi_compact_direct(prod).holds and all(is_quasi_compact_direct(x).holds for x in xs)
    rep = TheoremReport(
        " x ".join(f"({describe(x)})" for x in xs),
        "tychonoff",
        direct,
        not failures,
        witness={"failures": failures} if failures else None,
        limits=certificates,
    )
    rep.artifacts["product"] = prod
    return rep


# -- Alexander subbase -------------------------------------------------------------


@dataclass(frozen=True)
class SubbasisCover:
    subbasis: tuple
    cover: tuple

    def __post_init__(self) -> None:
        missing = [c for c in self.cover if c not in self.subbasis]
        if missing:
            raise ValueError(f"cover members {missing[0]} not in the subbasis")


@dataclass(frozen=True)
class SubcoverResult:
    subcover: tuple
    uncovered: object = None

    @property
    def covered(self) -> bool:
        return self.uncovered is None


def alexander_subcover(t: Topology, sc: SubbasisCover) -> SubcoverResult:
    """Finite subcover of ``sc.cover`` or an uncovered point."""
    if isinstance(t, SymbolicTopology):
        if t.name != "cofinite-nat":
            raise ValueError("symbolic subcovers are supported for cofinite-nat only")
        chosen, missed = cofinite_subcover(list(sc.cover))
    else:
        if topology_from_subbasis(t.universe, sc.subbasis) != t:
            raise ValueError("the subbasis does not generate the given topology")
        chosen, missed = extract_subcover(list(sc.cover), Subset.whole(t.universe))
    return SubcoverResult(tuple(chosen), missed)


def check_alexander(t: FiniteTopology, subbasis: Sequence[Subset]) -> TheoremReport:
    """Every maximal ideal converges to a point outside the union of the
    subbasis members it contains."""
    if topology_from_subbasis(t.universe, subbasis) != t:
        raise ValueError("the subbasis does not generate the given topology")
    whole = Subset.whole(t.universe)
    failures, limits = [], []
    for m in enumerate_maximal_ideals(t.universe).ideals:
        inside = Subset.empty(t.universe)
        for d in subbasis:
            if m.contains(d):
                inside = inside | d
        outside = whole - inside
        if outside.is_empty():
            failures.append({"ideal": str(m), "reason": "subbasis members in M cover X"})
            continue
        x = min(outside)
        if not converges(m, x, t):
            failures.append({"ideal": str(m), "point": x})
        limits.append({"ideal": str(m), "points": [x]})
    # every cover drawn from the subbasis has a finite subcover
    direct = is_quasi_compact_direct(t).holds
    members = sorted(set(subbasis), key=lambda s: s.sort_key())
    if len(members) <= 12:
        for r in range(len(members) + 1):
            for cover in itertools.combinations(members, r):
                union = Subset.empty(t.universe)
                for c in cover:
                    union = union | c
                if union.is_whole():
                    chosen, missed = extract_subcover(list(cover), whole)
                    direct = direct and missed is None
    return TheoremReport(
        describe(t), "alexander", direct, not failures,
        witness={"failures": failures} if failures else None, limits=limits,
    )


# -- validation of the symbolic closed forms -------------------------------------------


def validate_truncation(t: SymbolicTopology, size: int = 32) -> list[dict]:
    """Compare the closed forms for ``t`` with its finite quotient model.

    Checks, for the principal ideals below ``size`` (and at infinity) and the
    Frechet class:

    * the neighbourhood-basis rule agrees with the closed-form limit set at
      every sampled point;
    * on the singleton blocks ``0..size-1`` the model's limit set of the
      contracted ideal equals the closed form;
    * the quotient is continuous and carries limits to limits;
    * Hausdorffness and total disconnectedness agree with the model.

    Returns the list of mismatches (empty when everything agrees).
    """
    model, q = truncation_model(t, size)
    u = t.universe
    head = Subset.of(u, range(size))
    mismatches: list[dict] = []
    for y in range(model.n):
        if not t.is_open(preimage_hom(q, model.minimal_open(y))):
            mismatches.append({"check": "quotient-continuity", "point": y})
    probe = t.point_samples(size) + list(range(size, size + 4))
    for m in enumerate_maximal_ideals(u, size).ideals:
        closed = limit_set(m, t).points
        for x in probe:
            if converges(m, x, t) != (x in closed):
                mismatches.append({"check": "basis-rule", "ideal": str(m), "point": _label(x)})
        mq = pushforward(m, q)
        lm = limit_set(mq, model).points
        for i in range(size):
            if (i in closed) != (i in lm):
                mismatches.append({"check": "model-limit", "ideal": str(m), "point": i})
        image = {i for i in range(size) if i in closed}
        if not (closed - head).is_empty():
            image.add(size)
        if not image <= set(lm):
            mismatches.append({"check": "limit-image", "ideal": str(m)})
    if bool(is_hausdorff(t)) != bool(is_hausdorff(model)):
        mismatches.append({"check": "hausdorff"})
    if bool(is_totally_disconnected(t)) != bool(is_totally_disconnected(model)):
        mismatches.append({"check": "totally-disconnected"})
    qc = is_quasi_compact_direct(t)
    if t.name == "discrete-nat":
        # the singleton cover: the first `size` members always miss the point `size`
        covered = Subset.empty(u)
        for n in range(size):
            covered = covered | Subset.of(u, [n])
        if size in covered or qc.holds:
            mismatches.append({"check": "non-compact-witness"})
    else:
        cover = [Subset.cofinite(u, [j]) for j in range(size)] + [~head]
        if t.name == "one-point":
            cover = [Subset.of(u, [j]) for j in range(size)] + [~head]
        chosen = _finite_subcover_symbolic(t, cover)
        if chosen is None or not qc.holds:
            mismatches.append({"check": "compact-certificate"})
    return mismatches


def _finite_subcover_symbolic(t: SymbolicTopology, cover: list[Subset]) -> list[Subset] | None:
    cofinite = [c for c in cover if c.is_cofinite]
    if not cofinite:
        return None
    first = min(cofinite, key=lambda c: (len(c.labels), c.labels))
    chosen = [first]
    for x in first.labels:
        holder = next((c for c in cover if x in c), None)
        if holder is None:
            return None
        chosen.append(holder)
    union = Subset.empty(t.universe)
    for c in chosen:
        union = union | c
    return chosen if union.is_whole() else None


def symbolic_summary(t: SymbolicTopology, truncations: Sequence[int] = (8, 32, 100)) -> dict:
    """Closed-form verdicts for a named space plus truncation validation."""
    frechet_limit = limit_set(MaximalIdeal(t.universe, None), t)
    reports = [check_theorem_I(t), check_theorem_III(t), check_compact_corollary(t)]
    return {
        "space": describe(t),
        "quasi_compact": is_quasi_compact_direct(t).holds,
        "hausdorff": is_hausdorff(t).holds,
        "totally_disconnected": is_totally_disconnected(t).holds,
        "frechet_limit": frechet_limit.verdict,
        "frechet_limit_set": _points_json(frechet_limit.points),
        "reports": [r.to_dict() for r in reports],
        "agree": all(r.agree for r in reports),
        "truncations": {str(n): validate_truncation(t, n) for n in truncations},
    }


__all__ = [
    "LimitSet",
    "SubbasisCover",
    "SubcoverResult",
    "TheoremReport",
    "alexander_subcover",
    "check_alexander",
    "check_closure_law",
    "check_compact_corollary",
    "check_theorem_I",
    "check_theorem_III",
    "converges",
    "converges_all_opens",
    "describe",
    "limit_set",
    "mixed_radix",
    "pushforward",
    "refuting_neighborhood",
    "symbolic_summary",
    "tychonoff_check",
    "validate_truncation",
]
