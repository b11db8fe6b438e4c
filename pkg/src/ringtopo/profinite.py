"""Inverse systems of finite discrete spaces and their limits.

Index posets must be directed. Transition maps go downward: for ``j <= i``
the map ``transitions[(i, j)]`` sends ``X_i`` to ``X_j``. The limit is the set
of threads (compatible tuples) with the subspace topology of the product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .converge import TheoremReport, converges, describe, pushforward
from .ringide import (
    BooleanSubring,
    enumerate_maximal_ideals,
    spec,
    stone_map,
    clop_ring,
    subrings,
    transition,
)
from .setcore import INF, PointMap, Subset, Universe, preimage_hom
from .topo import (
    FiniteTopology,
    SizeOverflow,
    SymbolicTopology,
    Topology,
    components,
    discrete,
    is_closed_map,
    is_continuous,
    is_hausdorff,
    is_homeomorphism,
    is_quasi_compact_direct,
    is_totally_disconnected,
    product,
    subspace,
    truncation_model,
)

MAX_THREAD_SCAN = 1 << 16
MAX_LEMMA_I_ATOMS = 5
MAX_LEMMA_II_SIZE = 16


class NotAPartialOrder(ValueError):
    pass


class NotDirected(ValueError):
    def __init__(self, a, b):
        super().__init__(f"indices {a!r} and {b!r} have no common upper bound")
        self.pair = (a, b)


class MissingTransition(ValueError):
    pass


class IncompatibleTransitions(ValueError):
    def __init__(self, i, j, k):
        super().__init__(f"transition {i!r}->{k!r} differs from {i!r}->{j!r}->{k!r}")
        self.triple = (i, j, k)


@dataclass(frozen=True)
class IndexPoset:
    """Finite partial order; ``leq_pairs`` holds every ``(a, b)`` with ``a <= b``."""

    elements: tuple
    leq_pairs: frozenset

    @classmethod
    def from_relations(cls, elements: Iterable[Hashable], pairs: Iterable[tuple]) -> IndexPoset:
        """Reflexive-transitive closure of ``pairs``; rejects cycles."""
        elems = tuple(elements)
        known = set(elems)
        rel = {(a, a) for a in elems}
        for a, b in pairs:
            if a not in known or b not in known:
                raise NotAPartialOrder(f"pair ({a!r}, {b!r}) uses an unknown index")
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise NotAPartialOrder(f"{a!r} and {b!r} are mutually below each other")
        return cls(elems, frozenset(rel))

    @classmethod
    def chain(cls, elements: Sequence[Hashable]) -> IndexPoset:
        return cls.from_relations(elements, zip(elements, elements[1:]))

    def leq(self, a, b) -> bool:
        return (a, b) in self.leq_pairs

    def upper_bound(self, a, b):
        for c in self.elements:
            if self.leq(a, c) and self.leq(b, c):
                return c
        return None

    def check_directed(self) -> None:
        for a, b in itertools.combinations(self.elements, 2):
            if self.upper_bound(a, b) is None:
                raise NotDirected(a, b)

    def is_directed(self) -> bool:
        try:
            self.check_directed()
        except NotDirected:
            return False
        return True

    def strict_pairs(self) -> list[tuple]:
        return sorted((p for p in self.leq_pairs if p[0] != p[1]), key=lambda p: (str(p[0]), str(p[1])))

    def covers(self) -> list[tuple]:
        """Pairs ``a < b`` with nothing strictly between them."""
        out = []
        for a, b in self.strict_pairs():
            if not any(c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in self.elements):
                out.append((a, b))
        return out


@dataclass(frozen=True, eq=False)
class InverseSystem:
    index: IndexPoset
    spaces: Mapping
    transitions: Mapping

    def space_size(self, i) -> int:
        return self.spaces[i].n


def build_system(
    index: IndexPoset,
    spaces: Mapping[Hashable, FiniteTopology | int],
    transitions: Mapping[tuple, PointMap | Sequence[int]],
) -> InverseSystem:
    """Validate and complete an inverse system.

    Spaces may be given as sizes (discrete). Identity maps on ``i <= i`` are
    filled in, and a missing ``i -> k`` is composed through an intermediate
    index when possible; every compatibility equation is then checked.
    """
    index.check_directed()
    sp = {}
    for i in index.elements:
        if i not in spaces:
            raise MissingTransition(f"no space for index {i!r}")
        s = spaces[i]
        s = discrete(s) if isinstance(s, int) else s
        if not s.is_discrete():
            raise ValueError(f"space at {i!r} is not discrete")
        sp[i] = s
    maps: dict = {}
    for (i, j), f in transitions.items():
        if not index.leq(j, i):
            raise MissingTransition(f"transition {i!r}->{j!r} given but {j!r} <= {i!r} fails")
        if not isinstance(f, PointMap):
            f = PointMap(sp[i].universe, sp[j].universe, table=tuple(f))
        if f.domain != sp[i].universe or f.codomain != sp[j].universe:
            raise ValueError(f"transition {i!r}->{j!r} has the wrong shape")
        maps[(i, j)] = f
    for i in index.elements:
        maps.setdefault((i, i), PointMap.identity(sp[i].universe))
    wanted = [(i, j) for (j, i) in index.leq_pairs]
    while True:
        missing = [p for p in wanted if p not in maps]
        progress = False
        for i, k in missing:
            for j in index.elements:
                if (i, j) in maps and (j, k) in maps and j not in (i, k):
                    maps[(i, k)] = maps[(i, j)].then(maps[(j, k)])
                    progress = True
                    break
        if not missing:
            break
        if not progress:
            i, k = missing[0]
            raise MissingTransition(f"no transition {i!r}->{k!r} and none can be composed")
    for i, j in sorted(wanted, key=str):
        f = maps[(i, j)]
        if i == j and f.table != tuple(range(sp[i].n)):
            raise IncompatibleTransitions(i, i, i)
        for k in index.elements:
            if index.leq(k, j) and maps[(i, j)].then(maps[(j, k)]) != maps[(i, k)]:
                raise IncompatibleTransitions(i, j, k)
    return InverseSystem(index, sp, maps)


@dataclass(frozen=True, eq=False)
class LimitSpace:
    system: InverseSystem
    order: tuple
    threads: tuple
    topology: FiniteTopology

    def projection(self, i) -> PointMap:
        pos = self.order.index(i)
        return PointMap(
            self.topology.universe,
            self.system.spaces[i].universe,
            table=tuple(t[pos] for t in self.threads),
            name=f"pi_{i}",
        )

    def thread_index(self, coords: Sequence[int]) -> int | None:
        try:
            return self.threads.index(tuple(coords))
        except ValueError:
            return None


def _order_top_down(index: IndexPoset) -> tuple:
    """Linear extension with larger indices first, so a coordinate is usually
    forced by one already chosen above it."""
    above = {i: sum(index.leq(i, j) for j in index.elements) for i in index.elements}
    return tuple(sorted(index.elements, key=lambda i: above[i]))


def scan_threads(sys: InverseSystem) -> list[tuple]:
    """Threads by scanning the whole product and filtering on every equation,
    in ``sys.index.elements`` order. Product size is capped at 2**16."""
    order = tuple(sys.index.elements)
    total = 1
    for i in order:
        total *= sys.space_size(i)
    if total > MAX_THREAD_SCAN:
        raise SizeOverflow(f"product of {total} tuples exceeds the scan limit {MAX_THREAD_SCAN}")
    pos = {i: p for p, i in enumerate(order)}
    equations = [(pos[i], pos[j], f.table) for (i, j), f in sys.transitions.items() if i != j]
    return [
        tp
        for tp in itertools.product(*(range(sys.space_size(i)) for i in order))
        if all(table[tp[a]] == tp[b] for a, b, table in equations)
    ]


def limit(sys: InverseSystem) -> LimitSpace:
    """Threads with the subspace topology of the product.

    Coordinates are assigned from the top of the poset down and each choice
    is checked against every equation with an already assigned index, so the
    search never expands the full product. Threads come out in lexicographic
    order of ``sys.index.elements``.
    """
    elems = tuple(sys.index.elements)
    order = _order_top_down(sys.index)
    checks = []
    for n, i in enumerate(order):
        eqs = []
        for m in order[:n]:
            if (m, i) in sys.transitions:
                eqs.append((m, sys.transitions[(m, i)].table, True))
            elif (i, m) in sys.transitions:
                eqs.append((m, sys.transitions[(i, m)].table, False))
        checks.append(eqs)

    found: list[tuple] = []
    assign: dict = {}

    def extend(n: int) -> None:
        if len(found) > MAX_THREAD_SCAN:
            raise SizeOverflow(f"more than {MAX_THREAD_SCAN} threads")
        if n == len(order):
            found.append(tuple(assign[i] for i in elems))
            return
        i = order[n]
        for c in range(sys.space_size(i)):
            # (m, table, True): table maps X_m -> X_i; False: X_i -> X_m
            if all((table[assign[m]] == c) if down else (table[c] == assign[m]) for m, table, down in checks[n]):
                assign[i] = c
                extend(n + 1)
        assign.pop(i, None)

    extend(0)
    threads = tuple(sorted(found))
    return LimitSpace(sys, elems, threads, _thread_topology(sys, elems, threads))


def _thread_topology(sys: InverseSystem, order: tuple, threads: tuple) -> FiniteTopology:
    # minimal open around a thread: the threads lying coordinatewise in the
    # factors' minimal opens, i.e. the trace of the product's minimal open
    masks = []
    for p, i in enumerate(order):
        by_value = [0] * sys.space_size(i)
        for idx, t in enumerate(threads):
            by_value[t[p]] |= 1 << idx
        nb = sys.spaces[i].nbhd
        masks.append([sum(by_value[d] for d in range(len(by_value)) if nb[c] >> d & 1) for c in range(len(by_value))])
    full = (1 << len(threads)) - 1
    nbhd = []
    for t in threads:
        m = full
        for p in range(len(order)):
            m &= masks[p][t[p]]
        nbhd.append(m)
    return FiniteTopology(Universe.finite(len(threads)), tuple(nbhd))


def product_subspace(lim: LimitSpace) -> FiniteTopology:
    """The limit topology recomputed as ``subspace(product(spaces), threads)``."""
    spaces = [lim.system.spaces[i] for i in lim.order]
    prod, _ = product(spaces)
    sizes = [s.n for s in spaces]
    labels = []
    for t in lim.threads:
        label = 0
        for s, c in zip(sizes, t):
            label = label * s + c
        labels.append(label)
    # threads are produced in increasing label order, so relabelling matches
    return subspace(prod, Subset.of(prod.universe, labels)).topology


# -- Lemma I ---------------------------------------------------------------------------


def verify_lemma_I(r: BooleanSubring) -> TheoremReport:
    """Spec(R) as the limit of the Specs of all subrings of ``R``.

    Builds the system over every coarsening of R's atoms with contraction
    maps, and checks that ``M -> (M & R_i)_i`` is a homeomorphism onto the
    limit. ``direct`` is the topological verdict on that map; ``ring`` checks
    that each coordinate is the contraction computed element by element and
    that the contractions are compatible with every transition.
    """
    k = len(r.blocks)
    if k > MAX_LEMMA_I_ATOMS:
        raise SizeOverflow(f"{k} atoms; Lemma I check limited to {MAX_LEMMA_I_ATOMS}")
    rings = subrings(r)
    idx = list(range(len(rings)))
    poset = IndexPoset.from_relations(
        idx, [(j, i) for i in idx for j in idx if i != j and rings[j].is_subring_of(rings[i])]
    )
    specs = [spec(ri) for ri in rings]
    trans = {(i, j): transition(rings[i], rings[j]) for (j, i) in poset.leq_pairs if i != j}
    system = build_system(poset, {i: specs[i].topology for i in idx}, trans)
    lim = limit(system)

    top = spec(r)
    table, coherent = [], True
    for b in range(k):
        members = {f.bits for f in r.elements() if f.bits & r.blocks[b] == 0}
        coords = []
        for ri in rings:
            # M & R_i, matched against the maximal ideals of R_i
            contracted = {m for m in ri.element_masks() if m in members}
            point = [p for p in range(len(ri.blocks)) if contracted == {m for m in ri.element_masks() if m & ri.blocks[p] == 0}]
            coherent = coherent and len(point) == 1
            coords.append(point[0] if point else -1)
        for (i, j), f in system.transitions.items():
            coherent = coherent and f(coords[i]) == coords[j]
        table.append(lim.thread_index(coords))
    injective_onto = None not in table and sorted(table) == list(range(len(lim.threads)))
    phi = None
    homeo = False
    if injective_onto:
        phi = PointMap(top.space, lim.topology.universe, table=tuple(table), name="phi")
        homeo = (
            is_continuous(phi, top.topology, lim.topology)
            and is_closed_map(phi, top.topology, lim.topology)
            and is_homeomorphism(phi, top.topology, lim.topology)
        )
    ring_ok = coherent and injective_onto and len(lim.threads) == k
    rep = TheoremReport(
        f"Spec of ring with blocks {[str(a) for a in r.atoms]}",
        "lemma1",
        homeo,
        ring_ok,
        witness={"subrings": len(rings), "threads": len(lim.threads), "atoms": k, "map": table},
        expected=True,
    )
    rep.artifacts.update(system=system, limit=lim, map=phi, subrings=rings)
    return rep


# -- Lemma II -------------------------------------------------------------------------


def verify_lemma_II(xs: Sequence[FiniteTopology], s: Subset) -> TheoremReport:
    """Subspaces of products of Hausdorff totally disconnected spaces.

    ``direct`` tests the subspace itself; ``ring`` follows the projection
    argument: every component projects to a single point in every factor.
    """
    label = " x ".join(f"({describe(x)})" for x in xs) + f" | {s}"
    for pos, x in enumerate(xs):
        if not is_hausdorff(x):
            return TheoremReport(label, "lemma2", False, False, precondition=f"factor {pos} is not Hausdorff")
        if not is_totally_disconnected(x):
            return TheoremReport(label, "lemma2", False, False, precondition=f"factor {pos} is not totally disconnected")
    prod, projections = product(xs)
    if prod.n > MAX_LEMMA_II_SIZE:
        raise SizeOverflow(f"product has {prod.n} points; limit {MAX_LEMMA_II_SIZE}")
    sub, incl = subspace(prod, s)
    t2, td = is_hausdorff(sub), is_totally_disconnected(sub)
    comps = components(sub)
    projected_ok = True
    for c in comps.connected or comps.quasi:
        for pi in projections:
            img = pi.image(incl.image(c))
            projected_ok = projected_ok and len(img) <= 1
    witness = None
    if not (t2 and td):
        witness = {"hausdorff": t2.witness, "totally_disconnected": td.witness}
    return TheoremReport(label, "lemma2", t2.holds and td.holds, projected_ok, witness=witness, expected=True)


# -- Theorem II --------------------------------------------------------------------------


def profinite_is_compact_totdisc(sys: InverseSystem) -> TheoremReport:
    """The limit is compact and totally disconnected.

    Each maximal ideal of ``P(limit)`` is contracted along every projection to
    some ``m_{x_i}``; the ``x_i`` must satisfy every transition, form a thread,
    and the ideal must converge to that thread and nowhere else.
    """
    lim = limit(sys)
    x = lim.topology
    projections = {i: lim.projection(i) for i in lim.order}
    failures = []
    for m in enumerate_maximal_ideals(x.universe).ideals:
        contracted = {i: pushforward(m, pi) for i, pi in projections.items()}
        coords = {i: mi.point for i, mi in contracted.items()}
        for (i, j), f in sys.transitions.items():
            if pushforward(contracted[i], f) != contracted[j] or f(coords[i]) != coords[j]:
                failures.append({"ideal": str(m), "transition": [str(i), str(j)]})
        t = lim.thread_index([coords[i] for i in lim.order])
        if t is None:
            failures.append({"ideal": str(m), "reason": "assembled tuple is not a thread"})
            continue
        limits = [p for p in range(x.n) if converges(m, p, x)]
        if limits != [t]:
            failures.append({"ideal": str(m), "limits": limits, "thread": t})
    qc, t2, td = is_quasi_compact_direct(x), is_hausdorff(x), is_totally_disconnected(x)
    rep = TheoremReport(
        f"limit over {len(lim.order)} indices with {len(lim.threads)} threads",
        "theorem2-forward",
        qc.holds and t2.holds and td.holds,
        not failures,
        witness={"failures": failures} if failures else None,
        expected=True,
    )
    rep.artifacts["limit"] = lim
    return rep


def _one_point_chain(size: int) -> InverseSystem:
    """``X_k = {0..k-1} + {tail}`` for ``k = 0..size``, collapsing onto the tail."""
    idx = list(range(size + 1))
    trans = {}
    for i in idx:
        for j in idx:
            if j < i:
                trans[(i, j)] = [p if p < j else j for p in range(i + 1)]
    return build_system(IndexPoset.chain(idx), {k: k + 1 for k in idx}, trans)


def compact_totdisc_is_profinite(t: Topology, truncation: int = 8) -> TheoremReport:
    """Present a compact totally disconnected space as an inverse limit.

    Finite spaces go through ``Clop(X)``, the Stone map and Lemma I. The
    one-point compactification is checked on its truncation model, whose
    blocks are clopen, and presented as the limit of the collapsing chain.
    """
    if isinstance(t, SymbolicTopology):
        return _compact_totdisc_symbolic(t, truncation)
    failed = []
    if not is_quasi_compact_direct(t):
        failed.append("quasi-compact")
    if not is_hausdorff(t):
        failed.append("Hausdorff")
    if not is_totally_disconnected(t):
        failed.append("totally disconnected")
    st = stone_map(t)
    ring_ok = st.homeomorphism
    witness: dict = {"failed_hypotheses": failed, "stone_map": list(st.map.table)}
    rep = TheoremReport(describe(t), "theorem2-backward", not failed, ring_ok, witness=witness)
    if ring_ok and len(st.spec.points) <= MAX_LEMMA_I_ATOMS:
        lemma = verify_lemma_I(clop_ring(t))
        lim = lemma.artifacts["limit"]
        phi = lemma.artifacts["map"]
        if phi is None or not lemma.ok:
            rep.ring = False
        else:
            composite = st.map.then(phi)
            rep.ring = is_homeomorphism(composite, t, lim.topology)
            witness["presentation"] = {"indices": len(lim.order), "threads": len(lim.threads)}
            rep.artifacts.update(system=lim.system, limit=lim, map=composite)
    elif ring_ok:
        rep.notes.append(f"Stone map checked; Lemma I presentation skipped above {MAX_LEMMA_I_ATOMS} atoms")
    return rep


def _compact_totdisc_symbolic(t: SymbolicTopology, size: int) -> TheoremReport:
    failed = []
    if not is_quasi_compact_direct(t):
        failed.append("quasi-compact")
    if not is_hausdorff(t):
        failed.append("Hausdorff")
    if not is_totally_disconnected(t):
        failed.append("totally disconnected")
    model, q = truncation_model(t, size)
    blocks = [preimage_hom(q, Subset.of(model.universe, [y])) for y in range(model.n)]
    clopen = all(t.is_open(b) and t.is_closed(b) for b in blocks)
    reps = list(range(size)) + ([INF] if t.universe.infinity else [])
    images = [q(x) for x in reps]
    bijective = sorted(images) == list(range(model.n))
    ring_ok = clopen and bijective and not failed
    witness: dict = {"failed_hypotheses": failed, "truncation": size, "spec_points": model.n, "blocks_clopen": clopen}
    rep = TheoremReport(describe(t), "theorem2-backward", not failed, ring_ok, witness=witness)
    if ring_ok:
        chain = _one_point_chain(size)
        lim = limit(chain)
        # a model point y maps to the thread of its images in every level
        table = [lim.thread_index([min(y, k) for k in lim.order]) for y in range(model.n)]
        f = PointMap(model.universe, lim.topology.universe, table=tuple(table))
        rep.ring = None not in table and is_homeomorphism(f, model, lim.topology)
        witness["presentation"] = {"indices": len(lim.order), "threads": len(lim.threads)}
        rep.artifacts.update(system=chain, limit=lim, map=f)
    return rep
