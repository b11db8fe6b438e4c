"""Brute-force reference implementations on plain frozensets.

Nothing here imports the package; every helper recomputes its answer from
definitions so it can be compared against the optimised code.
"""

from __future__ import annotations

import itertools
from functools import reduce

Set = frozenset


def powerset(n: int) -> list[Set]:
    pts = range(n)
    return [Set(c) for k in range(n + 1) for c in itertools.combinations(pts, k)]


def to_set(mask: int) -> Set:
    return Set(i for i in range(mask.bit_length()) if mask >> i & 1)


def to_mask(s) -> int:
    return sum(1 << i for i in s)


# -- ring ----------------------------------------------------------------------


def sym_diff(a: Set, b: Set) -> Set:
    return Set(x for x in a | b if (x in a) != (x in b))


def ideal_span(gens, n: int) -> Set:
    """Every sum of products r_i * g_i with r_i ranging over P(X)."""
    ring = powerset(n)
    gens = list(gens)
    out = set()
    for coeffs in itertools.product(ring, repeat=len(gens)):
        total = Set()
        for r, g in zip(coeffs, gens):
            total = sym_diff(total, r & g)
        out.add(total)
    return Set(out)


def ideal_span_masks(gens, n: int) -> Set:
    """``ideal_span`` on bitmasks: sums r_1 g_1 + ... + r_k g_k, built one
    generator at a time over every coefficient r in P(X)."""
    ring = range(1 << n)
    span = {0}
    for g in gens:
        span = {a ^ (r & g) for a in span for r in ring}
    return Set(span)


def ring_closure(gens, n: int) -> Set:
    """Smallest family containing gens, the empty set and X, closed under + and *."""
    fam = {Set(), Set(range(n))} | {Set(g) for g in gens}
    while True:
        new = {op(a, b) for a in fam for b in fam for op in (sym_diff, Set.intersection)} - fam
        if not new:
            return Set(fam)
        fam |= new


def is_ideal(fam: Set, n: int) -> bool:
    if Set() not in fam:
        return False
    ring = powerset(n)
    return all(sym_diff(a, b) in fam for a in fam for b in fam) and all(r & a in fam for r in ring for a in fam)


def maximal_ideals(n: int) -> list[Set]:
    """Ideals of P(Finite(n)) that are proper and maximal, by exhaustive search."""
    ring = powerset(n)
    whole = Set(range(n))
    ideals = []
    inner = [a for a in ring if a]
    for k in range(len(inner) + 1):
        for pick in itertools.combinations(inner, k):
            fam = Set(pick) | {Set()}
            if whole not in fam and is_ideal(fam, n):
                ideals.append(fam)
    return [i for i in ideals if not any(i < j for j in ideals)]


def subrings(n: int) -> list[Set]:
    """Every subset family of P(X) that is a unital subring."""
    ring = powerset(n)
    whole = Set(range(n))
    inner = [a for a in ring if a and a != whole]
    out = []
    for k in range(len(inner) + 1):
        for pick in itertools.combinations(inner, k):
            fam = Set(pick) | {Set(), whole}
            if all(sym_diff(a, b) in fam and a & b in fam for a in fam for b in fam):
                out.append(fam)
    return out


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


# -- topology -------------------------------------------------------------------


def topologies(n: int) -> list[Set]:
    """All families on Finite(n) containing the empty set and X and closed
    under pairwise union and intersection."""
    ring = powerset(n)
    whole = Set(range(n))
    inner = [a for a in ring if a and a != whole]
    out = []
    for sel in range(1 << len(inner)):
        fam = {Set(), whole} | {inner[i] for i in range(len(inner)) if sel >> i & 1}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(Set(fam))
    return out


def generated_topology(n: int, subbasis) -> Set:
    whole = Set(range(n))
    basis = {whole}
    for k in range(1, len(subbasis) + 1):
        for pick in itertools.combinations(subbasis, k):
            basis.add(reduce(Set.intersection, (Set(p) for p in pick)))
    basis = list(basis)
    fam = set()
    for k in range(len(basis) + 1):
        for pick in itertools.combinations(basis, k):
            fam.add(reduce(Set.union, pick, Set()))
    return Set(fam)


def closure(opens, a: Set, n: int) -> Set:
    whole = Set(range(n))
    closed = [whole - u for u in opens]
    return reduce(Set.intersection, (c for c in closed if a <= c), whole)


def interior(opens, a: Set) -> Set:
    return reduce(Set.union, (u for u in opens if u <= a), Set())


def hausdorff(opens, n: int) -> bool:
    for x, y in itertools.combinations(range(n), 2):
        if not any(x in u and y in v and not (u & v) for u in opens for v in opens):
            return False
    return True


def connected(opens, s: Set) -> bool:
    """No split of ``s`` into two nonempty relatively open pieces."""
    traces = {u & s for u in opens}
    return not any(p and s - p and (s - p) in traces for p in traces)


def components(opens, n: int) -> Set:
    subsets = [a for a in powerset(n) if a]
    conn = [a for a in subsets if connected(opens, a)]
    return Set(a for a in conn if not any(a < b for b in conn))


def clopens(opens, n: int) -> Set:
    whole = Set(range(n))
    return Set(u for u in opens if whole - u in opens)


def converges(opens, ideal_point: int, x: int) -> bool:
    """``m_p`` converges to ``x``: no open around ``x`` avoids ``p``."""
    return all(ideal_point in u for u in opens if x in u)


def limit_set(opens, ideal_point: int, n: int) -> Set:
    return Set(x for x in range(n) if converges(opens, ideal_point, x))


def product_opens(a_opens, b_opens, nb: int) -> Set:
    """Unions of open boxes; label of (i, j) is i * nb + j."""
    boxes = [Set(i * nb + j for i in u for j in v) for u in a_opens for v in b_opens]
    fam = {Set()}
    for box in boxes:
        fam |= {f | box for f in fam}
    return Set(fam)


def continuous(table, x_opens, y_opens) -> bool:
    return all(Set(i for i, v in enumerate(table) if v in u) in x_opens for u in y_opens)


# -- inverse systems ---------------------------------------------------------------


def threads(sizes: dict, maps: dict) -> list[tuple]:
    """Full product scan; ``maps[(i, j)]`` is a table ``X_i -> X_j``.

    Coordinates follow ``sorted(sizes, key=str)`` order; the caller reorders.
    """
    order = list(sizes)
    out = []
    for tp in itertools.product(*(range(sizes[i]) for i in order)):
        point = dict(zip(order, tp))
        ok = True
        for (i, j), table in maps.items():
            if table[point[i]] != point[j]:
                ok = False
                break
        if ok:
            out.append(tp)
    return out
