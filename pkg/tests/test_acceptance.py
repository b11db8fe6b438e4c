"""Acceptance criteria, one test per criterion at its stated tolerance.

The terminal summary prints a PASS/FAIL line for each criterion number.
"""

import itertools
import random
import time

import pytest

import oracles
from conftest import opens_of
from ringtopo.converge import (
    check_closure_law,
    check_compact_corollary,
    check_theorem_I,
    check_theorem_III,
    limit_set,
    symbolic_summary,
    tychonoff_check,
)
from ringtopo.profinite import compact_totdisc_is_profinite, verify_lemma_I, verify_lemma_II
from ringtopo.ringide import (
    BooleanSubring,
    MaximalIdeal,
    PrincipalIdeal,
    ideal_from_generators,
    pair_generator,
    spec,
    stone_map,
    subrings,
)
from ringtopo.setcore import INF, Subset, Universe, all_subsets
from ringtopo.topo import (
    SymbolicTopology,
    closure,
    discrete,
    enumerate_topologies,
    is_homeomorphism,
    topology_from_opens,
)

COUNTS = {1: 1, 2: 4, 3: 29, 4: 355}
TOPS = {n: list(enumerate_topologies(n)) for n in COUNTS}


def sweep():
    for n in COUNTS:
        yield from TOPS[n]


def members(ideal, n: int) -> frozenset:
    return frozenset(frozenset(a) for a in all_subsets(Universe.finite(n)) if ideal.contains(a))


@pytest.mark.criterion(1, "Theorem I sweep, n = 1..4, runtime < 10 s")
def test_criterion_1_theorem_I_sweep():
    start = time.perf_counter()
    checked = bad = 0
    for n in COUNTS:
        ts = list(enumerate_topologies(n))
        assert len(ts) == COUNTS[n]
        for t in ts:
            rep = check_theorem_I(t)
            checked += 1
            bad += not (rep.agree and rep.direct)
    elapsed = time.perf_counter() - start
    print(f"theorem I: {checked} spaces, {bad} disagreements, {elapsed:.2f} s")
    assert checked == 389 and bad == 0 and elapsed < 10


@pytest.mark.criterion(2, "Theorem III sweep and Hausdorff <=> discrete")
def test_criterion_2_theorem_III_sweep():
    bad = 0
    for t in sweep():
        rep = check_theorem_III(t)
        bad += not rep.agree
        bad += rep.direct != t.is_discrete()
    assert bad == 0


@pytest.mark.criterion(3, "Compactness corollary sweep")
def test_criterion_3_compact_corollary_sweep():
    bad = sum(not check_compact_corollary(t).agree for t in sweep())
    assert bad == 0


@pytest.mark.criterion(4, "Closure law limit_set(m_x) = closure({x}), 1513 equalities")
def test_criterion_4_closure_law():
    equalities = 0
    for t in sweep():
        assert check_closure_law(t).ok
        opens = opens_of(t)
        for x in range(t.n):
            lim = limit_set(MaximalIdeal(t.universe, x), t).points
            assert lim == closure(t, Subset.of(t.universe, [x]))
            assert frozenset(lim) == oracles.closure(opens, {x}, t.n)
            equalities += 1
    assert equalities == 355 * 4 + 29 * 3 + 4 * 2 + 1


@pytest.mark.criterion(5, "Symbolic infinite spaces with truncations N = 8, 32, 100")
def test_criterion_5_symbolic_spaces():
    sizes = (8, 32, 100)
    dn = symbolic_summary(SymbolicTopology("discrete-nat"), sizes)
    assert not dn["quasi_compact"] and dn["frechet_limit"] == "none" and dn["frechet_limit_set"] == []
    cof = symbolic_summary(SymbolicTopology("cofinite-nat"), sizes)
    assert cof["quasi_compact"] and not cof["hausdorff"] and cof["frechet_limit"] == "all"
    one = SymbolicTopology("one-point")
    op = symbolic_summary(one, sizes)
    assert op["quasi_compact"] and op["hausdorff"] and op["frechet_limit"] == "single"
    assert list(limit_set(MaximalIdeal(one.universe, None), one).points) == [INF]
    assert check_compact_corollary(one).ring
    for x in one.point_samples(10):
        assert list(limit_set(MaximalIdeal(one.universe, x), one).points) == [x]
    for summary in (dn, cof, op):
        assert summary["agree"]
        assert summary["truncations"] == {str(n): [] for n in sizes}


@pytest.mark.criterion(6, "Ideal algebra vs brute-force span, n <= 4 exhaustive, 10^4 cases at n = 5")
def test_criterion_6_ideal_algebra():
    for n in range(1, 5):
        u = Universe.finite(n)
        subs = all_subsets(u)
        for f1, f2 in itertools.product(subs, repeat=2):
            spanned = oracles.ideal_span([frozenset(f1), frozenset(f2)], n)
            assert members(ideal_from_generators([f1, f2]), n) == spanned
            assert members(PrincipalIdeal(pair_generator(f1, f2)), n) == spanned
    u = Universe.finite(5)
    rng = random.Random(20240605)
    cases = 0
    for _ in range(10_000):
        k = rng.randint(1, 4)
        gens = [rng.randrange(32) for _ in range(k)]
        spanned = oracles.ideal_span_masks(gens, 5)
        ideal = ideal_from_generators([Subset(u, bits=g) for g in gens])
        assert {m for m in range(32) if ideal.contains(Subset(u, bits=m))} == spanned
        if k >= 2:
            single = PrincipalIdeal(pair_generator(Subset(u, bits=gens[0]), Subset(u, bits=gens[1])))
            assert {m for m in range(32) if single.contains(Subset(u, bits=m))} == oracles.ideal_span_masks(gens[:2], 5)
        cases += 1
    assert cases >= 10_000


@pytest.mark.criterion(7, "Stone duality on 4 points and rings with <= 4 atoms")
def test_criterion_7_stone_duality():
    for t in TOPS[4]:
        assert stone_map(t).homeomorphism == t.is_discrete()
    rings = 0
    for n in range(1, 6):
        for r in subrings(BooleanSubring.full(Universe.finite(n))):
            if len(r.blocks) > 4:
                continue
            sp = spec(r)
            assert len(sp.points) == len(r.blocks)
            elems = r.elements()
            for f, g in itertools.product(elems, repeat=2):
                assert sp.D(f * g) == sp.D(f) * sp.D(g)
            rings += 1
    assert rings == 1 + 2 + 5 + 15 + 51


@pytest.mark.criterion(8, "Lemma I for 2, 3, 4 atoms, runtime < 5 s")
def test_criterion_8_lemma_I():
    start = time.perf_counter()
    for k, expect in ((2, 2), (3, 5), (4, 15)):
        r = BooleanSubring.full(Universe.finite(k))
        rep = verify_lemma_I(r)
        assert rep.witness["subrings"] == expect
        assert rep.direct and rep.ring and rep.ok
        phi = rep.artifacts["map"]
        assert sorted(phi.table) == list(range(k))
        assert is_homeomorphism(phi, spec(r).topology, rep.artifacts["limit"].topology)
    elapsed = time.perf_counter() - start
    print(f"lemma I: {elapsed:.2f} s")
    assert elapsed < 5


@pytest.mark.criterion(9, "Tychonoff harness over 29 x 29 pairs on 3 points")
def test_criterion_9_tychonoff():
    failures = pairs = ideals = 0
    for a, b in itertools.product(TOPS[3], repeat=2):
        rep = tychonoff_check([a, b])
        pairs += 1
        ideals += len(rep.limits)
        failures += len(rep.witness["failures"]) if rep.witness else 0
        assert rep.ok
    assert pairs == 29 * 29 and ideals == pairs * 9 and failures == 0


@pytest.mark.criterion(10, "Lemma II and Theorem II round trips")
def test_criterion_10_lemma_II_theorem_II():
    xs = [discrete(2), discrete(2)]
    u = Universe.finite(4)
    for mask in range(16):
        rep = verify_lemma_II(xs, Subset(u, bits=mask))
        assert rep.direct and rep.ring
    for n in range(1, 5):
        for t in TOPS[n]:
            rep = compact_totdisc_is_profinite(t)
            assert rep.agree
            if t.is_discrete():
                assert is_homeomorphism(rep.artifacts["map"], t, rep.artifacts["limit"].topology)
            else:
                failed = rep.witness["failed_hypotheses"]
                assert failed and all(isinstance(h, str) for h in failed)


@pytest.mark.criterion(11, "Enumeration counts match the closure oracle; n = 4 duplicate-free and valid")
def test_criterion_11_enumeration_integrity():
    for n in (1, 2, 3):
        ours = {opens_of(t) for t in TOPS[n]}
        assert len(TOPS[n]) == len(ours) == COUNTS[n]
        assert ours == set(oracles.topologies(n))
    four = [opens_of(t) for t in TOPS[4]]
    assert len(four) == len(set(four)) == 355
    u = Universe.finite(4)
    for t in TOPS[4]:
        assert topology_from_opens(u, list(t.opens)) == t
