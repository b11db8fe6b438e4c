"""Fixture formats and report serialisation.

Topology fixtures::

    universe 3; opens {} {1} {0,1} {0,1,2}
    symbolic cofinite-nat

Ring presentations::

    universe 4; gens {0,1} {2}

Inverse systems, one statement per line or separated by ``;``::

    index a b c
    leq a b            # a <= b
    leq b c
    space a 1
    space b 2
    space c 4
    map b a 0 0        # transition X_b -> X_a as a table
    map c b 0 0 1 1

Missing transitions between comparable indices are composed from the given
ones.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .profinite import IndexPoset, InverseSystem, LimitSpace, build_system
from .ringide import BooleanSubring, SpecSpace, subring_generated
from .setcore import Subset, Universe, format_subset, parse_subset
from .topo import SymbolicTopology, Topology, topology_from_opens

_SET = re.compile(r"~?\{[^{}]*\}")


def _split(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        out.extend(part.strip() for part in line.split(";") if part.strip())
    return out


def parse_sets(text: str, u: Universe) -> list[Subset]:
    return [parse_subset(m.group(0), u) for m in _SET.finditer(text)]


def _universe_statement(stmt: str) -> Universe:
    m = re.fullmatch(r"universe\s+(\d+)", stmt)
    if not m:
        raise ValueError(f"expected 'universe N', got {stmt!r}")
    return Universe.finite(int(m.group(1)))


def parse_topology(text: str) -> Topology:
    stmts = _split(text)
    if not stmts:
        raise ValueError("empty topology fixture")
    m = re.fullmatch(r"symbolic\s+(\S+)", stmts[0])
    if m:
        return SymbolicTopology(m.group(1))
    u = _universe_statement(stmts[0])
    rest = " ".join(stmts[1:])
    if not rest.startswith("opens"):
        raise ValueError("expected 'opens' after the universe")
    return topology_from_opens(u, parse_sets(rest[len("opens"):], u))


def format_topology(t: Topology) -> str:
    if isinstance(t, SymbolicTopology):
        return f"symbolic {t.name}"
    return f"universe {t.n}; opens " + " ".join(format_subset(o) for o in t.opens)


def topology_to_json(t: Topology) -> dict:
    if isinstance(t, SymbolicTopology):
        return {"symbolic": t.name}
    return {"universe": t.n, "opens": [sorted(o) for o in t.opens]}


def parse_ring(text: str) -> BooleanSubring:
    stmts = _split(text)
    u = _universe_statement(stmts[0])
    rest = " ".join(stmts[1:])
    if rest and not rest.startswith("gens"):
        raise ValueError("expected 'gens' after the universe")
    return subring_generated(parse_sets(rest[len("gens"):], u), u)


def format_ring(r: BooleanSubring) -> str:
    return f"universe {r.universe.size}; gens " + " ".join(format_subset(a) for a in r.atoms)


def spec_to_json(sp: SpecSpace) -> dict:
    return {
        "universe": sp.ring.universe.size,
        "blocks": [sorted(a) for a in sp.ring.atoms],
        "points": len(sp.ring.blocks),
        "opens": [sorted(o) for o in sp.topology.opens] if len(sp.ring.blocks) <= 6 else None,
        "discrete": sp.topology.is_discrete(),
    }


def spec_to_dot(sp: SpecSpace) -> str:
    lines = ["graph spec {"]
    for i, a in enumerate(sp.ring.atoms):
        lines.append(f'  p{i} [label="{format_subset(a)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _token(x: str):
    return int(x) if re.fullmatch(r"-?\d+", x) else x


def parse_system(text: str) -> InverseSystem:
    elements: list = []
    pairs, spaces, maps = [], {}, {}
    for stmt in _split(text):
        words = stmt.split()
        head, args = words[0], [_token(w) for w in words[1:]]
        if head == "index":
            elements.extend(args)
        elif head == "leq":
            if len(args) != 2:
                raise ValueError(f"'leq' takes two indices: {stmt!r}")
            pairs.append((args[0], args[1]))
        elif head == "space":
            if len(args) != 2 or not isinstance(args[1], int):
                raise ValueError(f"'space' takes an index and a size: {stmt!r}")
            spaces[args[0]] = args[1]
        elif head == "map":
            if len(args) < 2:
                raise ValueError(f"'map' takes two indices and a table: {stmt!r}")
            maps[(args[0], args[1])] = [int(v) for v in args[2:]]
        else:
            raise ValueError(f"unknown statement {head!r}")
    return build_system(IndexPoset.from_relations(elements, pairs), spaces, maps)


def format_system(sys: InverseSystem) -> str:
    lines = ["index " + " ".join(str(i) for i in sys.index.elements)]
    lines += [f"leq {a} {b}" for a, b in sys.index.covers()]
    lines += [f"space {i} {sys.space_size(i)}" for i in sys.index.elements]
    for b, a in sys.index.covers():
        table = sys.transitions[(a, b)].table
        lines.append(f"map {a} {b} " + " ".join(str(v) for v in table))
    return "\n".join(lines) + "\n"


def poset_to_dot(sys: InverseSystem) -> str:
    lines = ["digraph poset {", "  rankdir=BT;"]
    for i in sys.index.elements:
        lines.append(f'  "{i}" [label="{i} ({sys.space_size(i)})"];')
    for a, b in sys.index.covers():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def threads_to_dot(lim: LimitSpace) -> str:
    """One node per (index, point); edges follow covering transitions; each
    thread is listed as a comment."""
    sys = lim.system
    lines = ["digraph threads {", "  rankdir=RL;"]
    for i in lim.order:
        for p in range(sys.space_size(i)):
            lines.append(f'  "{i}:{p}";')
    for j, i in sys.index.covers():
        f = sys.transitions[(i, j)]
        for p in range(sys.space_size(i)):
            lines.append(f'  "{i}:{p}" -> "{j}:{f(p)}";')
    for n, t in enumerate(lim.threads):
        lines.append(f"  // thread {n}: " + " ".join(f"{i}:{c}" for i, c in zip(lim.order, t)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj: Any) -> str:
    """Deterministic JSON."""
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"
