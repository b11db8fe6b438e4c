"""Command-line entry point.

Every command builds one report dict of the form
``{"tool", "version", "config", "result", "ok"}`` and writes it as JSON,
text or (where it makes sense) DOT. Exit codes: 0 when every check agrees,
1 on a disagreement, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .converge import (
    TheoremReport,
    check_alexander,
    check_closure_law,
    check_compact_corollary,
    check_theorem_I,
    check_theorem_III,
    describe,
    symbolic_summary,
    tychonoff_check,
)
from .profinite import (
    compact_totdisc_is_profinite,
    limit,
    profinite_is_compact_totdisc,
    verify_lemma_I,
    verify_lemma_II,
)
from .ringide import BooleanSubring, spec, stone_map
from .setcore import Subset, Universe
from .textio import (
    dumps,
    format_topology,
    parse_ring,
    parse_sets,
    parse_system,
    parse_topology,
    poset_to_dot,
    spec_to_dot,
    spec_to_json,
    threads_to_dot,
    topology_to_json,
)
from .topo import FiniteTopology, SymbolicTopology, discrete, enumerate_topologies

MAX_N = 5
MIN_TRUNCATION = 4
SAMPLE_SIZE = 64
DEMO_NAMES = {"cofinite": "cofinite-nat", "discrete-nat": "discrete-nat", "one-point": "one-point"}

THEOREMS: dict[str, Callable[[FiniteTopology | SymbolicTopology], TheoremReport]] = {
    "I": check_theorem_I,
    "III": check_theorem_III,
    "compact": check_compact_corollary,
}


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _space(arg: str):
    """A fixture path, an inline fixture, or a symbolic name."""
    if arg in DEMO_NAMES or arg in SymbolicTopology.NAMES:
        return SymbolicTopology(DEMO_NAMES.get(arg, arg))
    text = arg if (";" in arg or arg.startswith("symbolic")) else _read(arg)
    try:
        return parse_topology(text)
    except ValueError as exc:
        raise UsageError(f"bad topology fixture: {exc}") from None


def _summary(reports: Sequence[TheoremReport]) -> dict:
    bad = [i for i, r in enumerate(reports) if not r.ok]
    out = {"checked": len(reports), "agree": len(reports) - len(bad), "disagreements": len(bad)}
    if bad:
        out["first_disagreement"] = reports[bad[0]].to_dict()
    return out


# -- commands -----------------------------------------------------------------------


def cmd_sweep(cfg: argparse.Namespace) -> tuple[dict, bool]:
    names = ["I", "III", "compact", "closure"] if cfg.theorem == "all" else [cfg.theorem]
    ts = list(enumerate_topologies(cfg.n))
    exhaustive = cfg.n < MAX_N or cfg.exhaustive
    picks = range(len(ts)) if exhaustive else sorted(random.Random(cfg.seed).sample(range(len(ts)), SAMPLE_SIZE))
    result: dict = {"n": cfg.n, "topologies": len(ts), "exhaustive": exhaustive, "theorems": {}}
    ok = True
    for name in names:
        reports = []
        for i in picks:
            t = ts[i]
            rep = check_closure_law(t) if name == "closure" else THEOREMS[name](t)
            if name == "III":
                # a finite T2 space is discrete
                rep.expected = t.is_discrete()
            reports.append(rep)
        entry = _summary(reports)
        entry["cases"] = [
            {"index": i, "space": format_topology(ts[i]), "direct": r.direct, "ring": r.ring, "agree": r.ok}
            for i, r in zip(picks, reports)
        ]
        result["theorems"][name] = entry
        ok = ok and entry["disagreements"] == 0
    return result, ok


def cmd_check(cfg: argparse.Namespace) -> tuple[dict, bool]:
    t = _space(cfg.space)
    names = list(THEOREMS) if cfg.theorem == "all" else [cfg.theorem]
    reports = [THEOREMS[name](t) for name in names]
    return {"space": describe(t), "reports": [r.to_dict() for r in reports]}, all(r.ok for r in reports)


def cmd_stone(cfg: argparse.Namespace) -> tuple[dict, bool]:
    t = _space(cfg.space)
    if isinstance(t, SymbolicTopology):
        rep = compact_totdisc_is_profinite(t, cfg.truncation or 8)
        return {"space": describe(t), "report": rep.to_dict()}, rep.ok
    st = stone_map(t)
    rep = compact_totdisc_is_profinite(t)
    result = {
        "space": describe(t),
        "clop_atoms": [sorted(a) for a in st.spec.ring.atoms],
        "stone_map": list(st.map.table),
        "bijective": st.bijective,
        "continuous": st.continuous,
        "closed": st.closed,
        "homeomorphism": st.homeomorphism,
        "discrete": t.is_discrete(),
        "theorem2": rep.to_dict(),
    }
    agree = st.homeomorphism == t.is_discrete() and rep.ok
    return result, agree


def cmd_spec(cfg: argparse.Namespace) -> tuple[dict, bool]:
    if cfg.ring:
        text = cfg.ring if ";" in cfg.ring else _read(cfg.ring)
        try:
            r = parse_ring(text)
        except ValueError as exc:
            raise UsageError(f"bad ring fixture: {exc}") from None
    else:
        r = BooleanSubring.full(Universe.finite(cfg.n))
    sp = spec(r)
    out = spec_to_json(sp)
    out["D"] = {}
    ok = True
    elems = r.elements()
    for f in elems:
        out["D"][str(f)] = sorted(sp.D(f))
        for g in elems:
            ok = ok and sp.D(f & g) == (sp.D(f) & sp.D(g))
    out["multiplicative"] = ok
    out["_dot"] = spec_to_dot(sp)
    return out, ok and len(sp.points) == len(r.blocks)


def cmd_limit(cfg: argparse.Namespace) -> tuple[dict, bool]:
    if not cfg.system:
        raise UsageError("limit needs --system")
    try:
        sys_ = parse_system(_read(cfg.system))
    except ValueError as exc:
        raise UsageError(f"bad inverse system: {exc}") from None
    lim = limit(sys_)
    rep = profinite_is_compact_totdisc(sys_)
    result = {
        "indices": [str(i) for i in lim.order],
        "threads": [list(t) for t in lim.threads],
        "topology": topology_to_json(lim.topology),
        "theorem2": rep.to_dict(),
        "_dot": poset_to_dot(sys_) + threads_to_dot(lim),
    }
    return result, rep.ok


def cmd_lemma1(cfg: argparse.Namespace) -> tuple[dict, bool]:
    sizes = range(1, cfg.n + 1) if cfg.exhaustive else [cfg.n]
    reps = [verify_lemma_I(BooleanSubring.full(Universe.finite(k))) for k in sizes]
    return {"reports": [r.to_dict() for r in reps]}, all(r.ok for r in reps)


def cmd_lemma2(cfg: argparse.Namespace) -> tuple[dict, bool]:
    try:
        factors = [int(v) for v in cfg.factors.split(",")]
    except ValueError:
        raise UsageError(f"--factors wants sizes like 2,2, got {cfg.factors!r}") from None
    xs = [discrete(k) for k in factors]
    total = 1
    for k in factors:
        total *= k
    if total > 16:
        raise UsageError("product of factor sizes must be at most 16")
    u = Universe.finite(total)
    reps = [verify_lemma_II(xs, Subset(u, bits=mask)) for mask in range(1 << total)]
    return {"factors": factors, "subsets": len(reps), **_summary(reps)}, all(r.ok for r in reps)


def cmd_tychonoff(cfg: argparse.Namespace) -> tuple[dict, bool]:
    if cfg.n > 3 and not cfg.exhaustive:
        ts = list(enumerate_topologies(cfg.n))
        rng = random.Random(cfg.seed)
        pairs = [(rng.randrange(len(ts)), rng.randrange(len(ts))) for _ in range(SAMPLE_SIZE)]
    else:
        ts = list(enumerate_topologies(cfg.n))
        pairs = list(itertools.product(range(len(ts)), repeat=2))
    reps = [tychonoff_check([ts[a], ts[b]]) for a, b in pairs]
    out = {"n": cfg.n, "pairs": len(pairs), **_summary(reps)}
    bad = [list(p) for p, r in zip(pairs, reps) if not r.ok]
    if bad:
        out["failing_pairs"] = bad
    return out, not bad


def cmd_alexander(cfg: argparse.Namespace) -> tuple[dict, bool]:
    t = _space(cfg.space)
    if isinstance(t, SymbolicTopology):
        raise UsageError("alexander works on finite fixtures")
    sb = parse_sets(cfg.subbasis, t.universe) if cfg.subbasis else [t.minimal_open(x) for x in range(t.n)]
    try:
        rep = check_alexander(t, sb)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rep.to_dict(), rep.ok


def cmd_demo(cfg: argparse.Namespace) -> tuple[dict, bool]:
    t = SymbolicTopology(DEMO_NAMES[cfg.name])
    truncs = (8, 32, 100) if cfg.truncation is None else (cfg.truncation,)
    out = symbolic_summary(t, truncs)
    mismatches = sum(len(v) for v in out["truncations"].values())
    out["mismatches"] = mismatches
    return out, out["agree"] and mismatches == 0


def cmd_enumerate(cfg: argparse.Namespace) -> tuple[dict, bool]:
    ts = list(enumerate_topologies(cfg.n))
    out = {"n": cfg.n, "count": len(ts), "distinct": len({t.nbhd for t in ts})}
    if cfg.n <= 3 or cfg.exhaustive:
        out["topologies"] = [format_topology(t) for t in ts]
    return out, out["count"] == out["distinct"]


COMMANDS = {
    "sweep": cmd_sweep,
    "check": cmd_check,
    "stone": cmd_stone,
    "spec": cmd_spec,
    "limit": cmd_limit,
    "lemma1": cmd_lemma1,
    "lemma2": cmd_lemma2,
    "tychonoff": cmd_tychonoff,
    "alexander": cmd_alexander,
    "demo": cmd_demo,
    "enumerate": cmd_enumerate,
}


# -- parser and output ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help=f"space size, at most {MAX_N}")
    common.add_argument("--seed", type=int, default=0, help="sampling seed for n=5")
    common.add_argument("--truncation", type=int, default=None, help=f"symbolic truncation size, at least {MIN_TRUNCATION}")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--exhaustive", action="store_true", help="no sampling")

    p = argparse.ArgumentParser(prog="ringtopo", description="Ring-theoretic checks of finite and symbolic topologies.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", parents=[common], help="every topology on n points")
    s.add_argument("--theorem", choices=("I", "III", "compact", "closure", "all"), default="all")
    s = sub.add_parser("check", parents=[common], help="one space")
    s.add_argument("--space", required=True, help="fixture path, inline fixture or symbolic name")
    s.add_argument("--theorem", choices=("I", "III", "compact", "all"), default="all")
    s = sub.add_parser("stone", parents=[common], help="Stone map into Spec(Clop X)")
    s.add_argument("--space", required=True)
    s = sub.add_parser("spec", parents=[common], help="Spec of a finite Boolean ring")
    s.add_argument("--ring", default=None, help="ring fixture path or inline 'universe N; gens ...'")
    s = sub.add_parser("limit", parents=[common], help="limit of an inverse system fixture")
    s.add_argument("--system", default=None)
    sub.add_parser("lemma1", parents=[common], help="Spec(R) as a limit over its subrings")
    s = sub.add_parser("lemma2", parents=[common], help="subspaces of products of discrete spaces")
    s.add_argument("--factors", default="2,2")
    sub.add_parser("tychonoff", parents=[common], help="products of two topologies on n points")
    s = sub.add_parser("alexander", parents=[common], help="subbasis covers")
    s.add_argument("--space", required=True)
    s.add_argument("--subbasis", default=None, help="sets like '{0} {0,1}'; defaults to minimal opens")
    s = sub.add_parser("demo", parents=[common], help="symbolic infinite spaces")
    s.add_argument("name", choices=sorted(DEMO_NAMES))
    sub.add_parser("enumerate", parents=[common], help="list topologies on n points")
    return p


DEFAULT_N = {"sweep": 4, "spec": 3, "lemma1": 4, "tychonoff": 3, "enumerate": 4}


def _validate(p: argparse.ArgumentParser, cfg: argparse.Namespace) -> None:
    if cfg.n is None:
        cfg.n = DEFAULT_N.get(cfg.command, 4)
    if not 1 <= cfg.n <= MAX_N:
        p.error(f"--n must be between 1 and {MAX_N}")
    if cfg.truncation is not None and cfg.truncation < MIN_TRUNCATION:
        p.error(f"--truncation must be at least {MIN_TRUNCATION}")
    dot_ok = ("spec", "limit")
    if cfg.format == "dot" and cfg.command not in dot_ok:
        p.error(f"--format dot is available for {', '.join(dot_ok)} only")


def _config_echo(cfg: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(cfg).items()) if k != "output"}


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in sorted(obj.items()):
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    dot = report["result"].pop("_dot", None)
    if fmt == "dot":
        return dot
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return dumps(report)


def run(argv: Sequence[str] | None = None) -> int:
    p = build_parser()
    try:
        cfg = p.parse_args(argv)
        _validate(p, cfg)
    except SystemExit as exc:  # argparse usage errors, --help and --version
        return 0 if exc.code is None else int(exc.code)
    try:
        result, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"ringtopo: error: {exc}", file=sys.stderr)
        return 2
    report = {"tool": "ringtopo", "version": __version__, "config": _config_echo(cfg), "ok": ok, "result": result}
    text = render(report, cfg.format)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))
