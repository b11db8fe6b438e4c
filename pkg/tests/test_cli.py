import json
import subprocess
import sys
from pathlib import Path

import pytest

from ringtopo import __version__
from ringtopo.cli import run

FIX = Path(__file__).parent / "fixtures"


def invoke(tmp_path, *args, name="out.json"):
    out = tmp_path / name
    code = run([*args, "--output", str(out)])
    return code, out.read_text() if out.exists() else None


def report(tmp_path, *args):
    code, text = invoke(tmp_path, *args)
    return code, json.loads(text)


def test_sweep_theorem_I_on_four_points(tmp_path):
    code, rep = report(tmp_path, "sweep", "--theorem", "I", "--n", "4")
    assert code == 0 and rep["ok"]
    th = rep["result"]["theorems"]["I"]
    assert th["checked"] == th["agree"] == 355 and th["disagreements"] == 0
    assert all(c["agree"] and c["direct"] and c["ring"] for c in th["cases"])


def test_sweep_all_theorems_small(tmp_path):
    code, rep = report(tmp_path, "sweep", "--n", "3")
    assert code == 0
    assert set(rep["result"]["theorems"]) == {"I", "III", "compact", "closure"}
    assert all(t["checked"] == 29 == t["agree"] for t in rep["result"]["theorems"].values())


def test_sweep_samples_at_five_points(tmp_path):
    code, rep = report(tmp_path, "sweep", "--n", "5", "--theorem", "III", "--seed", "7")
    assert code == 0
    assert rep["result"]["topologies"] == 6942 and not rep["result"]["exhaustive"]
    assert rep["result"]["theorems"]["III"]["checked"] == 64
    assert rep["config"]["seed"] == 7


def test_check_sierpinski_theorem_III(tmp_path):
    code, rep = report(tmp_path, "check", "--space", str(FIX / "sierpinski.topo"), "--theorem", "III")
    assert code == 0
    (r,) = rep["result"]["reports"]
    assert r["agree"] and not r["direct"] and not r["ring"]


def test_check_accepts_inline_and_symbolic_spaces(tmp_path):
    code, rep = report(tmp_path, "check", "--space", "universe 2; opens {} {0,1}", "--theorem", "I")
    assert code == 0 and rep["result"]["reports"][0]["direct"]
    code, rep = report(tmp_path, "check", "--space", "discrete-nat", "--theorem", "I")
    assert code == 0 and not rep["result"]["reports"][0]["direct"]


def test_stone_spec_and_limit(tmp_path):
    code, rep = report(tmp_path, "stone", "--space", str(FIX / "discrete3.topo"))
    assert code == 0 and rep["result"]["homeomorphism"] and rep["result"]["theorem2"]["agree"]
    code, rep = report(tmp_path, "stone", "--space", str(FIX / "sierpinski.topo"))
    assert code == 0 and not rep["result"]["homeomorphism"]
    code, rep = report(tmp_path, "spec", "--ring", "universe 4; gens {0,1} {2}")
    assert code == 0 and rep["result"]["points"] == 3 and rep["result"]["multiplicative"]
    code, rep = report(tmp_path, "limit", "--system", str(FIX / "prefix2.sys"))
    assert code == 0 and len(rep["result"]["threads"]) == 4


def test_lemmas_tychonoff_alexander_enumerate(tmp_path):
    code, rep = report(tmp_path, "lemma1", "--n", "3", "--exhaustive")
    assert code == 0 and len(rep["result"]["reports"]) == 3
    code, rep = report(tmp_path, "lemma2", "--factors", "2,3")
    assert code == 0 and rep["result"]["checked"] == 64
    code, rep = report(tmp_path, "tychonoff", "--n", "2")
    assert code == 0 and rep["result"]["pairs"] == 16
    code, rep = report(tmp_path, "alexander", "--space", str(FIX / "sierpinski.topo"), "--subbasis", "{1} {0,1}")
    assert code == 0 and rep["result"]["agree"]
    code, rep = report(tmp_path, "enumerate", "--n", "3")
    assert code == 0 and rep["result"]["count"] == rep["result"]["distinct"] == 29


@pytest.mark.parametrize(
    "name,quasi,hausdorff,frechet",
    [("cofinite", True, False, "all"), ("discrete-nat", False, True, "none"), ("one-point", True, True, "single")],
)
def test_demo_outputs(tmp_path, name, quasi, hausdorff, frechet):
    code, rep = report(tmp_path, "demo", name, "--truncation", "8")
    r = rep["result"]
    assert code == 0 and r["agree"] and r["mismatches"] == 0
    assert (r["quasi_compact"], r["hausdorff"], r["frechet_limit"]) == (quasi, hausdorff, frechet)


@pytest.mark.parametrize(
    "args",
    [
        ["sweep", "--n", "9"],
        ["sweep", "--n", "0"],
        ["demo", "klein-bottle"],
        ["check", "--space", "no/such/file.topo"],
        ["sweep", "--format", "dot"],
        ["demo", "one-point", "--truncation", "3"],
        ["lemma2", "--factors", "4,5"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(tmp_path, args, capsys):
    code, text = invoke(tmp_path, *args)
    assert code == 2 and text is None
    assert capsys.readouterr().err


def test_deterministic_output_with_config_echo(tmp_path):
    args = ["sweep", "--n", "5", "--theorem", "I", "--seed", "3"]
    _, a = invoke(tmp_path, *args, name="a.json")
    _, b = invoke(tmp_path, *args, name="b.json")
    assert a == b
    rep = json.loads(a)
    assert rep["tool"] == "ringtopo" and rep["version"] == __version__
    assert rep["config"]["seed"] == 3 and rep["config"]["n"] == 5 and "output" not in rep["config"]
    _, c = invoke(tmp_path, "sweep", "--n", "5", "--theorem", "I", "--seed", "4", name="c.json")
    assert json.loads(c)["result"] != rep["result"]


def test_text_and_dot_formats(tmp_path):
    code, text = invoke(tmp_path, "demo", "cofinite", "--format", "text", "--truncation", "8")
    assert code == 0 and "quasi_compact: True" in text and not text.lstrip().startswith("{")
    code, dot = invoke(tmp_path, "limit", "--system", str(FIX / "prefix2.sys"), "--format", "dot")
    assert code == 0 and dot.startswith("digraph poset") and "digraph threads" in dot
    assert dot.count("// thread") == 4
    code, dot = invoke(tmp_path, "spec", "--n", "2", "--format", "dot")
    assert code == 0 and dot.startswith("graph spec")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ringtopo", "enumerate", "--n", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["count"] == 4
