import json
import subprocess
import sys

import pytest

from corpora import partition_corpus, trace_corpus, valid_specs
from kpfree.cli import main
from kpfree.io import write_graph
from kpfree.partition import exchange


def run(args):
    return main([str(a) for a in args])


def read_json(path):
    return json.loads(path.read_text())


def manifest(path):
    m = read_json(path.with_name(path.name + ".manifest.json"))
    m.pop("timing_seconds")
    return m


@pytest.fixture
def h1(tmp_path):
    out = tmp_path / "h1.el"
    assert run(["generate", "--family", "h1_figure", "-o", out]) == 0
    return out


def test_generate_writes_manifest(h1):
    m = manifest(h1)
    assert m["command"] == "generate" and m["error"] is None
    assert m["result"] == {"family": "h1_figure", "params": {}, "n": 8, "m": 16}
    assert m["rng"] == "python-random-mt19937/v1"


def test_oracle_exists_h1(h1, tmp_path):
    out = tmp_path / "res.json"
    assert run(["oracle", "exists", "-i", h1, "--spec", "3,2", "-o", out]) == 0
    res = read_json(out)
    assert res["exists"] is False and res["space"] == 256
    assert manifest(out)["inputs"][str(h1)]


def test_analyze_h0(tmp_path):
    g = tmp_path / "h0.col"
    run(["generate", "--family", "h0_pendant", "-o", g])
    out = tmp_path / "a.json"
    assert run(["analyze", "-i", g, "--alpha", "--chromatic", "-o", out]) == 0
    a = read_json(out)
    assert (a["max_degree"], a["clique_number"], a["chromatic_number"]) == (9, 8, 8)
    assert (a["independence_number"], a["independence_optima"]) == (16, 1)


def test_analyze_h1_stdout(h1, capsys):
    assert run(["analyze", "-i", h1]) == 0
    captured = capsys.readouterr()
    a = json.loads(captured.out)
    assert (a["max_degree"], a["clique_number"]) == (4, 3)
    assert json.loads(captured.err.strip().splitlines()[-1])["command"] == "analyze"


def test_analyze_empty_file(tmp_path, capsys):
    empty = tmp_path / "e.el"
    empty.write_text("")
    assert run(["analyze", "-i", empty]) == 2
    assert "line 1" in capsys.readouterr().err


def test_missing_file_and_bad_spec(h1):
    assert run(["analyze", "-i", "/nonexistent.el"]) == 2
    assert run(["partition", "-i", h1, "--spec", "2,3"]) == 2


def test_budget_refusal_exit_3(tmp_path):
    g = tmp_path / "g.el"
    run(["generate", "--family", "random", "--param", "n=12", "--param", "p=0.5", "--seed", "1",
         "-o", g])
    assert run(["oracle", "maxset", "-i", g, "--p", "3", "--max-n-bnb", "8"]) == 3
    assert run(["oracle", "chromatic", "-i", g, "--max-n-bnb", "8"]) == 3


def test_partition_verify_round_trip(tmp_path):
    g = partition_corpus()[5]
    gp = tmp_path / "g.el"
    write_graph(g, gp)
    spec = ",".join(map(str, valid_specs(g.max_degree)[-1]))
    out = tmp_path / "p.json"
    assert run(["partition", "-i", gp, "--spec", spec, "-o", out, "--trace"]) == 0
    part = read_json(out)
    assert part["certified"] is True and "trace" in part
    assert run(["verify", "-i", gp, "-p", out]) == 0

    broken = dict(part)
    broken["classes"] = [[v for v in c if v != 0] for c in part["classes"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(broken))
    assert run(["verify", "-i", gp, "-p", bad]) == 4


def test_partition_is_byte_reproducible(tmp_path):
    g = partition_corpus()[7]
    gp = tmp_path / "g.el"
    write_graph(g, gp)
    spec = ",".join(map(str, valid_specs(g.max_degree)[1]))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["partition", "-i", gp, "--spec", spec, "-o", a])
    run(["partition", "-i", gp, "--spec", spec, "-o", b])
    assert a.read_bytes() == b.read_bytes()
    ma, mb = manifest(a), manifest(b)
    ma.pop("argv"), mb.pop("argv")
    assert ma == mb


def test_max_first_two_classes(tmp_path):
    g = trace_corpus()[0]
    gp = tmp_path / "g.el"
    write_graph(g, gp)
    from kpfree.cliques import clique_number

    w = clique_number(g)
    out = tmp_path / "p.json"
    spec = f"{w},{g.max_degree + 1 - w}"
    assert run(["partition", "-i", gp, "--spec", spec, "--max-first", "--seed-mode", "max-kq",
                "--trace", "-o", out]) == 0
    part = read_json(out)
    assert part["meta"]["swaps"] > 0 and part["trace"]
    assert run(["verify", "-i", gp, "-p", out]) == 0


def test_internal_contradiction_exit_4(tmp_path, monkeypatch):
    g = trace_corpus()[0]
    gp = tmp_path / "g.el"
    write_graph(g, gp)
    from kpfree.cliques import clique_number

    w = clique_number(g)

    def bad_step(st, v, y):
        st.s_mask |= 1 << v
        st.step += 1

    monkeypatch.setattr(exchange, "exchange_step", bad_step)
    out = tmp_path / "p.json"
    code = run(["partition", "-i", gp, "--spec", f"{w},{g.max_degree + 1 - w}", "--max-first",
                "--seed-mode", "max-kq", "-o", out])
    assert code == 4
    assert manifest(out)["error"]["type"] == "InternalContradiction"


def test_search_command(tmp_path):
    out = tmp_path / "s.json"
    assert run(["search", "--delta", "5", "--spec", "4,2", "--n-max", "3", "--named", "c5xk2",
                "-o", out]) == 0
    rep = read_json(out)
    assert [r["graph_id"] for r in rep["refutations"]] == ["named-c5xk2"]
    assert manifest(out)["result"]["refutations"] == 1


def test_generate_dimacs_stdout(capsys):
    assert run(["generate", "--family", "cycle", "--param", "n=5", "--format", "col"]) == 0
    assert capsys.readouterr().out.startswith("p edge 5 5")


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "kpfree.cli", "--version"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("kpfree ")
