import json
import subprocess
import sys

import pytest

import sparsekit.cli as cli
from sparsekit.errors import AlgorithmStallError

PATH5 = '{"family":"path","n":5}'
PATH8 = '{"family":"path","n":8}'
CYCLE7 = '{"family":"cycle","n":7}'
K5 = '{"family":"complete","n":5}'
STAR10 = '{"family":"star","n":10}'


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "sparsekit.cli", *argv],
                          capture_output=True, text=True)
    doc = json.loads(proc.stdout) if proc.stdout.strip() else None
    return proc.returncode, doc, proc.stderr


def test_envelope_shape():
    code, doc, err = run_cli("wcol", PATH5, "--r", "2", "--mode", "exact")
    assert code == 0
    assert sorted(doc) == ["certificate", "command", "error", "input", "params",
                           "result", "seed", "version", "wall_time_s"]
    assert doc["command"] == "wcol"
    assert doc["error"] is None
    assert doc["input"]["n"] == 5 and doc["input"]["m"] == 4
    assert doc["input"]["digest"].startswith("sha256:")
    assert doc["result"]["value"] == 3
    assert doc["certificate"]["kind"] == "order_witness"
    assert sorted(doc["certificate"]["order"]) == [0, 1, 2, 3, 4]
    assert "sparsekit wcol" in err


def test_byte_determinism():
    argv = [sys.executable, "-m", "sparsekit.cli", "cover", CYCLE7, "--r", "1"]
    a = subprocess.run(argv, capture_output=True, text=True).stdout
    b = subprocess.run(argv, capture_output=True, text=True).stdout
    strip = lambda s: [ln for ln in s.splitlines() if "wall_time_s" not in ln]
    assert strip(a) == strip(b) and len(a.splitlines()) - len(strip(a)) == 1


def test_game_on_k5():
    code, doc, _ = run_cli("game", K5, "--kind", "splitter", "--r", "1",
                           "--splitter", "wcol", "--connector", "greedy")
    assert code == 0
    assert doc["result"]["winner"] == "splitter"
    assert doc["result"]["rounds"] <= 5
    assert doc["certificate"]["kind"] == "transcript"


@pytest.mark.parametrize("argv,graph", [
    (("wcol", PATH8, "--r", "2", "--mode", "exact", "--cap", "10"), PATH8),
    (("col", CYCLE7), CYCLE7),
    (("treedepth", PATH8), PATH8),
    (("minor", CYCLE7, "--pattern", '{"family":"complete","n":3}', "--r", "1"),
     CYCLE7),
    (("density", K5, "--r", "1", "--seed", "3"), K5),
    (("game", PATH8, "--kind", "treedepth", "--splitter", "exhaustive",
      "--connector", "exhaustive", "--rounds", "8"), PATH8),
    (("uqw", PATH8, "--r", "2", "--m", "2"), PATH8),
    (("separator", STAR10, "--r", "1", "--eps", "0.5"), STAR10),
    (("cover", PATH8, "--r", "1"), PATH8),
    (("partition", PATH8, "--r", "1"), PATH8),
    (("solve", PATH8, "--problem", "independent", "--r", "2", "--k", "3"), PATH8),
    (("solve", PATH8, "--problem", "dominating", "--r", "1"), PATH8),
    (("eval", CYCLE7, "--sentence", '{"k":2,"r":1,"chi":"true"}'), CYCLE7),
])
def test_certificates_survive_verify(tmp_path, argv, graph):
    code, doc, _ = run_cli(*argv)
    assert code == 0
    assert doc["certificate"] is not None
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(doc["certificate"]))
    code, vdoc, _ = run_cli("verify", str(cert), "--graph", graph)
    assert code == 0, vdoc["result"]["violations"]
    assert vdoc["result"]["ok"] is True


def test_verify_accepts_full_out_document(tmp_path):
    out = tmp_path / "run.json"
    code, _, _ = run_cli("cover", PATH8, "--r", "1", "--out", str(out))
    assert code == 0
    code, vdoc, _ = run_cli("verify", str(out), "--graph", PATH8)
    assert code == 0
    assert vdoc["result"]["ok"] is True


def test_verify_rejects_tampering(tmp_path):
    code, doc, _ = run_cli("uqw", PATH8, "--r", "2", "--m", "2")
    assert code == 0
    cert = doc["certificate"]
    cert["B"] = [0, 1]  # adjacent, so not far apart
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    code, vdoc, _ = run_cli("verify", str(path), "--graph", PATH8)
    assert code == 1
    assert vdoc["result"]["violations"]


def test_expect_flags():
    # trees have no triangle
    code, doc, _ = run_cli("minor", PATH8, "--pattern",
                           '{"family":"complete","n":3}', "--r", "2", "--expect")
    assert code == 1 and doc["result"]["found"] is False
    code, doc, _ = run_cli("solve", K5, "--problem", "independent",
                           "--r", "1", "--k", "2", "--expect")
    assert code == 1 and doc["result"]["found"] is False
    # without --expect the same answer is a clean exit
    code, _, _ = run_cli("solve", K5, "--problem", "independent",
                         "--r", "1", "--k", "2")
    assert code == 0


def test_usage_errors_exit_2():
    code, doc, _ = run_cli("game", PATH5, "--connector", "random")
    assert code == 2 and doc["error"]["code"] == "precondition"
    code, doc, _ = run_cli("eval", PATH5, "--formula", "exists . true")
    assert code == 2 and doc["error"]["code"] == "formula_parse"
    code, doc, _ = run_cli("eval", PATH5, "--formula", "E(x,y)", "--env", "x=0")
    assert code == 2 and doc["error"]["code"] == "formula_scope"
    code, doc, _ = run_cli("eval", PATH5)
    assert code == 2 and doc["error"]["code"] == "precondition"
    code, doc, _ = run_cli("wcol", "no_such_file.el", "--r", "1")
    assert code == 2 and doc["error"]["code"] == "graph_input"
    # argparse handles a missing required flag itself
    proc = subprocess.run([sys.executable, "-m", "sparsekit.cli",
                           "density", K5, "--r", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_cap_exit_3():
    code, doc, _ = run_cli("treedepth", '{"family":"grid","rows":5,"cols":5}')
    assert code == 3
    assert doc["error"]["code"] == "capability"
    assert doc["result"] is None


def test_stall_exit_4(monkeypatch, capsys):
    def boom(*a, **k):
        raise AlgorithmStallError("exchange step failed to shrink X",
                                  state={"n_theory": 1})

    monkeypatch.setattr(cli, "balanced_separator", boom)
    code = cli.run(["separator", PATH5, "--r", "1", "--eps", "0.5"])
    assert code == 4
    doc = json.loads(capsys.readouterr().out)
    assert doc["error"]["code"] == "stall"


def test_gen_writes_file_with_matching_digest(tmp_path):
    out = tmp_path / "g.el"
    code, doc, _ = run_cli("gen", CYCLE7, "--to", str(out))
    assert code == 0
    assert doc["result"]["n"] == 7 and doc["result"]["m"] == 7
    spec_digest = doc["input"]["digest"]
    code, doc2, _ = run_cli("col", str(out))
    assert code == 0
    assert doc2["input"]["digest"] == spec_digest


def test_out_flag_duplicates_stdout(tmp_path):
    out = tmp_path / "doc.json"
    proc = subprocess.run([sys.executable, "-m", "sparsekit.cli",
                           "col", PATH5, "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert out.read_text() == proc.stdout


def test_eval_formula_env():
    code, doc, _ = run_cli("eval", PATH5, "--formula", "E(x,y)", "--env", "x=0,y=1")
    assert code == 0 and doc["result"]["value"] is True
    code, doc, _ = run_cli("eval", PATH5, "--formula", "dist(x,y) <= 2",
                           "--env", "x=0,y=4")
    assert code == 0 and doc["result"]["value"] is False
    code, doc, _ = run_cli("eval", PATH5, "--formula",
                           "exists x . P(x)", "--marked", "3")
    assert code == 0 and doc["result"]["value"] is True


def test_eval_sentence_inline():
    code, doc, _ = run_cli("eval", CYCLE7, "--sentence",
                           '{"k":2,"r":1,"chi":"true"}')
    assert code == 0
    assert doc["result"]["value"] is True
    assert doc["result"]["witnesses"] == [0, 3]
    assert doc["certificate"]["sentence"] == {"k": 2, "r": 1, "chi": "true"}
    code, doc, _ = run_cli("eval", K5, "--sentence",
                           '{"k":2,"r":1,"chi":"true"}', "--expect")
    assert code == 1 and doc["result"]["value"] is False


def test_solve_dominating_modes():
    code, doc, _ = run_cli("solve", STAR10, "--problem", "dominating", "--r", "1")
    assert code == 0 and doc["result"]["vertices"] == [0]
    code, doc, _ = run_cli("solve", '{"family":"path","n":40}', "--problem",
                           "dominating", "--r", "1", "--mode", "greedy")
    assert code == 0 and doc["result"]["size"] >= 14


def test_game_replay(tmp_path):
    code, doc, _ = run_cli("game", K5, "--kind", "treedepth",
                           "--splitter", "exhaustive", "--connector", "exhaustive")
    assert code == 0
    cert = doc["certificate"]
    path = tmp_path / "t.json"
    path.write_text(json.dumps(cert))
    code, doc, _ = run_cli("game", K5, "--replay", str(path))
    assert code == 0 and doc["result"]["violations"] == []
    cert["winner"] = "connector"
    path.write_text(json.dumps(cert))
    code, doc, _ = run_cli("game", K5, "--replay", str(path))
    assert code == 1 and doc["result"]["violations"]


def test_game_replay_accepts_full_out_document(tmp_path):
    out = tmp_path / "run.json"
    code, _, _ = run_cli("game", K5, "--kind", "treedepth", "--splitter",
                         "exhaustive", "--connector", "exhaustive",
                         "--out", str(out))
    assert code == 0
    code, doc, _ = run_cli("game", K5, "--replay", str(out))
    assert code == 0 and doc["result"]["violations"] == []
    # structurally wrong JSON is a usage error, not a crash
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"not": "a transcript"}))
    code, doc, _ = run_cli("game", K5, "--replay", str(bad))
    assert code == 2 and doc["error"]["code"] == "precondition"


def test_sweep(tmp_path):
    config = {
        "families": [
            {"name": "p6", "spec": {"family": "path", "n": 6}},
            {"name": "c5", "spec": {"family": "cycle", "n": 5}},
            {"name": "broken", "spec": {"family": "nope"}},
        ],
        "r": [1],
        "operations": ["wcol", "cover", "density"],
    }
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(config))
    code, doc, _ = run_cli("sweep", str(path))
    assert code == 0
    rows = doc["result"]["rows"]
    # 2 families x 1 radius x 3 ops, plus one family-level error row
    assert len(rows) == 7
    assert any(r.get("family") == "broken" and "error" in r for r in rows)
    # density rows fail per-row without a top-level seed, others carry values
    for r in rows:
        if r.get("op") == "density":
            assert "seed" in r["error"]
        elif "op" in r:
            assert isinstance(r["value"], int)
    config["seed"] = 11
    path.write_text(json.dumps(config))
    code, doc, _ = run_cli("sweep", str(path))
    assert code == 0
    assert all("error" not in r for r in doc["result"]["rows"] if r.get("op"))


def test_dimacs_input(tmp_path):
    path = tmp_path / "g.col"
    path.write_text("c tiny\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
    code, doc, _ = run_cli("col", str(path))
    assert code == 0
    assert doc["input"]["n"] == 4 and doc["input"]["m"] == 3
    assert doc["result"]["value"] == 2
