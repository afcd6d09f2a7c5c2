import json
import subprocess
import sys
from importlib import resources

import pytest

from bipcontract.cli import main, parse_witness
from bipcontract.errors import GraphParseError
from bipcontract.graph import parse_graph

DATA = resources.files("bipcontract.data")


def data(name):
    return str(DATA.joinpath(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_c5(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", data("c5.txt"), "--k", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "YES"
    assert len([l for l in lines if l.startswith("e ")]) == 1
    assert len([l for l in lines if l.startswith("v ")]) == 5
    witness = tmp_path / "w.txt"
    witness.write_text(out)
    assert run(capsys, "verify", data("c5.txt"), str(witness), "--k", "1")[0] == 0


def test_solve_k4_no(capsys):
    code, out, _ = run(capsys, "solve", data("k4.txt"), "--k", "1")
    assert code == 1 and out.strip() == "NO"


def test_structured_output(capsys):
    code, out, _ = run(capsys, "solve", data("k4.txt"), "--k", "2", "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["answer"] == "YES" and len(rec["witness"]) == 2
    assert set(rec["coloring"]) == {"1", "2", "3", "4"}


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.txt"), "--k", "1")
    assert code == 2 and "error" in err


def test_parse_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p edge 2 1\ne 1 1\n")
    code, _, err = run(capsys, "solve", str(bad), "--k", "1")
    assert code == 2 and "line 2" in err


def test_resource_error_exit_3(capsys):
    code, _, err = run(capsys, "oracle", data("petersen.txt"), "--k", "3", "--work-limit", "10")
    assert code == 3 and "resource" in err
    code, _, _ = run(capsys, "solve", data("petersen.txt"), "--k", "3", "--work-limit", "10")
    assert code == 3


def test_verify_rejections(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    code, out, _ = run(capsys, "verify", data("c5.txt"), str(empty), "--k", "1")
    assert code == 1 and "not bipartite" in out
    bogus = tmp_path / "bogus.txt"
    bogus.write_text("e 1 3\n")
    code, out, _ = run(capsys, "verify", data("c5.txt"), str(bogus), "--k", "1")
    assert code == 1 and "edge 1 3 is not in the graph" in out
    big = tmp_path / "big.txt"
    big.write_text("e 1 2\ne 2 3\n")
    code, out, _ = run(capsys, "verify", data("c5.txt"), str(big), "--k", "1")
    assert code == 1 and "budget" in out


def test_verify_with_coloring(capsys, tmp_path):
    col = tmp_path / "col.txt"
    code, out, _ = run(capsys, "solve", data("k4.txt"), "--k", "2", "--coloring-out", str(col))
    w = tmp_path / "w.txt"
    w.write_text(out)
    assert run(capsys, "verify", data("k4.txt"), str(w), "--k", "2", "--coloring", str(col))[0] == 0
    code, out, _ = run(capsys, "verify", data("k4.txt"), str(w), "--k", "1", "--coloring", str(col))
    assert code == 1 and "coloring has cost 2" in out


def test_parse_witness():
    assert parse_witness("YES\ne 1 2\nv 1 1\nc note\n") == [(1, 2)]
    with pytest.raises(GraphParseError):
        parse_witness("e 1\n")
    with pytest.raises(GraphParseError):
        parse_witness("x 1 2\n")


def test_oracle_and_solve_agree_on_bundled_files(capsys):
    for name in ("c5.txt", "k4.txt", "petersen.txt"):
        for k in range(4):
            a = run(capsys, "solve", data(name), "--k", str(k))[0]
            b = run(capsys, "oracle", data(name), "--k", str(k))[0]
            assert a == b


def test_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "cycle", "5")
    g = parse_graph(out)
    assert code == 0 and g.n == 5 and g.m == 5 and all(g.degree(v) == 2 for v in g.vertices)
    first = run(capsys, "gen", "random", "8", "0.4", "--seed", "7")[1]
    assert first == run(capsys, "gen", "random", "8", "0.4", "--seed", "7")[1]
    target = tmp_path / "p.txt"
    assert run(capsys, "gen", "petersen", "-o", str(target))[0] == 0
    assert parse_graph(target.read_text()).m == 15
    assert run(capsys, "gen", "cycle")[0] == 2
    assert run(capsys, "gen", "cycle", "x")[0] == 2


def test_tw(capsys):
    code, out, _ = run(capsys, "tw", data("petersen.txt"), "--strategy", "min-fill")
    assert code == 0 and out.startswith("s td ")
    code, out, _ = run(capsys, "tw", data("c5.txt"), "--format", "structured")
    assert json.loads(out)["width"] == 2


def test_impsep(capsys, tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
    code, out, _ = run(capsys, "impsep", str(path), "1", "3", "1")
    assert code == 0 and out == "1 2\n"


def test_diagnostics_on_stderr(capsys):
    code, _, err = run(capsys, "solve", data("k4.txt"), "--k", "2", "--diagnostics")
    records = [json.loads(l) for l in err.splitlines()]
    assert code == 0 and {r["phase"] for r in records} >= {"cheaper", "extension"}


def test_bench_smoke(capsys):
    code, out, _ = run(capsys, "bench", "--suite", "smoke")
    summary = json.loads(out.splitlines()[-1])
    assert code == 0 and summary["within_budget"] and not summary["wrong"]


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "bipcontract", "solve", data("c5.txt"), "--k", "0"],
        capture_output=True, text=True,
    )
    assert out.returncode == 1 and out.stdout.strip() == "NO"
