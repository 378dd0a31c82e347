import json
import subprocess
import sys

import pytest

from ramseykit.cli import main
from ramseykit.core import Coloring, is_k_trapped
from ramseykit.files import CSV_HEADER, load_coloring, save_coloring
from ramseykit.generators import random_uniform_coloring


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def succ_file(tmp_path, succ_coloring):
    path = tmp_path / "succ.json"
    save_coloring(succ_coloring, path)
    return str(path)


@pytest.fixture
def constant_file(tmp_path):
    path = tmp_path / "const.json"
    save_coloring(Coloring(2, 6, (4,) * 15), path)
    return str(path)


# --- witness --------------------------------------------------------------------

def test_witness_free(succ_file, capsys):
    code, out, err = run_cli(["witness", succ_file, "--spec", "free"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"] == {"size": 3, "witness": [0, 2, 4],
                             "palette": [1, 3, 5], "certified": True}
    assert doc["command"] == "witness"
    assert "witness size 3" in err


def test_witness_achromatic_constant(constant_file, capsys):
    code, out, _ = run_cli(
        ["witness", constant_file, "--spec", "achromatic", "--d", "1"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["size"] == 6


def test_witness_thin_requires_universe(succ_file, capsys):
    code, _, err = run_cli(["witness", succ_file, "--spec", "thin"], capsys)
    assert code == 2
    assert "universe" in err


def test_witness_thin_with_universe(succ_file, capsys):
    # values 1..6 never cover {1..6} on a proper subset, and the full
    # domain palette equals the universe, so the best witness drops one
    code, out, _ = run_cli(
        ["witness", succ_file, "--spec", "thin",
         "--universe", "1,2,3,4,5,6"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["size"] == 5
    assert doc["result"]["witness"] == [0, 1, 2, 3, 4]


def test_witness_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"r": 2, "n": 4, "values": [0, 0]}')
    code, out, err = run_cli(["witness", str(path), "--spec", "free"], capsys)
    assert code == 2
    assert out == ""
    assert "values length" in err


def test_witness_budget_exhaustion_exit_three(tmp_path, capsys):
    path = tmp_path / "wide.json"
    save_coloring(random_uniform_coloring(2, 12, 2, 9), path)
    code, out, _ = run_cli(
        ["witness", str(path), "--spec", "free", "--node-limit", "3"], capsys)
    assert code == 3
    doc = json.loads(out)  # lower bound still printed
    assert doc["result"]["certified"] is False


def test_witness_determinism_across_threads(succ_file, capsys):
    outputs = set()
    for threads in ("1", "8", "1"):
        _, out, _ = run_cli(
            ["witness", succ_file, "--spec", "free", "--threads", threads],
            capsys)
        outputs.add(out)
    assert len(outputs) == 1


# --- number ---------------------------------------------------------------------

def test_number_pigeonhole(capsys, tmp_path):
    cex = tmp_path / "cex.json"
    code, out, _ = run_cli(
        ["number", "-r", "1", "-c", "2", "--spec", "homogeneous", "-m", "2",
         "--counterexample-out", str(cex)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["number"] == 3
    assert doc["result"]["counterexample_n"] == 2
    assert load_coloring(cex).values == (1, 0)


def test_number_infeasible_exit_four(capsys):
    code, out, err = run_cli(
        ["number", "-r", "2", "-c", "2", "--spec", "homogeneous", "-m", "3",
         "--limit", "100"], capsys)
    assert code == 4
    assert out == ""
    assert "1024" in err  # the refused estimate


# --- reduce ---------------------------------------------------------------------

def test_reduce_truncate(tmp_path, capsys):
    src = tmp_path / "ten.json"
    save_coloring(random_uniform_coloring(2, 6, 10, 3), src)
    out_path = tmp_path / "trunc.json"
    code, out, _ = run_cli(
        ["reduce", str(src), "--kind", "truncate", "--d", "3",
         "--out", str(out_path)], capsys)
    assert code == 0
    g = load_coloring(out_path)
    assert g.color_count == 4
    assert max(g.values) <= 3
    assert json.loads(out)["result"]["outputs"][0]["colorCount"] == 4


def test_reduce_rainbow2free_rejects_unbounded(constant_file, capsys):
    code, out, err = run_cli(
        ["reduce", constant_file, "--kind", "rainbow2free"], capsys)
    assert code == 2
    assert out == ""
    assert "color 4" in err  # offending color named


def test_reduce_trapdecompose_writes_components(tmp_path, capsys):
    src = tmp_path / "f.json"
    save_coloring(random_uniform_coloring(2, 6, 4, 8), src)
    prefix = tmp_path / "out"
    code, out, _ = run_cli(
        ["reduce", str(src), "--kind", "trapdecompose",
         "--out-prefix", str(prefix)], capsys)
    assert code == 0
    for k in range(3):
        g = load_coloring(f"{prefix}_f{k}.json")
        assert is_k_trapped(g, k)
    assert len(json.loads(out)["result"]["outputs"]) == 3


# --- audit ----------------------------------------------------------------------

def test_audit_schroder(capsys):
    code, out, err = run_cli(["audit", "schroder", "--max", "20"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["pass"] is True
    assert doc["result"]["summary"]["values"][:7] == [1, 2, 6, 22, 90, 394, 1806]
    assert "PASS" in err


def test_audit_gap(capsys):
    code, out, _ = run_cli(["audit", "gap", "--max", "12"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["pass"] is True


def test_audit_ladder_b(capsys):
    code, out, _ = run_cli(
        ["audit", "ladderB", "--stem-len", "2", "-k", "1", "-c", "2",
         "--depth", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["summary"]["exponents"][:2] == [5, 7]


def test_audit_counting_small(capsys):
    code, out, _ = run_cli(
        ["audit", "counting", "--trials", "5", "--seed", "7"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["summary"]["satisfied"] == 5


def test_audit_ladder_a_small(capsys):
    code, out, _ = run_cli(
        ["audit", "ladderA", "-r", "2", "--depth", "4", "--trials", "2",
         "--seed", "1"], capsys)
    assert code == 0
    summary = json.loads(out)["result"]["summary"]
    assert summary["leaves"] == 2048


def test_audit_tree_measure(capsys):
    code, out, _ = run_cli(
        ["audit", "tree-measure", "--trials", "5", "--seed", "3"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["pass"] is True


# --- generate / record / csv -------------------------------------------------------

def test_generate_roundtrip(tmp_path, capsys):
    path = tmp_path / "gen.json"
    args = ["generate", "--kind", "b-bounded", "-r", "2", "-n", "8",
            "--b", "2", "--seed", "11", "--out", str(path)]
    code, out1, _ = run_cli(args, capsys)
    assert code == 0
    f = load_coloring(path)
    assert f.r == 2 and f.n == 8
    _, out2, _ = run_cli(args, capsys)
    assert out1 == out2


def test_record_and_csv(tmp_path, capsys):
    record = tmp_path / "run.json"
    rows = tmp_path / "rows.csv"
    code, out, _ = run_cli(
        ["audit", "gap", "--max", "5", "--record", str(record),
         "--csv", str(rows)], capsys)
    assert code == 0
    rec = json.loads(record.read_text())
    assert "wall_time_ms" in rec
    payload = json.loads(out)
    assert {k: v for k, v in rec.items() if k != "wall_time_ms"} == payload
    lines = rows.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 6  # header + five rows


def test_bad_arguments_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["witness"])  # missing file and spec
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ramseykit", "audit", "gap", "--max", "3"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["pass"] is True
