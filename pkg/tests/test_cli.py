from fractions import Fraction as F
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from bicenter import format_instance, parse_instance, read_instance
from bicenter import cli, graph_solver
from bicenter.cli import main, reevaluate, run_verify, solution_json
from bicenter.solve import solve

from conftest import path, small_instances


@pytest.fixture
def unit_file(tmp_path, unit_path):
    p = tmp_path / "unit.txt"
    p.write_text(format_instance(unit_path))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_text(capsys, unit_file):
    code, out, _ = run(capsys, "solve", unit_file)
    assert code == 0
    assert "lambda: 1/2 (0.5)" in out
    assert "pair (0, 3)" in out


def test_solve_json(capsys, unit_file):
    code, out, _ = run(capsys, "solve", unit_file, "--format", "json", "--deterministic")
    report = json.loads(out)
    assert code == 0
    assert report["lambda"] == {"num": 1, "den": 2}
    assert set(report) == {"lambda", "q1", "q2", "assignment", "solver"}
    assert report["solver"] == "tree-unweighted"
    assert reevaluate(read_instance(unit_file), report) == F(1, 2)


def test_forced_solvers_agree(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text(format_instance(path([2, 1, 3, 1, 1, 2], pairs=[(0, 5), (1, 3)])))
    lams = set()
    for solver in ("graph", "tree"):
        code, out, _ = run(capsys, "solve", str(p), "--solver", solver, "--format", "json")
        assert code == 0
        lams.add(json.dumps(json.loads(out)["lambda"]))
    assert len(lams) == 1


def test_decimal_display_uses_twelve_digits(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text(format_instance(path([2, 1, 1, 1])))
    code, out, _ = run(capsys, "solve", str(p))
    assert code == 0 and "lambda: 2/3 (0.666666666667)" in out


def test_malformed_file(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2 1 1\n1\n1\n0 1 zz\n0 1\n")
    code, _, err = run(capsys, "solve", str(p))
    assert code == 2 and "line 4" in err


def test_invariant_violations_are_input_errors(capsys, tmp_path, triangle):
    p = tmp_path / "tri.txt"
    p.write_text(format_instance(triangle))
    code, _, err = run(capsys, "solve", str(p), "--solver", "tree")
    assert code == 2 and "not a tree" in err
    code, _, _ = run(capsys, "solve", str(tmp_path / "missing.txt"))
    assert code == 2


def test_internal_failure_exit_code(capsys, unit_file, monkeypatch):
    def broken(instance, solver=None):
        raise cli.SolverMismatch("boom")

    monkeypatch.setattr(cli, "solve", broken)
    code, _, err = run(capsys, "solve", unit_file)
    assert code == 3 and "boom" in err


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for target in (a, b):
        assert main(["gen", "--seed", "1", "--n", "6", "--kind", "tree", "-o", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_spanning_tree_and_zero_weights(tmp_path):
    p = tmp_path / "g.txt"
    assert main(["gen", "--seed", "3", "--n", "7", "--m", "6", "--kind", "connected-graph",
                 "--weights", "0..0", "-o", str(p)]) == 0
    inst = read_instance(str(p))
    assert inst.is_tree
    assert solve(inst).lam == 0


def test_gen_rejects_impossible_sizes(capsys):
    code, _, err = run(capsys, "gen", "--seed", "1", "--n", "6", "--m", "3", "--kind", "connected-graph")
    assert code == 2 and "m must lie" in err
    with pytest.raises(SystemExit):
        main(["gen", "--seed", "1", "--n", "6", "--kind", "tree", "--weights", "1..2..3"])


def test_gen_to_stdout(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "2", "--n", "4", "--kind", "tree")
    assert code == 0 and parse_instance(out).n == 4


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", "1..12", "--max-n", "6", "--jobs", "2")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[-1] == "12 cases, 0 mismatches"
    assert [int(line.split()[1].rstrip(":")) for line in lines[:-1]] == list(range(1, 13))


def test_verify_empty_range(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", "5..4")
    assert code == 0 and "0 cases" in out


def test_verify_catches_an_off_by_one(monkeypatch):
    real = graph_solver.feasibility_graph
    monkeypatch.setattr(graph_solver, "feasibility_graph", lambda inst, lam: real(inst, lam + 1))
    buf = io.StringIO()
    assert run_verify(list(range(1, 9)), max_n=6, jobs=1, out=buf) == 1
    text = buf.getvalue()
    assert "MISMATCH" in text and "counterexample" in text and "reproduce with: --seeds" in text


def test_module_entry_point(unit_file):
    res = subprocess.run([sys.executable, "-m", "bicenter", "solve", unit_file, "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["lambda"] == {"num": 1, "den": 2}


@settings(max_examples=30)
@given(small_instances())
def test_json_round_trip(inst):
    sol = solve(inst)
    report = json.loads(json.dumps(solution_json(inst, sol)))
    assert F(report["lambda"]["num"], report["lambda"]["den"]) == sol.lam
    assert reevaluate(inst, report) == sol.lam
