import json
import subprocess
import sys

import pydot
import pytest

from cluspt.cli import main
from cluspt.io import serialize_instance
from cluspt.reductions import all_sign_patterns_formula, gen_random_clustered
from cluspt.io import write_dimacs


@pytest.fixture
def p6_file(tmp_path, p6):
    path = tmp_path / "p6.json"
    path.write_bytes(serialize_instance(p6))
    return str(path)


def run(*argv):
    return main([str(a) for a in argv])


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_solve_fpt2_on_p6(p6_file, tmp_path):
    out = tmp_path / "sol.json"
    assert run("solve", "--solver", "fpt2", "--input", p6_file, "--output", out) == 0
    doc = read_json(out)
    assert doc["cost"] == 10 and doc["solver"] == "fpt2" and doc["problem"] == "clubfs"


@pytest.mark.parametrize("solver", ["fpt1", "oracle", "approx"])
def test_other_solvers_on_p6(p6_file, tmp_path, solver):
    out = tmp_path / "sol.json"
    assert run("solve", "--solver", solver, "--input", p6_file, "--output", out) == 0
    doc = read_json(out)
    assert doc["cost"] == 10
    if solver == "approx":
        assert doc["gamma"] == 1 and doc["ratio_certificate"]["rho"] == "2"


def test_approx_on_weighted_is_usage_error(tmp_path, capsys):
    path = tmp_path / "w.json"
    path.write_bytes(serialize_instance(gen_random_clustered(1, 6, 8, 2, 4)))
    assert run("solve", "--solver", "approx", "--input", path) == 1
    assert "approx requires unweighted" in capsys.readouterr().err


def test_oracle_budget_is_usage_error(tmp_path, capsys):
    path = tmp_path / "big.json"
    path.write_bytes(serialize_instance(gen_random_clustered(0, 12, 30, 3)))
    assert run("solve", "--solver", "oracle", "--input", path) == 1
    assert "too large for oracle" in capsys.readouterr().err


def test_infeasible_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2]], "clusters": [[0, 2], [1]], "source": 0}))
    assert run("solve", "--input", path) == 2
    assert "infeasible instance" in capsys.readouterr().err


def test_internal_budget_exit_code(monkeypatch, p6_file):
    from cluspt.exact import fpt2

    monkeypatch.setattr(fpt2, "MAX_ROOT_VECTORS", 1)
    assert run("solve", "--solver", "fpt2", "--full-roots", "--input", p6_file) == 3


def test_usage_errors(p6_file, tmp_path):
    assert run("solve", "--solver", "nope", "--input", p6_file) == 1
    assert run("solve", "--input", tmp_path / "missing.json") == 1
    assert run("solve", "--solver", "fpt2", "--problem", "clusp", "--input", p6_file) == 1
    assert run("solve", "--solver", "clusp-dp", "--input", p6_file) == 1
    assert run("solve", "--threads", 0, "--input", p6_file) == 1
    bad = tmp_path / "neg.json"
    bad.write_text('{"n": 2, "weighted": true, "edges": [[0, 1, -1]], "clusters": [[0], [1]], "source": 0}')
    assert run("solve", "--input", bad) == 1


def test_clusp_solve(p6_file, tmp_path):
    out = tmp_path / "path.json"
    assert run("solve", "--solver", "clusp-dp", "--target", 5, "--input", p6_file, "--output", out) == 0
    assert read_json(out) == {"source": 0, "target": 5, "length": 3, "path": [0, 2, 3, 5]}


def test_clusp_unreachable(tmp_path):
    path = tmp_path / "cut.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1]], "clusters": [[0], [1], [2]], "source": 0}))
    out = tmp_path / "path.json"
    assert run("solve", "--solver", "clusp-dp", "--target", 2, "--input", path, "--output", out) == 2
    assert read_json(out)["path"] is None


def test_fpt1_trace_file(p6_file, tmp_path):
    trace = tmp_path / "trace.txt"
    assert run("solve", "--solver", "fpt1", "--fast-convolution", "--trace", trace, "--input", p6_file) == 0
    assert trace.read_text().startswith("# k=2 b=3")


def test_gen_random_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run("gen", "--seed", 5, "--n", 9, "--m", 12, "--k", 3, "--max-weight", 4, "--output", out) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_json(a)["weighted"] is True


def test_gen_gadget_with_certificate(tmp_path):
    cnf = tmp_path / "phi.cnf"
    cnf.write_text(write_dimacs(all_sign_patterns_formula()))
    out, cert = tmp_path / "g.json", tmp_path / "cert.json"
    assert run("gen", "--kind", "clubfs-sat", "--input", cnf, "--output", out, "--certificate", cert) == 0
    doc = read_json(cert)
    assert doc["unsat_threshold"] == 3 * 3 + 8 * 8 + 3
    assert read_json(out)["n"] == 3 * 8 + 2 * 3 + 1


def test_gen_x3c_gadget(tmp_path):
    x3c = tmp_path / "x3c.json"
    x3c.write_text(json.dumps({"items": 3, "sets": [[0, 1, 2]]}))
    out, cert = tmp_path / "g.json", tmp_path / "cert.json"
    assert run("gen", "--kind", "clusp-x3c", "--M", 40, "--input", x3c, "--output", out, "--certificate", cert) == 0
    target = read_json(cert)["target"]
    sol = tmp_path / "sol.json"
    assert run("solve", "--solver", "clusp-dp", "--target", target, "--input", out, "--output", sol) == 0
    assert read_json(sol)["length"] == 6


def test_verify_gadgets_fixed_size(tmp_path):
    out = tmp_path / "report.json"
    code = run("verify", "--only", "gadgets", "--eta", 3, "--mu", 8, "--formulas", 10, "--output", out)
    doc = read_json(out)
    assert code == 0 and doc["ok"] and doc["failed"] == 0
    assert any("dichotomy" in r["check"] for r in doc["results"])


def test_verify_negative_control(tmp_path):
    out = tmp_path / "report.json"
    code = run("verify", "--only", "approx", "--count", 20, "--corrupt-approx", "--output", out)
    assert code == 4
    assert read_json(out)["failed"] > 0


def test_verify_unknown_suite():
    assert run("verify", "--only", "everything") == 1


def test_export_dot(p6_file, tmp_path):
    out = tmp_path / "p6.dot"
    assert run("export-dot", "--solver", "fpt2", "--input", p6_file, "--output", out) == 0
    (graph,) = pydot.graph_from_dot_data(out.read_text())
    assert sorted(sg.get_name() for sg in graph.get_subgraphs()) == ["cluster_0", "cluster_1"]
    assert sum(e.get("style") == "bold" for e in graph.get_edges()) == 5


def test_export_dot_from_solution_file(p6_file, tmp_path):
    sol, out = tmp_path / "sol.json", tmp_path / "p6.dot"
    run("solve", "--solver", "oracle", "--input", p6_file, "--output", sol)
    assert run("export-dot", "--solution", sol, "--input", p6_file, "--output", out) == 0
    assert "subgraph cluster_1" in out.read_text()


def test_stdout_bytes_are_reproducible(p6_file):
    cmd = [sys.executable, "-m", "cluspt", "solve", "--solver", "approx", "--input", p6_file]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["cost"] == 10
