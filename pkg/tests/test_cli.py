import json
import subprocess
import sys

import pytest

from vnepkit.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def cnf(tmp_path):
    def write(text, name="f.cnf"):
        path = tmp_path / name
        path.write_text(text)
        return path
    return write


WORKED = "c worked\np cnf 4 3\n1 2 3 0\n-1 2 4 0\n2 -3 4 0\n"
CONTRADICTION = "p cnf 1 2\n1 0\n-1 0\n"


def test_generate_solve_validate_decode(capsys, cnf, tmp_path, worked_formula):
    inst = tmp_path / "g.json"
    code, doc = run_json(capsys, "generate", cnf(WORKED), "--variant", "ve", "--out", inst)
    assert code == 0
    assert doc["substrate_nodes"] == 21 and doc["request_edges"] == 3
    assert doc["lambda"] == "1/6"
    registry = tmp_path / "g.registry.json"
    assert registry.exists()

    mapping = tmp_path / "m.json"
    code, doc = run_json(capsys, "solve", inst, "--out", mapping)
    assert code == 0 and doc["status"] == "feasible"

    code, doc = run_json(capsys, "validate", inst, mapping)
    assert code == 0 and doc["ok"]

    code, doc = run_json(capsys, "decode", inst, registry, mapping)
    assert code == 0 and doc["satisfies"]
    assert doc["v_line"].startswith("v ") and doc["v_line"].endswith(" 0")

    code, out = run(capsys, "decode", inst, registry, mapping, "--v-line")
    assert out.strip() == doc["v_line"]


def test_solve_contradiction_exits_one(capsys, cnf, tmp_path):
    inst = tmp_path / "c.json"
    assert run(capsys, "generate", cnf(CONTRADICTION), "--variant", "en", "--out", inst)[0] == 0
    code, doc = run_json(capsys, "solve", inst)
    assert code == 1 and doc["status"] == "infeasible" and "mapping" not in doc


def test_solve_resource_limit_exits_three(capsys, cnf, tmp_path):
    inst = tmp_path / "g.json"
    run(capsys, "generate", cnf(WORKED), "--variant", "ve", "--out", inst)
    code, doc = run_json(capsys, "solve", inst, "--max-nodes", "1")
    assert code == 3 and doc["status"] == "resource_limit"


def test_validate_reports_violations(capsys, cnf, tmp_path):
    inst = tmp_path / "g.json"
    run(capsys, "generate", cnf(WORKED), "--variant", "ve", "--out", inst)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "format_version": 1,
        "node_map": {"v1": "a1_TTF", "v2": "a1_TTF", "v3": "a3_TFF"},
        "edge_map": {"v1->v2": [], "v1->v3": [["a1_TTF", "a3_TFF"]],
                     "v2->v3": [["a1_TTF", "a3_TFF"]]},
    }))
    code, doc = run_json(capsys, "validate", inst, bad)
    assert code == 1 and not doc["ok"]
    assert doc["violations"]


def test_generate_approx_parameters(capsys, cnf, tmp_path):
    code, doc = run_json(capsys, "generate", cnf(WORKED), "--variant", "nl",
                         "--gamma-eps", "1/10", "--out", tmp_path / "nl.json")
    assert code == 0 and doc["parameters"]["gamma"] == "19/10"
    code, doc = run_json(capsys, "generate", cnf(WORKED), "--variant", "ve",
                         "--alpha-eps", "1/10", "--out", tmp_path / "ve.json")
    assert code == 0 and doc["lambda"] == "1/120"


@pytest.mark.parametrize("argv", [
    ["--variant", "xyz"],
    ["--variant", "en", "--alpha-eps", "1/10"],
    ["--variant", "ve", "--alpha-eps", "one"],
])
def test_generate_input_errors(capsys, cnf, tmp_path, argv):
    code, doc = run_json(capsys, "generate", cnf(WORKED), *argv, "--out", tmp_path / "x.json")
    assert code == 2 and "error" in doc


def test_generate_decomposable_lists_components(capsys, cnf, tmp_path):
    code, doc = run_json(capsys, "generate", cnf("p cnf 4 2\n1 2 0\n3 4 0\n"),
                         "--variant", "ve", "--out", tmp_path / "x.json")
    assert code == 2 and len(doc["components"]) == 2
    assert not (tmp_path / "x.json").exists()


def test_missing_file_and_bad_dimacs(capsys, cnf, tmp_path):
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "sat", cnf("p cnf 2 1\n1 -1 0\n"))[0] == 2


def test_emit_ip(capsys, cnf, tmp_path):
    inst = tmp_path / "g.json"
    run(capsys, "generate", cnf(WORKED), "--variant", "ve", "--out", inst)
    code, out = run(capsys, "emit-ip", inst)
    assert code == 0 and "Maximize" in out.splitlines()
    assert "Subject To" in out and out.rstrip().endswith("End")
    code, doc = run_json(capsys, "emit-ip", inst, "--out", tmp_path / "g.lp")
    assert code == 0 and doc["variables"] == 1 + 3 * 21 + 3 * 37
    assert (tmp_path / "g.lp").read_text() == out


def test_sat_and_normalize(capsys, cnf):
    code, doc = run_json(capsys, "sat", cnf(WORKED))
    assert code == 0 and doc["satisfiable"]
    assert doc["check_4p3c"]["euler_bound"] is True
    assert run_json(capsys, "sat", cnf(CONTRADICTION))[0] == 1
    code, doc = run_json(capsys, "normalize", cnf("p cnf 4 3\n1 2 0\n3 4 0\n2 3 0\n"))
    assert code == 0 and not doc["decomposed"]
    assert doc["components"][0]["clause_order"] == [1, 3, 2]


def test_reduce_edp(capsys, tmp_path):
    src = tmp_path / "edp.json"
    src.write_text(json.dumps({
        "nodes": ["s1", "s2", "m", "n", "t1", "t2"],
        "edges": [["s1", "m"], ["s2", "m"], ["m", "n"], ["n", "t1"], ["n", "t2"]],
        "commodities": [["s1", "t1"], ["s2", "t2"]],
        "congestion": 1,
    }))
    for variant in ("en", "ve"):
        out = tmp_path / f"{variant}.json"
        code, doc = run_json(capsys, "reduce-edp", src, "--variant", variant, "--out", out)
        assert code == 0
        assert run_json(capsys, "solve", out)[0] == 1
    src.write_text(json.dumps({"nodes": ["a"]}))
    assert run_json(capsys, "reduce-edp", src, "--variant", "en", "--out", tmp_path / "x")[0] == 2


def test_crosscheck_is_deterministic(capsys):
    argv = ("crosscheck", "-N", "4", "-M", "4", "--samples", "15", "--seed", "3")
    code, first = run_json(capsys, *argv)
    assert code == 0 and first["formulas"] == 15 and not first["disagreements"]
    assert all(row["disagree"] == 0 for row in first["matrix"].values())
    assert run_json(capsys, *argv)[1] == first


def test_crosscheck_empty_and_limits(capsys):
    code, doc = run_json(capsys, "crosscheck", "--samples", "0")
    assert code == 0 and doc["formulas"] == 0
    code, doc = run_json(capsys, "crosscheck", "--samples", "3", "--variants", "ve",
                         "--max-nodes", "1")
    assert code == 3 and doc["resource_limits"] > 0


def test_crosscheck_variant_subset(capsys):
    code, doc = run_json(capsys, "crosscheck", "--samples", "5", "--variants", "en,nl",
                         "--gamma-eps", "1/10")
    assert code == 0 and doc["variants"] == ["E|N", "-|NL"]


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "vnepkit", "crosscheck", "--samples", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["formulas"] == 2


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2
