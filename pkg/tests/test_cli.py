import io
import json

import pytest

from zenoqaoa import cnf
from zenoqaoa.cli import build_parser, main

PHI = "p cnf 2 2\n-1 -2 0\n1 2 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def phi_path(tmp_path):
    path = tmp_path / "phi.cnf"
    path.write_text(PHI)
    return str(path)


def test_gen_sat_deterministic(capsys):
    code, a, _ = run(capsys, "gen-sat", "--n", "10", "--m", "40", "--seed", "7")
    assert code == 0
    assert a == run(capsys, "gen-sat", "--n", "10", "--m", "40", "--seed", "7")[1]
    f = cnf.parse_dimacs(a)
    assert f.n == 10 and f.m == 40
    assert f == cnf.random_3sat(10, 40, 7)


def test_gen_sat_json(capsys):
    code, out, _ = run(capsys, "gen-sat", "--n", "5", "--m", "3", "--seed", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1 and len(data["clauses"]) == 3


def test_generators_require_seed(capsys):
    with pytest.raises(SystemExit) as e:
        main(["gen-sat", "--n", "4", "--m", "4"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["gen-coord", "--n", "4", "--p", "0.5"])
    assert e.value.code == 1


def test_gen_coord_with_graph(capsys, tmp_path):
    gpath = tmp_path / "g.txt"
    code, out, _ = run(capsys, "gen-coord", "--n", "8", "--p", "0.5", "--seed", "2",
                       "--graph-out", str(gpath))
    assert code == 0
    g = cnf.parse_graph(gpath.read_text())
    assert cnf.parse_dimacs(out) == cnf.coordination_formula(g)


def test_models_and_stdin(capsys, phi_path, monkeypatch):
    code, out, _ = run(capsys, "models", "--cnf", phi_path, "--k", "1", "--list", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 3 and data["models"] == [0, 1, 2]
    monkeypatch.setattr("sys.stdin", io.StringIO(PHI))
    code, out, _ = run(capsys, "models", "--cnf", "-")
    assert code == 0 and out.strip() == "models: 2"


def test_reduce_json(capsys, phi_path):
    code, out, _ = run(capsys, "reduce", "--cnf", phi_path, "--k", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["d"] == 3 and data["hp_diagonal"] == [1.0, 2.0, 2.0]


def test_simulate_schedule(capsys, phi_path):
    argv = ["simulate", "--cnf", phi_path, "--k", "1", "--schedule", "0:1",
            "--delta", "0.3", "--shots", "100", "--seed", "4", "--json"]
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert code == 0 and data["d"] == 3 and data["nu"] == 1
    assert abs(data["expectation_full"] - 1.5) <= 1e-12
    assert sum(data["samples"].values()) == 100
    assert run(capsys, *argv)[1] == out


def test_simulate_search_and_text(capsys, caplog):
    code, out, _ = run(capsys, "simulate", "--n", "6", "--m", "20", "--ratio", "0.5",
                         "--trials", "3")
    assert code == 0 and "expectation (constrained)" in out
    assert "no --seed" in caplog.text


def test_simulate_empty_subspace(capsys, tmp_path):
    path = tmp_path / "unsat.cnf"
    path.write_text("p cnf 1 2\n1 0\n-1 0\n")
    code, _, err = run(capsys, "simulate", "--cnf", str(path), "--k", "2",
                       "--schedule", "1:1", "--seed", "0")
    assert code == 3 and "first 2 clauses" in err


def test_usage_errors(capsys, phi_path, tmp_path):
    assert run(capsys, "simulate", "--schedule", "1:1", "--seed", "0")[0] == 1
    assert run(capsys, "simulate", "--cnf", phi_path, "--k", "1", "--ratio", "0.5",
               "--schedule", "1:1", "--seed", "0")[0] == 1
    assert run(capsys, "models", "--cnf", str(tmp_path / "missing.cnf"))[0] == 1
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 2 1\n1 x 0\n")
    code, _, err = run(capsys, "models", "--cnf", str(bad))
    assert code == 1 and "line 2" in err
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 1


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--cases", "6", "--schedule-cases", "4",
                       "--max-n", "6", "--seed", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["evolution"]["max_error"] <= 1e-9


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr("zenoqaoa.verify.TOLERANCE", -1.0)
    code, out, _ = run(capsys, "verify", "--cases", "2", "--schedule-cases", "1",
                       "--max-n", "5", "--seed", "1")
    assert code == 2 and "FAIL" in out


def test_bench_table_flags_and_config(capsys, tmp_path):
    code, out, _ = run(capsys, "bench-table", "--n", "6..7", "--instances", "3",
                       "--k-ratios", "0.5,0.9", "--format", "csv", "--seed", "0")
    assert code == 0
    assert out.splitlines()[0] == "n,2^n,m=4n k=0.5m,m=4n k=0.9m,m=5n k=0.5m,m=5n k=0.9m"
    cfg = tmp_path / "bench.ini"
    cfg.write_text("n = 6..7\ninstances = 3\nk_ratios = 0.5,0.9\nformat = csv\nseed = 0\n")
    assert run(capsys, "bench-table", "--config", str(cfg))[1] == out
    # explicit flags win over the file
    code, out2, _ = run(capsys, "bench-table", "--config", str(cfg), "--n", "6")
    assert len(out2.splitlines()) == 2
    cfg.write_text("bogus = 1\n")
    assert run(capsys, "bench-table", "--config", str(cfg))[0] == 1


def test_bench_table_json_out(capsys, tmp_path):
    out_path = tmp_path / "t.json"
    code, _, _ = run(capsys, "bench-table", "--benchmark", "coordination", "--n", "6",
                     "--instances", "2", "--seed", "1", "--json", "--out", str(out_path))
    data = json.loads(out_path.read_text())
    assert code == 0 and data["schema_version"] == 1
    assert {r["column"] for r in data["rows"]} == {0.3, 0.4}


def test_bench_time(capsys):
    code, out, err = run(capsys, "bench-time", "--n", "6,7", "--schedule", "1:1",
                         "--repeats", "1", "--seed", "0")
    assert code == 0 and out.startswith("n,m,k,d,nu") and "slope" in err


def test_help_lists_defaults(capsys):
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    assert len(sub) == 8
    for name, p in sub.items():
        text = p.format_help()
        assert "--json" in text
    text = sub["bench-table"].format_help()
    assert "(default: 100)" in text and "(default: markdown)" in text
    with pytest.raises(SystemExit) as e:
        main(["simulate", "--help"])
    assert e.value.code == 0
    assert "(default: 0.1)" in capsys.readouterr().out
