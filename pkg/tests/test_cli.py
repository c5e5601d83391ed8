import json

import pytest

from conflictcol import io
from conflictcol.adversary import gen_random_multigraph, gen_random_partition, gen_two_vertex
from conflictcol.bounds import bound_max_degree
from conflictcol.cli import main
from conflictcol.model import build_instance


@pytest.fixture
def files(tmp_path):
    io.write_instance(tmp_path / "two_vertex_k2.json", gen_two_vertex(2))
    io.write_instance(tmp_path / "p3_k2.json", build_instance(3, [(0, 1), (1, 2)], 2, [(1, 1), (2, 1)]))
    io.write_instance(tmp_path / "forced.json", build_instance(2, [(0, 1)], 1, [(1, 1)]))
    (tmp_path / "bad.json").write_text("{\"k\": 2, \"n\":")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_exact_unsat(files, capsys):
    code, out, _ = run(capsys, "solve", files / "two_vertex_k2.json", "--solver", "exact", "--json")
    assert code == 1
    assert json.loads(out)["verdict"] == "unsat"


def test_solve_orient(files, capsys):
    code, out, _ = run(capsys, "solve", files / "p3_k2.json", "--solver", "orient", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["valid"] is True and len(report["colouring"]) == 3
    assert report["schema"] == "conflictcol.report/1"
    assert report["stats"]["m"] == 2 and report["counters"]["k_star"] == 1
    assert "seconds" in report


def test_solve_malformed(files, capsys):
    code, _, err = run(capsys, "solve", files / "bad.json")
    assert code == 2 and "error" in err


def test_solve_missing_seed_is_usage_error(files, capsys):
    code, _, err = run(capsys, "solve", files / "p3_k2.json", "--solver", "lll")
    assert code == 2 and "--seed" in err


def test_solve_two_phase_parameter_error(files, capsys):
    code, _, _ = run(capsys, "solve", files / "p3_k2.json", "--solver", "two-phase", "--seed", 1)
    assert code == 2


def test_solve_lll_writes_verified_colouring(files, capsys):
    out_path = files / "c.json"
    code, _, _ = run(capsys, "solve", files / "p3_k2.json", "--solver", "lll", "--seed", 3,
                     "--out", out_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", files / "p3_k2.json", out_path)
    assert code == 0 and "valid" in out


def test_solve_budget_exhausted(files, capsys):
    from conflictcol.adversary import gen_star
    io.write_instance(files / "star.json", gen_star(4))
    code, out, _ = run(capsys, "solve", files / "star.json", "--nodes", 1, "--json")
    assert code == 2 and json.loads(out)["verdict"] == "budget-exhausted"


def test_verify_forced_conflict(files, capsys):
    io.write_colouring(files / "c11.json", (1, 1))
    code, out, _ = run(capsys, "verify", files / "forced.json", files / "c11.json", "--json")
    assert code == 1 and json.loads(out)["violations"] == [0]


def test_verify_out_of_range(files, capsys):
    io.write_colouring(files / "c.json", (1, 7))
    code, _, _ = run(capsys, "verify", files / "forced.json", files / "c.json")
    assert code == 2


def test_verify_dimension_mismatch(files, capsys):
    io.write_colouring(files / "c.json", (1,))
    assert run(capsys, "verify", files / "forced.json", files / "c.json")[0] == 2


@pytest.mark.parametrize("argv", [
    ["--family", "two-vertex", "--k", 2],
    ["--family", "star", "--mu", 2],
    ["--family", "random", "--n", 10, "--m", 20, "--k", 3, "--seed", 1],
    ["--family", "complete", "--n", 4, "--mu", 2, "--k", 3, "--seed", 1],
    ["--family", "planar", "--n", 20, "--k", 4, "--seed", 1],
])
def test_gen_families(tmp_path, capsys, argv):
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", *argv, "--out", out)
    assert code == 0
    assert io.read_instance(out).m > 0


def test_gen_missing_argument(tmp_path, capsys):
    assert run(capsys, "gen", "--family", "random", "--k", 2, "--out", tmp_path / "x.json")[0] == 2


def test_exact_ch(files, capsys):
    code, out, _ = run(capsys, "exact-ch", files / "two_vertex_k2.json", "--json")
    assert code == 0 and json.loads(out)["choosability"] == 3
    code, out, _ = run(capsys, "exact-ch", files / "two_vertex_k2.json", "--kmax", 2)
    assert "conflict choosability >2" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--formula", "max-degree", "--args", 20, "--json")
    report = json.loads(out)
    assert code == 0 and report["value"] == 11 and report["ref"]
    code, out, _ = run(capsys, "bounds", "--formula", "edges", "--args", 10000, 16)
    assert "240" in out
    code, out, _ = run(capsys, "bounds", "--formula", "lll-feasibility", "--args", 2 ** 23, "--json")
    assert json.loads(out)["ok"] is True
    assert run(capsys, "bounds", "--formula", "nope")[0] == 2


def test_bench_empty_corpus(tmp_path, capsys):
    (tmp_path / "corpus").mkdir()
    code, out, _ = run(capsys, "bench", tmp_path / "corpus", "--solvers", "lll", "--seeds", 1, "--json")
    assert code == 0 and json.loads(out)["rows"] == []


def test_bench_missing_corpus(tmp_path, capsys):
    assert run(capsys, "bench", tmp_path / "nowhere")[0] == 2


def make_corpus(path, count):
    path.mkdir()
    for i in range(count):
        g = gen_random_multigraph(30, 60, seed=i, max_degree=2 + i % 19)
        k = bound_max_degree(max(g.degrees)).value
        io.write_instance(path / f"r{i:03d}.json", gen_random_partition(g, k, seed=i))


def test_bench_max_degree_regime(tmp_path, capsys):
    make_corpus(tmp_path / "c", 100)
    code, out, _ = run(capsys, "bench", tmp_path / "c", "--solvers", "lll", "--seeds", 1, "--json")
    report = json.loads(out)
    assert code == 0
    assert report["summary"]["lll"] == {"runs": 100, "sat": 100, "success_rate": 1.0}


def test_bench_deterministic(tmp_path, capsys):
    make_corpus(tmp_path / "c", 8)
    argv = ["bench", tmp_path / "c", "--solvers", "lll,exact,orient", "--seeds", "1,2"]
    run(capsys, *argv, "--out", tmp_path / "a.json")
    run(capsys, *argv, "--out", tmp_path / "b.json", "--jobs", 2)
    a = (tmp_path / "a.json").read_bytes()
    assert a == (tmp_path / "b.json").read_bytes()
    rows = json.loads(a)["rows"]
    assert len(rows) == 8 * 4
    assert rows == sorted(rows, key=lambda r: (r["instance"], r["solver"], r["seed"] or -1))
