import io
import json

import pytest

from testcover.cli import run_command
from testcover.generators import gen_grid
from testcover.io import parse_instance, serialize_instance
from testcover.kernel_mk import SubsetInstance


def run(*argv):
    out = io.StringIO()
    code = run_command(list(map(str, argv)), out=out)
    return code, out.getvalue()


@pytest.fixture
def grid3(tmp_path):
    path = tmp_path / "grid3.tcov"
    assert run("gen", "--grid", 3, "-o", path)[0] == 0
    return path


@pytest.fixture
def grid2(tmp_path):
    path = tmp_path / "grid2.tcov"
    path.write_text(serialize_instance(gen_grid(2)))
    return path


def test_bound(grid3):
    code, out = run("bound", grid3)
    assert code == 0 and out.splitlines() == ["lb_r 4", "lb_log 4", "ub_bondy ≤ 8"]


def test_solve_modes(grid2, grid3):
    assert run("solve", "--mode", "mk", "-k", 1, grid2) == (1, "s no\ntarget 1\nnodes 1\n")
    code, out = run("solve", "--mode", "exact", grid3)
    assert code == 0 and "min 4" in out
    code, out = run("solve", "--mode", "approx", grid3)
    assert code == 0 and "size 4" in out
    code, out = run("solve", "--mode", "nk", "-k", 2, grid3)
    assert code == 0 and out.startswith("s yes")
    assert run("solve", "--mode", "mk", grid3)[0] == 2


def test_verify(grid3):
    assert run("verify", grid3, "--cover", "1,2,3,4") == (0, "valid test cover, size 4\n")
    code, out = run("verify", grid3, "--cover", "1,2")
    assert code == 1 and out.startswith("not a test cover")
    assert run("verify", grid3, "--cover", "9")[0] == 2


def test_json_mirrors_fields(grid3):
    code, out = run("--json", "bound", grid3)
    assert json.loads(out) == {"lb_r": 4, "lb_log": 4, "ub_bondy": 8}
    code, out = run("solve", "--json", "--mode", "exact", grid3)
    assert json.loads(out) == {"min": 4, "cover": [1, 2, 3, 4]}


def test_gen_variants(tmp_path):
    code, out = run("gen", "--random", 6, 5, 3, 42)
    assert code == 0 and parse_instance(out).H.m == 5
    assert run("gen", "--random", 6, 5, 3, 42) == (code, out)
    code, out = run("gen", "--grid-multi", 2, 2)
    assert parse_instance(out).H.n == 7
    m = tmp_path / "g.rdm"
    m.write_text("p rdm 3 2\nt 1 1 1\nt 2 2 2\n")
    code, out = run("gen", "--from-matching", m)
    assert "c target 4" in out and parse_instance(out).H.n == 9
    g = tmp_path / "g.edge"
    g.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
    code, out = run("gen", "--from-p3", g)
    assert "c target 2" in out and parse_instance(out).H.n == 4


def test_kernel(tmp_path, grid3):
    out_path = tmp_path / "k.tcov"
    code, out = run("kernel", "--mode", "mk", "-k", 1, "--trace", grid3, "-o", out_path)
    assert code == 1 and "verdict no" in out and "c rule" in out
    code, out = run("--json", "kernel", "--mode", "nk", "-k", 2, grid3, "-o", out_path)
    rep = json.loads(out)
    assert rep["verdict"] == "reduced" and parse_instance(out_path.read_text()).H == gen_grid(3)


def test_oracle_honors_black(tmp_path):
    path = tmp_path / "b.tcov"
    H = parse_instance("p tcov 3 3\ne 1\ne 2\ne 1 2\n").H
    path.write_text(serialize_instance(SubsetInstance(H, frozenset({2}), 0)))
    code, out = run("oracle", path)
    assert code == 0 and "min 2" in out and "3" in out.splitlines()[1]
    assert run("oracle", path, "--cap", 1)[0] == 2
    assert run("solve", path)[0] == 2


def test_errors(tmp_path):
    bad = tmp_path / "bad.tcov"
    bad.write_text("p tcov 2 1\ne 1 3\n")
    assert run("bound", bad)[0] == 2
    assert run("bound", tmp_path / "missing.tcov")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("solve", "--bogus-flag", bad)[0] == 2


def test_budget_env(monkeypatch, tmp_path):
    path = tmp_path / "r.tcov"
    from testcover.generators import complete_to_test_cover, gen_random

    path.write_text(serialize_instance(complete_to_test_cover(gen_random(8, 8, 3, 0))))
    monkeypatch.setenv("TCOV_BUDGET_NODES", "1")
    code, out = run("solve", "--mode", "exact", path)
    assert code == 2 and "budget" in out


def test_threads_flag_accepted(grid3):
    assert run("--threads", 4, "bound", grid3)[0] == 0


def test_not_a_test_cover(tmp_path):
    path = tmp_path / "n.tcov"
    path.write_text("p tcov 3 1\ne 1\n")
    assert run("solve", path) == (1, "c the edge set is not a test cover\ns no\n")
