import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import hypergraphs, min_cover_size_slow
from testcover.bounds import lower_bound_r
from testcover.errors import BudgetExceeded
from testcover.generators import complete_to_test_cover, gen_grid, gen_grid_multi, gen_laminar, gen_random
from testcover.hypergraph import Hypergraph, is_test_cover
from testcover import oracle
from testcover.oracle import SearchStats, brute_force_min, ilp_min, exact_min, greedy_cover, has_cover_of_size


def test_brute_force_examples():
    assert brute_force_min(gen_grid(2)) == (2, frozenset({0, 1}))
    assert brute_force_min(Hypergraph(1)) == (0, frozenset())
    assert brute_force_min(gen_grid(3)) == (4, frozenset(range(4)))


def test_brute_force_refusals():
    with pytest.raises(ValueError):
        brute_force_min(Hypergraph(2))
    with pytest.raises(BudgetExceeded):
        brute_force_min(gen_grid(5), cap=4)


def test_exact_examples():
    assert exact_min(gen_grid(4))[0] == 6
    assert exact_min(gen_grid_multi(2, 2))[0] == 4
    for seed in range(20):
        H = complete_to_test_cover(gen_random(6, 5, 3, seed))
        assert exact_min(H)[0] == brute_force_min(H)[0]


@given(hypergraphs(max_n=7, max_m=8, test_cover=True))
def test_ilp_matches_enumeration(H):
    size, witness = ilp_min(H)
    assert size == min_cover_size_slow(H) and is_test_cover(H, witness)


def test_exact_budget(monkeypatch):
    H = complete_to_test_cover(gen_random(8, 8, 3, 0))
    stats = SearchStats()
    exact_min(H, stats=stats)
    assert stats.nodes > 1
    monkeypatch.setenv("TCOV_BUDGET_NODES", "1")
    with pytest.raises(BudgetExceeded):
        exact_min(H)


def test_has_cover_examples():
    g3 = gen_grid(3)
    assert has_cover_of_size(g3, 4)[0]
    assert not has_cover_of_size(g3, 3)[0]
    assert not has_cover_of_size(g3, -1)[0]
    assert has_cover_of_size(Hypergraph(1), 0) == (True, frozenset())


def test_has_cover_large_paths(monkeypatch):
    H = gen_laminar(30, 2, 1, 5)
    assert H.m > 22
    best = exact_min(H)[0]
    assert has_cover_of_size(H, best)[0] and not has_cover_of_size(H, best - 1)[0]
    # with no branch-and-bound budget the answer comes from the integer program
    monkeypatch.setattr(oracle, "FALLBACK_NODES", 0)
    ok, witness = has_cover_of_size(H, best)
    assert ok and len(witness) == best and is_test_cover(H, witness)
    assert not has_cover_of_size(H, best - 1)[0]


def test_greedy_examples():
    assert greedy_cover(gen_grid(3)) == frozenset(range(4))
    assert greedy_cover(Hypergraph(2, ({0},))) == frozenset({0})
    for seed in range(20):
        H = complete_to_test_cover(gen_random(8, 6, 3, seed))
        T = greedy_cover(H)
        assert is_test_cover(H, T) and len(T) >= lower_bound_r(8, max(H.r, 2))


@given(hypergraphs(max_n=6, max_m=7, test_cover=True))
def test_solvers_agree_with_plain_enumeration(H):
    best = min_cover_size_slow(H)
    assert brute_force_min(H)[0] == best
    size, witness = exact_min(H)
    assert size == best and len(witness) == best and is_test_cover(H, witness)


@given(hypergraphs(max_n=6, max_m=7, test_cover=True), st.integers(-1, 8))
def test_has_cover_monotone(H, s):
    ok, witness = has_cover_of_size(H, s)
    if ok:
        assert is_test_cover(H, witness) and len(witness) <= s
        assert has_cover_of_size(H, s + 1)[0]
    else:
        assert not has_cover_of_size(H, s - 1)[0]


@given(hypergraphs(max_n=5, max_m=6, test_cover=True), st.data())
def test_forced_edges_respected(H, data):
    forced = data.draw(st.frozensets(st.integers(0, H.m - 1), max_size=2)) if H.m else frozenset()
    size, witness = brute_force_min(H, forced=forced)
    assert forced <= witness and is_test_cover(H, witness)
    assert size >= brute_force_min(H)[0]
