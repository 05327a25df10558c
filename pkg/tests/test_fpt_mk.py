import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import hypergraphs
from testcover.errors import BudgetExceeded
from testcover.fpt_mk import build_isolating_family, node_bound, solve_mk
from testcover.generators import gen_grid
from testcover.hypergraph import Hypergraph, deletable_edges, is_test_cover, isolates
from testcover.oracle import has_cover_of_size


def test_examples():
    g2 = gen_grid(2)
    res = solve_mk(g2, 0)
    assert res.verdict and res.witness == frozenset({0, 1})
    assert not solve_mk(g2, 1).verdict
    g3 = gen_grid(3)
    dup = Hypergraph(9, g3.edges + (g3.edges[0],))
    res = solve_mk(dup, 1)
    assert res.verdict and len(res.witness) <= 4 and is_test_cover(dup, res.witness)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_mk(gen_grid(2), -1)
    with pytest.raises(ValueError):
        solve_mk(Hypergraph(2), 0)


def test_budget():
    H = Hypergraph(4, ({0}, {1}, {2}, {0}, {1}, {2}, {0, 1}))
    with pytest.raises(BudgetExceeded):
        solve_mk(H, 3, node_budget=1)


def test_isolating_family_two_covering_edges():
    # e = {0,1,2} is covered by {0,1} and {2,3}
    H = Hypergraph(5, ({0, 1, 2}, {0, 1}, {2, 3}, {0}, {3}, {1, 2}))
    B = build_isolating_family(H, 0, 4)
    assert {1, 2} <= B
    assert isolates(H, B, H.edges[0])


@given(hypergraphs(max_n=6, max_m=7, max_r=3, test_cover=True))
def test_isolating_family_property(H):
    G = H.with_isolated_vertex()
    for e in deletable_edges(G):
        B = build_isolating_family(G, e, G.n - 1)
        assert e not in B and len(B) <= G.r**2
        assert isolates(G, B, G.edges[e])


@given(hypergraphs(max_n=6, max_m=6, max_r=3, test_cover=True), st.integers(0, 3))
def test_agrees_with_oracle(H, k):
    res = solve_mk(H, k)
    assert res.verdict == has_cover_of_size(H, H.m - k)[0]
    assert res.stats.nodes_visited <= node_bound(H.n, max(H.r, 1), k)
    if res.verdict:
        assert len(res.witness) <= H.m - k
