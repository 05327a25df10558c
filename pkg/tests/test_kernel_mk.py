from hypothesis import given
from hypothesis import strategies as st

from helpers import hypergraphs
from testcover.generators import gen_grid
from testcover.hypergraph import Hypergraph, degrees, is_test_cover
from testcover.kernel_mk import (
    Color,
    EdgeColoring,
    SubsetInstance,
    apply_rule_black_overlap,
    apply_rule_black_singleton,
    apply_rule_orange,
    check_coloring,
    color_edges,
    encode_black_gadget,
    greedy_green_packing,
    kernelize_mk,
    reduce_degrees,
    replay,
    subset_answer,
)
from testcover.oracle import has_cover_of_size


def _edges(I):
    return sorted(tuple(sorted(e)) for e in I.H.edges)


def test_rule1_examples():
    I = SubsetInstance(Hypergraph(3, ({0}, {1, 2}, {1})), frozenset({0}), 1)
    J = apply_rule_black_singleton(I)
    assert J is not None and J.H.n == 2 and J.H.m == 2
    assert apply_rule_black_singleton(SubsetInstance(I.H, frozenset(), 1)) is None


def test_rule2_examples():
    I = SubsetInstance(Hypergraph(4, ({0}, {0, 1, 2}, {3})), frozenset({0}), 0)
    J = apply_rule_black_overlap(I)
    assert (1, 2) in _edges(J) and (0, 1, 2) not in _edges(J)
    I = SubsetInstance(Hypergraph(3, ({0, 1}, {1, 2})), frozenset({0, 1}), 0)
    J = apply_rule_black_overlap(I)
    assert _edges(J) == [(0,), (1,), (2,)] and len(J.black) == 3


def test_rule3_examples():
    # a lone orange edge with no green edge anywhere is deleted
    I = SubsetInstance(Hypergraph(1, ({0},)), frozenset(), 1)
    J, col = color_edges(I)
    assert col.colors == (Color.ORANGE,)
    out = apply_rule_orange(J, col)
    assert out is not None and out.k == 0 and out.H.m == 0
    # a green edge next to the orange one blocks the rule
    H = Hypergraph(3, ({0, 1}, {1}, {1, 2}, {2}))
    J, col = color_edges(SubsetInstance(H, frozenset(), 1))
    check_coloring(J, col)
    assert col.colors[0] is Color.ORANGE and col.colors[1] is Color.GREEN
    assert apply_rule_orange(J, col) is None


def test_reduce_degrees_examples():
    g3 = gen_grid(3)
    I = SubsetInstance(g3, frozenset(), 1)
    assert reduce_degrees(I) == I
    H = Hypergraph(3, tuple([frozenset({0, 1})] * 5 + [frozenset({0}), frozenset({2})]))
    I = SubsetInstance(H, frozenset(), 1)
    J = reduce_degrees(I, r=2)
    assert max(degrees(J.H)) <= 4 or J.k < I.k
    res = kernelize_mk(SubsetInstance(g3, frozenset(), 0))
    assert res.verdict == "yes"


def test_coloring_examples():
    g2 = gen_grid(2)
    J, col = color_edges(SubsetInstance(g2, frozenset(), 1))
    assert all(c is Color.BLACK for c in col.colors) or J.H.m < g2.m
    g3 = gen_grid(3)
    dup = Hypergraph(9, g3.edges + (g3.edges[0],))
    J, col = color_edges(SubsetInstance(dup, frozenset(), 1))
    check_coloring(J, col)
    # Rules 1-2 shrink the black part; the two copies of the row survive as non-black
    copies = [q for q, e in enumerate(J.H.edges) if J.H.edges.count(e) == 2]
    assert len(copies) == 2
    assert all(col.colors[q] in (Color.GREEN, Color.ORANGE) for q in copies)
    # an isolated vertex rules out orange edges
    assert not col.of(Color.ORANGE)


def test_green_packing():
    I = SubsetInstance(Hypergraph(2), frozenset(), 1)
    assert greedy_green_packing(I, EdgeColoring(())) == frozenset()
    # two duplicated pairs far apart: each duplicate is green
    H = Hypergraph(5, ({0, 1}, {0, 1}, {0}, {2, 3}, {2, 3}, {2}, {4}))
    J, col = color_edges(SubsetInstance(H, frozenset(), 2))
    packed = greedy_green_packing(J, col)
    assert len(packed) == 2
    assert is_test_cover(J.H, set(range(J.H.m)) - packed)


def test_kernel_examples():
    res = kernelize_mk(SubsetInstance(gen_grid(2), frozenset(), 1))
    assert res.verdict in ("no", "reduced")
    if res.verdict == "reduced":
        assert not subset_answer(res.kernel)
    H = Hypergraph(5, ({0, 1}, {0, 1}, {0}, {2, 3}, {2, 3}, {2}, {4}))
    assert kernelize_mk(SubsetInstance(H, frozenset(), 2)).verdict == "yes"


def test_gadget_examples():
    I = SubsetInstance(gen_grid(3), frozenset(), 1)
    assert encode_black_gadget(I) == (I.H, 1)
    H = Hypergraph(4, ({0, 1}, {0, 1}, {1, 2}, {2}, {3}))
    I = SubsetInstance(H, frozenset({0}), 1)
    G, k = encode_black_gadget(I)
    assert (G.n, G.m, k) == (H.n + 4, H.m + 2, 1)
    assert has_cover_of_size(G, G.m - k)[0] == subset_answer(I)


@st.composite
def subset_instances(draw):
    H = draw(hypergraphs(max_n=5, max_m=6, test_cover=True))
    black = draw(st.frozensets(st.integers(0, H.m - 1), max_size=2)) if H.m else frozenset()
    return SubsetInstance(H, black, draw(st.integers(0, 3)))


@given(subset_instances())
def test_single_rules_preserve_answer(I):
    before = subset_answer(I)
    for rule in (apply_rule_black_singleton, apply_rule_black_overlap):
        J = rule(I)
        if J is not None:
            assert subset_answer(J) == before
    J, col = color_edges(I)
    check_coloring(J, col)
    assert subset_answer(J) == before
    K = apply_rule_orange(J, col)
    if K is not None:
        assert subset_answer(K) == before
    for g in greedy_green_packing(J, col):
        assert is_test_cover(J.H, set(range(J.H.m)) - {g})


@given(subset_instances())
def test_kernel_preserves_answer(I):
    before = subset_answer(I)
    res = kernelize_mk(I)
    if res.verdict == "yes":
        assert before
    elif res.verdict == "no":
        assert not before
    else:
        assert subset_answer(res.kernel) == before
        assert replay(I, res.trace) == res.kernel
