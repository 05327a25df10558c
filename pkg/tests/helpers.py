"""Test-only utilities: independent checks for the reduction source problems and instance strategies."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from testcover.generators import RPartiteHypergraph, SimpleGraph
from testcover.hypergraph import Hypergraph, masks_test_cover


def has_perfect_matching(G: RPartiteHypergraph) -> bool:
    """n' pairwise disjoint edges, by exhaustive search."""
    edges = [G.edge_vertices(e) for e in G.edges]
    for pick in combinations(edges, G.n_prime):
        if len(frozenset().union(*pick)) == G.r * G.n_prime:
            return True
    return G.n_prime == 0


def has_perfect_p3_packing(G: SimpleGraph) -> bool:
    """Partition V(G) into triples, each inducing a connected subgraph (a P3 or a triangle)."""
    adj = {v: set() for v in range(G.n)}
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)

    def solve(rest: frozenset[int]) -> bool:
        if not rest:
            return True
        a = min(rest)
        for b, c in combinations(sorted(rest - {a}), 2):
            links = (b in adj[a]) + (c in adj[a]) + (c in adj[b])
            if links >= 2 and solve(rest - {a, b, c}):
                return True
        return False

    return solve(frozenset(range(G.n)))


def min_cover_size_slow(H: Hypergraph) -> int:
    """Smallest test cover by plain subset enumeration (no shared code with the oracle)."""
    for size in range(H.m + 1):
        for T in combinations(range(H.m), size):
            pairs_ok = all(
                any((x in H.edges[q]) != (y in H.edges[q]) for q in T)
                for x, y in combinations(range(H.n), 2)
            )
            if pairs_ok:
                return size
    raise ValueError("not a test cover")


@st.composite
def hypergraphs(draw, max_n: int = 6, max_m: int = 6, max_r: int = 3, test_cover: bool = False) -> Hypergraph:
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, min(max_r, n)))
    edge = st.frozensets(st.integers(0, n - 1), min_size=1, max_size=r)
    edges = draw(st.lists(edge, max_size=max_m))
    H = Hypergraph(n, tuple(edges))
    if test_cover and not masks_test_cover(n, H.masks):
        singles = [frozenset({v}) for v in range(1, n)]
        H = Hypergraph(n, tuple(edges + singles))
    return H


def classes_by_signature(H: Hypergraph, T) -> list[frozenset[int]]:
    """Classes induced by T, computed from membership signatures (no refinement code)."""
    groups: dict[tuple[bool, ...], set[int]] = {}
    T = sorted(T)
    for v in range(H.n):
        groups.setdefault(tuple(v in H.edges[q] for q in T), set()).add(v)
    return [frozenset(g) for g in groups.values()]


def mini_cover_exists(H: Hypergraph, k: int) -> bool:
    """Some T with |T| <= 2k inducing at least |T| + k classes."""
    for size in range(min(2 * k, H.m) + 1):
        for T in combinations(range(H.m), size):
            if len(classes_by_signature(H, T)) >= size + k:
                return True
    return False


def f_structure_violations(H: Hypergraph, S, k: int) -> list[str]:
    """Check the defining conditions of an F family directly against H."""
    out = []
    classes = classes_by_signature(H, S.F)
    covered = frozenset().union(*(H.edges[q] for q in S.F)) if S.F else frozenset()
    G = frozenset(range(H.n)) - covered
    if sorted(map(sorted, S.classes)) != sorted(sorted(c) for c in classes if c & covered) or S.G != G:
        out.append("classes")
    if not (len(S.F) < 2 * k and len(classes) < len(S.F) + k):
        out.append("size")
    for e in H.edges:
        if sum(1 for K in classes if K & e and K - e) > 1:
            out.append("cuts")
            break
    for e, f in combinations(H.edges, 2):
        if any((e & f) & K and (e - f) & K and (f - e) & K and K - (e | f) for K in classes):
            out.append("four-way")
            break
    r = max(H.r, 1)
    if not (len(S.classes) < 3 * k and len(S.C) <= (2 * k - 1) * r):
        out.append("l-and-C")
    return out
