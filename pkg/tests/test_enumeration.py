from itertools import combinations, permutations

from testcover.enumeration import candidate_edges, graph_orbits, orbit_representatives, small_instances


def _canon(n, edges):
    return min(tuple(sorted(tuple(sorted(p[v] for v in e)) for e in edges)) for p in permutations(range(n)))


def test_orbit_counts_match_direct_canonicalization():
    n, r = 4, 2
    cands = candidate_edges(n, r)
    for m in range(4):
        direct = set()
        for combo in combinations(range(len(cands)), m):
            direct.add(_canon(n, [cands[i] for i in combo]))
        # multisets of edges: also allow repeats
        multi = set()
        from itertools import combinations_with_replacement

        for combo in combinations_with_replacement(range(len(cands)), m):
            multi.add(_canon(n, [cands[i] for i in combo]))
        assert len(orbit_representatives(n, m, r)) == len(multi) >= len(direct)


def test_graph_orbit_counts():
    assert [len(graph_orbits(n)) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]


def test_small_instances_are_test_covers():
    seen = 0
    for H in small_instances(max_n=4, max_m=3):
        assert H.r <= 3
        seen += 1
    assert seen > 0
