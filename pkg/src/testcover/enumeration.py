"""Exhaustive enumeration of small instances up to vertex relabeling.

An instance is a multiset of nonempty edges of size at most ``r`` over
``n`` labeled vertices. Two instances that differ by a vertex permutation
(or by edge order) have the same minimum test cover, so one representative
per orbit is enough for exhaustive agreement checks. Representatives are
built level by level: every orbit with L edges arises from an orbit with
L - 1 edges plus one edge, and is reduced to the lexicographically least
sorted edge-id tuple over all vertex permutations (vectorised with numpy).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from .hypergraph import Hypergraph, masks_test_cover


@lru_cache(maxsize=None)
def candidate_edges(n: int, r: int) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(c) for size in range(1, min(r, n) + 1) for c in combinations(range(n), size))


def _perm_table(n: int, edges: tuple[frozenset[int], ...]) -> np.ndarray:
    index = {e: i for i, e in enumerate(edges)}
    table = np.empty((len(list(permutations(range(n)))), len(edges)), dtype=np.int64)
    for p, perm in enumerate(permutations(range(n))):
        for i, e in enumerate(edges):
            table[p, i] = index[frozenset(perm[v] for v in e)]
    return table


def _canonical(rows: np.ndarray, table: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    best = None
    for p in range(table.shape[0]):
        mapped = np.sort(table[p][rows], axis=1)
        code = mapped @ weights
        best = code if best is None else np.minimum(best, code)
    return best


def _decode(codes: np.ndarray, length: int, base: int) -> np.ndarray:
    out = np.empty((len(codes), length), dtype=np.int64)
    rest = codes.copy()
    for col in range(length - 1, -1, -1):
        out[:, col] = rest % base
        rest //= base
    return out


@lru_cache(maxsize=None)
def orbit_representatives(n: int, m: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Sorted edge-id tuples (ids into ``candidate_edges(n, r)``), one per orbit."""
    edges = candidate_edges(n, r)
    if m == 0:
        return ((),)
    if not edges:
        return ()
    base = len(edges)
    table = _perm_table(n, edges)
    if m == 1:
        prev = np.zeros((1, 0), dtype=np.int64)
    else:
        prev = np.asarray(orbit_representatives(n, m - 1, r), dtype=np.int64)
    ext = np.repeat(prev, base, axis=0)
    new_col = np.tile(np.arange(base, dtype=np.int64), len(prev)).reshape(-1, 1)
    rows = np.hstack([ext, new_col])
    codes = np.unique(_canonical(rows, table, base))
    return tuple(tuple(int(v) for v in row) for row in _decode(codes, m, base))


def small_instances(max_n: int = 6, max_m: int = 5, r: int = 3, test_covers_only: bool = True) -> Iterator[Hypergraph]:
    """One hypergraph per orbit for every 1 <= n <= max_n, 0 <= m <= max_m."""
    for n in range(1, max_n + 1):
        edges = candidate_edges(n, r)
        for m in range(max_m + 1):
            for row in orbit_representatives(n, m, r):
                H = Hypergraph(n, tuple(edges[i] for i in row))
                if not test_covers_only or masks_test_cover(n, H.masks):
                    yield H


def graph_orbits(n: int) -> list[tuple[tuple[int, int], ...]]:
    """One edge list per isomorphism class of simple graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    perms = list(permutations(range(n)))
    table = np.array(
        [[index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs] for perm in perms], dtype=np.int64
    )
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(len(pairs))) & 1
    best = masks.copy()
    for p in range(len(perms)):
        mapped = (bits << table[p][None, :]).sum(axis=1)
        best = np.minimum(best, mapped)
    reps = np.unique(best)
    return [tuple(pairs[i] for i in range(len(pairs)) if (int(code) >> i) & 1) for code in reps]
