"""Ground-truth solvers: exhaustive search, branch-and-bound and the greedy approximation."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .bounds import _greedy_extend, lower_bound_log, lower_bound_r
from .errors import BudgetExceeded
from .hypergraph import Hypergraph, masks_test_cover, refine

DEFAULT_CAP = 22
FALLBACK_NODES = 20_000


def env_node_budget() -> int | None:
    raw = os.environ.get("TCOV_BUDGET_NODES")
    return int(raw) if raw else None


def _require_test_cover(H: Hypergraph) -> None:
    if not masks_test_cover(H.n, H.masks):
        raise ValueError("the edge set is not a test cover")


def _first_cover(H: Hypergraph, size: int, forced: frozenset[int] = frozenset()) -> tuple[int, ...] | None:
    masks = H.masks
    base = [masks[q] for q in forced]
    free = [q for q in range(H.m) if q not in forced]
    for combo in combinations(free, size - len(forced)):
        if masks_test_cover(H.n, base + [masks[q] for q in combo]):
            return tuple(sorted(forced.union(combo)))
    return None


def brute_force_min(H: Hypergraph, cap: int = DEFAULT_CAP, forced: Iterable[int] = ()) -> tuple[int, frozenset[int]]:
    """Minimum test cover by enumeration in increasing size.

    The witness is the lexicographically least minimum cover. ``forced`` edges
    must belong to the cover (used for the subset-restricted variant).
    """
    if H.m > cap:
        raise BudgetExceeded(f"m={H.m} exceeds the brute-force cap {cap}")
    _require_test_cover(H)
    forced = H.check_edge_set(forced)
    for size in range(len(forced), H.m + 1):
        found = _first_cover(H, size, forced)
        if found is not None:
            return size, frozenset(found)
    raise AssertionError("unreachable: the full edge set is a test cover")


def has_cover_of_size(
    H: Hypergraph, s: int, cap: int = DEFAULT_CAP, forced: Iterable[int] = ()
) -> tuple[bool, frozenset[int] | None]:
    """Is there a test cover (containing ``forced``) with at most ``s`` edges?

    Enumerates covers when m <= cap. Otherwise it runs a budgeted
    branch-and-bound and, if that runs out, solves an integer program.
    """
    forced = H.check_edge_set(forced)
    if s < len(forced):
        return False, None
    if not masks_test_cover(H.n, H.masks):
        return False, None
    if s >= H.m:
        return True, H.all_edges()
    if H.m <= cap:
        for size in range(len(forced), s + 1):
            found = _first_cover(H, size, forced)
            if found is not None:
                return True, frozenset(found)
        return False, None
    if not forced:
        try:
            size, witness = exact_min(H, node_budget=FALLBACK_NODES)
            return (True, witness) if size <= s else (False, None)
        except BudgetExceeded:
            pass
    size, witness = ilp_min(H, forced)
    return (True, witness) if size <= s else (False, None)


def ilp_min(H: Hypergraph, forced: Iterable[int] = ()) -> tuple[int, frozenset[int]]:
    """Minimum test cover as a 0/1 program: every vertex pair needs a separating edge.

    Solved with HiGHS through scipy; the witness is re-checked here.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp  # only needed past the enumeration cap

    _require_test_cover(H)
    forced = H.check_edge_set(forced)
    if H.n <= 1 or H.m == 0:
        return len(forced), forced
    vs = np.arange(H.n)
    member = np.array([[v in e for e in H.edges] for v in vs], dtype=bool)
    iu, ju = np.triu_indices(H.n, 1)
    A = (member[iu] != member[ju]).astype(float)
    lower = np.zeros(H.m)
    lower[list(forced)] = 1
    res = milp(
        c=np.ones(H.m),
        constraints=LinearConstraint(A, lb=1, ub=np.inf),
        integrality=np.ones(H.m),
        bounds=Bounds(lower, np.ones(H.m)),
    )
    if not res.success:
        raise RuntimeError(f"integer program failed: {res.message}")
    witness = frozenset(int(q) for q in np.flatnonzero(res.x > 0.5))
    if not masks_test_cover(H.n, (H.masks[q] for q in witness)) or not forced <= witness:
        raise AssertionError("integer program returned an invalid cover")
    return len(witness), witness


def greedy_cover(H: Hypergraph) -> frozenset[int]:
    """Repeatedly add the edge that increases the class count most (lowest index on ties)."""
    _require_test_cover(H)
    chosen = _greedy_extend(list(H.masks), list(range(H.m)), [H.full_mask], lambda cl: len(cl) >= H.n)
    return frozenset(chosen)


@dataclass
class SearchStats:
    nodes: int = 0


def _forced_edges(H: Hypergraph) -> set[int]:
    """Edges that are the only separator of some pair; every test cover contains them."""
    forced = set()
    full = list(range(H.m))
    for q in full:
        rest = [H.masks[p] for p in full if p != q]
        if not masks_test_cover(H.n, rest):
            forced.add(q)
    return forced


def _edge_components(H: Hypergraph) -> list[list[int]]:
    """Edge indices grouped by connected component of the hypergraph."""
    parent = list(range(H.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in H.edges:
        first, *rest = sorted(e)
        for v in rest:
            parent[find(v)] = find(first)
    groups: dict[int, list[int]] = {}
    for q, e in enumerate(H.edges):
        groups.setdefault(find(min(e)), []).append(q)
    return list(groups.values())


def _split_min(H: Hypergraph, parts: list[list[int]], node_budget, stats) -> tuple[int, frozenset[int]]:
    """Combine per-component optima.

    Vertices in different components are separated unless both are uncovered,
    so at most one vertex of H may stay uncovered. For each component we solve
    it with everything covered (an extra isolated vertex forces that) and as
    is, then let the component with the largest saving keep one uncovered vertex.
    """
    uncovered = H.n - len(set().union(*H.edges))
    solved = []
    for part in parts:
        verts = sorted(set().union(*(H.edges[q] for q in part)))
        index = {v: i for i, v in enumerate(verts)}
        local = Hypergraph(len(verts), tuple(frozenset(index[v] for v in H.edges[q]) for q in part))
        full = _exact_connected(local.with_isolated_vertex(), node_budget, stats)
        loose = _exact_connected(local, node_budget, stats) if uncovered == 0 else full
        solved.append((part, full, loose))
    pick = max(range(len(solved)), key=lambda i: solved[i][1][0] - solved[i][2][0])
    total, witness = 0, set()
    for i, (part, full, loose) in enumerate(solved):
        size, local_witness = loose if i == pick else full
        total += size
        witness.update(part[q] for q in local_witness)
    return total, frozenset(witness)


def exact_min(
    H: Hypergraph,
    node_budget: int | None = None,
    stats: SearchStats | None = None,
) -> tuple[int, frozenset[int]]:
    """Branch-and-bound minimum test cover, solved per connected component."""
    _require_test_cover(H)
    if node_budget is None:
        node_budget = env_node_budget()
    stats = stats if stats is not None else SearchStats()
    parts = _edge_components(H)
    if len(parts) > 1:
        return _split_min(H, parts, node_budget, stats)
    return _exact_connected(H, node_budget, stats)


def _exact_connected(H: Hypergraph, node_budget: int | None, stats: SearchStats) -> tuple[int, frozenset[int]]:
    """Branch-and-bound minimum test cover.

    Each node picks the unsplit class with the fewest available cutting edges
    and branches on which of them is the first one taken (include it, exclude
    the earlier ones). Pruning uses the edge-size bound, the log2 bound of the
    largest remaining class and the per-edge class gain (an edge of size at
    most r adds at most r classes); the greedy cover seeds the incumbent.
    """
    n = H.n
    if n <= 1:
        return 0, frozenset()
    masks = H.masks
    r = max(H.r, 2)
    global_lb = lower_bound_r(n, r)
    # root branch order: more separated pairs first, then index
    order = sorted(range(H.m), key=lambda q: (-(bin(masks[q]).count("1") * (n - bin(masks[q]).count("1"))), q))
    rank = {q: i for i, q in enumerate(order)}

    best = sorted(greedy_cover(H))
    forced = _forced_edges(H)
    start = refine([H.full_mask], (masks[q] for q in forced))

    def bound(classes: list[int], used: int) -> int:
        if len(classes) == n:
            return 0
        largest = max(bin(c).count("1") for c in classes)
        return max(global_lb - used, lower_bound_log(largest), -(-(n - len(classes)) // r))

    def search(classes: list[int], chosen: list[int], excluded: set[int]) -> None:
        nonlocal best
        stats.nodes += 1
        if node_budget is not None and stats.nodes > node_budget:
            raise BudgetExceeded(f"exact search exceeded {node_budget} nodes")
        if len(classes) == n:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        if len(chosen) + max(1, bound(classes, len(chosen))) >= len(best):
            return
        taken = set(chosen)
        target, target_edges = None, None
        for c in classes:
            if c & (c - 1):
                cutting = [q for q in order if q not in taken and q not in excluded and masks[q] & c and c & ~masks[q]]
                if target_edges is None or len(cutting) < len(target_edges):
                    target, target_edges = c, cutting
                    if not cutting:
                        return
        newly_excluded: list[int] = []
        for q in target_edges:
            chosen.append(q)
            search(refine(classes, (masks[q],)), chosen, excluded)
            chosen.pop()
            excluded.add(q)
            newly_excluded.append(q)
        for q in newly_excluded:
            excluded.discard(q)

    search(start, sorted(forced, key=rank.__getitem__), set())
    return len(best), frozenset(best)
