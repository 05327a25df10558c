"""Depth-bounded search tree deciding whether a test cover of size at most m - k exists."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import separating_subset
from .errors import BudgetExceeded, InvariantViolation
from .hypergraph import Hypergraph, degrees, isolates, masks_test_cover
from .oracle import env_node_budget


@dataclass
class BranchStats:
    nodes_visited: int = 0
    guessed_vertex: int | None = None
    depth: int = 0
    per_guess: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class MKResult:
    verdict: bool
    witness: frozenset[int] | None
    stats: BranchStats


def node_bound(n: int, r: int, k: int) -> int:
    """Worst-case node count of the whole search, including the n + 1 guesses."""
    return (n + 1) * (2 * (r * r + 1) ** max(k, 0) - 1)


def _minimal(H: Hypergraph, chosen: list[int], ok) -> list[int]:
    """Drop edges (highest index first) while ``ok`` still holds."""
    chosen = sorted(chosen)
    for q in sorted(chosen, reverse=True):
        trial = [p for p in chosen if p != q]
        if ok(trial):
            chosen = trial
    return chosen


def build_isolating_family(H: Hypergraph, e: int, y0: int, pool=None) -> frozenset[int]:
    """Edges B of ``pool`` minus e isolating V(e), with |B| <= r^2.

    B0 is a minimal family covering e; for each b in B0, B_b separates
    b \\ e from b & e. Any x in e is covered by some b; a y outside e is
    separated from x by b itself or, if y lies in b, by B_b.
    """
    pool = sorted(range(H.m) if pool is None else pool)
    if e not in pool:
        raise ValueError(f"edge {e} not in the pool")
    rest = [q for q in pool if q != e]
    if not masks_test_cover(H.n, (H.masks[q] for q in rest)):
        raise ValueError(f"removing edge {e} leaves no test cover")
    if any(y0 in H.edges[q] for q in pool):
        raise ValueError(f"vertex {y0} is not isolated")
    masks = H.masks
    target = masks[e]

    # greedy cover of e, then prune to a minimal family
    uncovered = target
    cover: list[int] = []
    while uncovered:
        best = max(rest, key=lambda q: (bin(masks[q] & uncovered).count("1"), -q))
        if not masks[best] & uncovered:
            raise InvariantViolation(f"no edge covers the rest of edge {e}")
        cover.append(best)
        uncovered &= ~masks[best]

    def covers(fam):
        span = 0
        for q in fam:
            span |= masks[q]
        return span & target == target

    B0 = _minimal(H, cover, covers)
    family = set(B0)
    for b in B0:
        inside = H.edges[b] & H.edges[e]
        outside = H.edges[b] - H.edges[e]
        if not outside:
            continue
        Bb = separating_subset(H, outside, inside, pool=rest)
        if len(Bb) > len(H.edges[b]) - 1:
            raise InvariantViolation(f"separating family for edge {b} has {len(Bb)} edges")
        family |= Bb
    r = H.r
    if len(B0) > len(H.edges[e]) or len(family) > r * r:
        raise InvariantViolation(f"isolating family too large: |B0|={len(B0)}, |B|={len(family)}")
    return frozenset(family)


def _deletable_edge(H: Hypergraph, edges: list[int]) -> int | None:
    masks = H.masks
    for q in edges:
        if masks_test_cover(H.n, (masks[p] for p in edges if p != q)):
            return q
    return None


def _search(H: Hypergraph, edges: list[int], k: int, y0: int, stats: BranchStats, depth: int, budget) -> list[int] | None:
    stats.nodes_visited += 1
    stats.depth = max(stats.depth, depth)
    if budget is not None and stats.nodes_visited > budget:
        raise BudgetExceeded(f"search tree exceeded {budget} nodes")
    if not masks_test_cover(H.n, (H.masks[q] for q in edges)):
        return None
    if k <= 0:
        return edges
    e = _deletable_edge(H, edges)
    if e is None:
        return None
    B = build_isolating_family(H, e, y0, pool=edges)
    if not isolates(H, B, H.edges[e]):
        raise InvariantViolation(f"family for edge {e} does not isolate it")
    for drop in [e] + sorted(B):
        found = _search(H, [q for q in edges if q != drop], k - 1, y0, stats, depth + 1, budget)
        if found is not None:
            return found
    return None


def solve_mk(H: Hypergraph, k: int, node_budget: int | None = None) -> MKResult:
    """Decide whether H has a test cover of at most m - k edges.

    Guess phase, in order: an already isolated vertex (a single instance);
    otherwise each vertex x in turn, deleting every edge through x and
    lowering k by its degree; finally a fresh isolated vertex appended to H.
    Each guess runs the branching search; the first yes wins.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not masks_test_cover(H.n, H.masks):
        raise ValueError("the edge set is not a test cover")
    if node_budget is None:
        node_budget = env_node_budget()
    stats = BranchStats()
    deg = degrees(H)

    def attempt(G: Hypergraph, edges: list[int], kk: int, y0: int, label: int | None) -> MKResult | None:
        before = stats.nodes_visited
        found = _search(G, edges, kk, y0, stats, 0, node_budget)
        stats.per_guess.append(stats.nodes_visited - before)
        if found is not None:
            stats.guessed_vertex = label
            return MKResult(True, frozenset(found), stats)
        return None

    if 0 in deg:
        y0 = deg.index(0)
        res = attempt(H, list(range(H.m)), k, y0, y0)
        return res or MKResult(False, None, stats)
    for x in range(H.n):
        edges = [q for q in range(H.m) if x not in H.edges[q]]
        res = attempt(H, edges, k - deg[x], x, x)
        if res:
            return res
    G = H.with_isolated_vertex()
    res = attempt(G, list(range(H.m)), k, H.n, None)
    return res or MKResult(False, None, stats)
