"""Class-extension greedy, Bondy pruning, separating subfamilies and lower bounds."""

from __future__ import annotations

from typing import Iterable

from .hypergraph import (
    Hypergraph,
    class_masks,
    degrees,
    iter_bits,
    masks_test_cover,
    refine,
    to_mask,
)


def _greedy_extend(masks: list[int], pool: list[int], classes: list[int], done) -> list[int]:
    """Add edges from ``pool`` until ``done(classes)``.

    Each step takes the edge with the largest immediate increase in class
    count (lowest index on ties). Stops early when no edge increases it.
    """
    chosen: list[int] = []
    remaining = list(pool)
    while not done(classes):
        best, best_gain, best_classes = None, 0, None
        for q in remaining:
            nxt = refine(classes, (masks[q],))
            gain = len(nxt) - len(classes)
            if gain > best_gain:
                best, best_gain, best_classes = q, gain, nxt
        if best is None:
            break
        chosen.append(best)
        remaining.remove(best)
        classes = best_classes
    return chosen


def extend_classes(H: Hypergraph, i: int) -> frozenset[int]:
    """Return ``i`` edges of H inducing at least ``i + 1`` classes."""
    t = len(class_masks(H, range(H.m)))
    if t < 2:
        raise ValueError(f"the edges induce {t} class(es); need at least 2")
    if not 1 <= i <= t - 1:
        raise ValueError(f"i={i} outside [1, {t - 1}]")
    if i > H.m:
        raise ValueError(f"i={i} exceeds the number of edges m={H.m}")
    pool = list(range(H.m))
    chosen = _greedy_extend(list(H.masks), pool, [H.full_mask], lambda cl: len(cl) >= i + 1)
    chosen = chosen[:i]
    # pad with unused edges when fewer than i splitting steps were needed
    for q in pool:
        if len(chosen) == i:
            break
        if q not in chosen:
            chosen.append(q)
    return frozenset(chosen)


def bondy_prune(H: Hypergraph) -> frozenset[int]:
    """A test cover of at most n - 1 edges drawn from H's edges."""
    if not masks_test_cover(H.n, H.masks):
        raise ValueError("the edge set is not a test cover")
    chosen = _greedy_extend(list(H.masks), list(range(H.m)), [H.full_mask], lambda cl: len(cl) >= H.n)
    return frozenset(chosen)


def separating_subset(
    H: Hypergraph,
    X: Iterable[int],
    Y: Iterable[int],
    pool: Iterable[int] | None = None,
) -> frozenset[int]:
    """Edges from ``pool`` (default: all) separating every x in X from every y in Y.

    Runs the class-extension greedy on H restricted to X | Y, so the result has
    at most t_X + t_Y - 1 edges, where t_X, t_Y count the pool-induced classes
    meeting X and Y.
    """
    xm, ym = to_mask(X), to_mask(Y)
    if xm & ym:
        raise ValueError("X and Y must be disjoint")
    if not xm or not ym:
        return frozenset()
    pool = sorted(range(H.m) if pool is None else pool)
    restricted = {q: H.masks[q] & (xm | ym) for q in pool}

    def mixed(classes: list[int]) -> int | None:
        for c in classes:
            if c & xm and c & ym:
                return c
        return None

    full = refine([xm | ym], restricted.values())
    bad = mixed(full)
    if bad is not None:
        x = next(iter_bits(bad & xm))
        y = next(iter_bits(bad & ym))
        raise ValueError(f"vertices {x} and {y} are not separated by the available edges")
    masks = [0] * H.m
    for q, mk in restricted.items():
        masks[q] = mk
    chosen = _greedy_extend(masks, pool, [xm | ym], lambda cl: mixed(cl) is None)
    return frozenset(chosen)


def lower_bound_r(n: int, r: int) -> int:
    """Smallest possible test cover size when every edge has at most r vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    if r < 2:
        raise ValueError("r must be at least 2")
    return -(-2 * (n - 1) // (r + 1))


def lower_bound_log(n: int) -> int:
    """ceil(log2 n), by bit length."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1).bit_length()


def degree_profile_check(H: Hypergraph, T: Iterable[int], r: int | None = None) -> bool:
    """Check the degree profile every minimum-size (bound-attaining) test cover has.

    One vertex of degree 0, exactly one degree-1 vertex per edge of T, and
    degree 2 everywhere else.
    """
    T = H.check_edge_set(T)
    r = max(H.r, 2) if r is None else r
    bound = lower_bound_r(H.n, r)
    if len(T) != bound:
        raise ValueError(f"|T|={len(T)} differs from the lower bound {bound}")
    deg = degrees(H, T)
    if deg.count(0) != 1:
        return False
    for q in T:
        if sum(1 for v in H.edges[q] if deg[v] == 1) != 1:
            return False
    return all(d in (0, 1, 2) for d in deg) and deg.count(1) == len(T)
