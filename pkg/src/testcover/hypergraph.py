"""Hypergraph model, separation predicates and induced classes.

Vertices are the integers ``0..n-1``; edges are frozensets of vertex ids kept
in a fixed order (duplicates allowed, since every edge is a distinct test).
Each edge also has an integer bitmask view, which is what the hot loops use.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

EdgeSet = frozenset  # indices into Hypergraph.edges


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset[int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        edges = tuple(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for q, e in enumerate(edges):
            if not e:
                raise ValueError(f"edge {q} is empty; use Hypergraph.from_edges to drop it")
            if min(e) < 0 or max(e) >= self.n:
                raise ValueError(f"edge {q} has a vertex outside 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build a hypergraph, dropping empty edges (they separate nothing)."""
        kept = []
        for q, e in enumerate(edges):
            e = frozenset(e)
            if e:
                kept.append(e)
            else:
                log.info("dropped empty edge %d", q)
        return cls(n, tuple(kept))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def r(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(e) for e in self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def all_edges(self) -> frozenset[int]:
        return frozenset(range(self.m))

    def check_edge_set(self, T: Iterable[int]) -> frozenset[int]:
        T = frozenset(T)
        bad = [q for q in T if not 0 <= q < self.m]
        if bad:
            raise ValueError(f"edge indices {sorted(bad)} out of range for m={self.m}")
        return T

    def sub(self, T: Iterable[int]) -> "Hypergraph":
        """The hypergraph on the same vertices keeping only edges in ``T`` (in index order)."""
        return Hypergraph(self.n, tuple(self.edges[q] for q in sorted(T)))

    def without_edges(self, drop: Iterable[int]) -> "Hypergraph":
        drop = set(drop)
        return Hypergraph(self.n, tuple(e for q, e in enumerate(self.edges) if q not in drop))

    def with_isolated_vertex(self) -> "Hypergraph":
        return Hypergraph(self.n + 1, self.edges)


@dataclass(frozen=True)
class Partition:
    classes: tuple[frozenset[int], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> "Partition":
        classes = sorted((from_mask(c) for c in masks), key=min)
        class_of = [0] * n
        for i, c in enumerate(classes):
            for v in c:
                class_of[v] = i
        return cls(tuple(classes), tuple(class_of))


def _check_vertex(n: int, x: int) -> None:
    if not 0 <= x < n:
        raise ValueError(f"vertex {x} out of range 0..{n - 1}")


def separates(edge: Iterable[int], x: int, y: int, n: int | None = None) -> bool:
    if x == y:
        raise ValueError("separation is defined for distinct vertices")
    if n is not None:
        _check_vertex(n, x)
        _check_vertex(n, y)
    if x < 0 or y < 0:
        raise ValueError("vertex ids are nonnegative")
    edge = edge if isinstance(edge, (set, frozenset)) else set(edge)
    return (x in edge) != (y in edge)


def refine(classes: Iterable[int], masks: Iterable[int]) -> list[int]:
    """Split every class mask by every edge mask (inside/outside parts)."""
    classes = [c for c in classes if c]
    for e in masks:
        nxt = []
        for c in classes:
            inside = c & e
            if inside and inside != c:
                nxt.append(inside)
                nxt.append(c & ~e)
            else:
                nxt.append(c)
        classes = nxt
    return classes


def class_masks(H: Hypergraph, T: Iterable[int]) -> list[int]:
    masks = H.masks
    return refine([H.full_mask], (masks[q] for q in sorted(T)))


def count_classes(H: Hypergraph, T: Iterable[int]) -> int:
    return len(class_masks(H, T))


def induced_classes(H: Hypergraph, T: Iterable[int]) -> Partition:
    T = H.check_edge_set(T)
    return Partition.from_masks(H.n, class_masks(H, T))


def masks_test_cover(n: int, masks: Iterable[int]) -> bool:
    """True iff the edge masks give every vertex a distinct membership signature."""
    if n <= 1:
        return True
    return len(refine([(1 << n) - 1], masks)) == n


def is_test_cover(H: Hypergraph, T: Iterable[int] | None = None) -> bool:
    if T is None:
        return masks_test_cover(H.n, H.masks)
    T = H.check_edge_set(T)
    return masks_test_cover(H.n, (H.masks[q] for q in T))


def unseparated_pair(H: Hypergraph, T: Iterable[int]) -> tuple[int, int] | None:
    """Some pair of vertices no edge of ``T`` separates, or None."""
    for c in class_masks(H, T):
        if c & (c - 1):
            bits = iter_bits(c)
            return next(bits), next(bits)
    return None


def degree(H: Hypergraph, x: int, T: Iterable[int] | None = None) -> int:
    _check_vertex(H.n, x)
    idx = range(H.m) if T is None else T
    return sum(1 for q in idx if x in H.edges[q])


def degrees(H: Hypergraph, T: Iterable[int] | None = None) -> list[int]:
    deg = [0] * H.n
    idx = range(H.m) if T is None else T
    for q in idx:
        for v in H.edges[q]:
            deg[v] += 1
    return deg


def vertex_neighborhood(H: Hypergraph, X: Iterable[int], j: int) -> frozenset[int]:
    """Closed j-step vertex neighbourhood N_j[X]."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    cur = to_mask(X)
    if cur >> H.n:
        raise ValueError("X contains a vertex outside the hypergraph")
    for _ in range(j):
        nxt = cur
        for e in H.masks:
            if e & cur:
                nxt |= e
        if nxt == cur:
            break
        cur = nxt
    return from_mask(cur)


def edge_neighborhood(H: Hypergraph, F: Iterable[int], j: int) -> frozenset[int]:
    """Closed j-step edge neighbourhood N_j[F]: edges meeting the current set, iterated."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    cur = set(H.check_edge_set(F))
    masks = H.masks
    for _ in range(j):
        span = 0
        for q in cur:
            span |= masks[q]
        nxt = {q for q in range(H.m) if masks[q] & span} | cur
        if nxt == cur:
            break
        cur = nxt
    return frozenset(cur)


def vertices_of(H: Hypergraph, F: Iterable[int]) -> frozenset[int]:
    span = 0
    for q in F:
        span |= H.masks[q]
    return from_mask(span)


def isolates(H: Hypergraph, T: Iterable[int], X: Iterable[int]) -> bool:
    """True iff ``T`` separates every vertex of X from every vertex outside X."""
    xm = to_mask(X)
    return all(c & xm in (0, c) for c in class_masks(H, T))


def deletable_edges(H: Hypergraph, T: Iterable[int] | None = None) -> list[int]:
    """Edges q of ``T`` (default: all) such that ``T`` minus q is still a test cover.

    Uses the class structure of T: q is needed iff some pair is separated by
    q alone, i.e. removing q merges two classes of T.
    """
    T = sorted(range(H.m) if T is None else T)
    if not masks_test_cover(H.n, (H.masks[q] for q in T)):
        return []
    out = []
    for i, q in enumerate(T):
        rest = T[:i] + T[i + 1:]
        if masks_test_cover(H.n, (H.masks[p] for p in rest)):
            out.append(q)
    return out
