"""Kernelization for the subset-restricted m - k problem.

A ``SubsetInstance`` asks for a test cover that contains every black edge and
has at most m - k edges. The reducer works on a mutable working copy and
records every change as primitive operations, so a ``ReductionTrace`` can be
replayed on the input to reproduce the output.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .bounds import separating_subset
from .errors import InvariantViolation
from .hypergraph import (
    Hypergraph,
    class_masks,
    edge_neighborhood,
    from_mask,
    isolates,
    masks_test_cover,
    to_mask,
    vertices_of,
)


@dataclass(frozen=True)
class SubsetInstance:
    H: Hypergraph
    black: frozenset[int] = frozenset()
    k: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "black", self.H.check_edge_set(self.black))


class Color(enum.Enum):
    BLACK = "black"
    ORANGE = "orange"
    GREEN = "green"
    UNCOLORED = "uncolored"


@dataclass(frozen=True)
class EdgeColoring:
    colors: tuple[Color, ...]

    def of(self, color: Color) -> list[int]:
        return [q for q, c in enumerate(self.colors) if c is color]


@dataclass(frozen=True)
class TraceEvent:
    rule: str
    ops: tuple[tuple, ...]
    k_delta: int = 0


@dataclass
class ReductionTrace:
    events: list[TraceEvent] = field(default_factory=list)

    def __iter__(self):
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def rules(self) -> list[str]:
        return [ev.rule for ev in self.events]


@dataclass(frozen=True)
class MKKernelResult:
    verdict: str  # "yes", "no" or "reduced"
    kernel: SubsetInstance | None
    trace: ReductionTrace


def subset_answer(I: SubsetInstance, cap: int = 22) -> bool:
    """Oracle: is there a test cover containing every black edge with at most m - k edges?"""
    from .oracle import has_cover_of_size

    return has_cover_of_size(I.H, I.H.m - I.k, cap=cap, forced=I.black)[0]


def kernel_vertex_bound(k: int, r: int) -> int:
    return (k - 1) * k**5 * r**16 + 1


def kernel_edge_bound(k: int, r: int) -> int:
    return (k - 1) * k**5 * r**16 + k


class _Work:
    """Mutable working copy of a SubsetInstance with an operation log."""

    def __init__(self, I: SubsetInstance, trace: ReductionTrace | None = None) -> None:
        self.n = I.H.n
        self.edges = [set(e) for e in I.H.edges]
        self.black = [q in I.black for q in range(I.H.m)]
        self.k = I.k
        self.trace = trace
        self._ops: list[tuple] = []
        self._k0 = self.k

    # -- primitive operations (replayable) --
    def apply(self, op: tuple) -> None:
        kind = op[0]
        if kind == "del_edge":
            del self.edges[op[1]]
            del self.black[op[1]]
        elif kind == "set_edge":
            self.edges[op[1]] = set(op[2])
        elif kind == "add_edge":
            self.edges.append(set(op[1]))
            self.black.append(op[2])
        elif kind == "set_black":
            self.black[op[1]] = op[2]
        elif kind == "del_vertex":
            x = op[1]
            self.edges = [{v - (v > x) for v in e if v != x} for e in self.edges]
            self.n -= 1
        elif kind == "k":
            self.k += op[1]
        else:
            raise ValueError(f"unknown trace operation {kind!r}")
        self._ops.append(op)

    def commit(self, rule: str) -> None:
        if self.trace is not None:
            self.trace.events.append(TraceEvent(rule, tuple(self._ops), self.k - self._k0))
        self._ops = []
        self._k0 = self.k

    # -- views --
    @property
    def m(self) -> int:
        return len(self.edges)

    def snapshot(self) -> SubsetInstance:
        H = Hypergraph(self.n, tuple(frozenset(e) for e in self.edges))
        return SubsetInstance(H, frozenset(q for q, b in enumerate(self.black) if b), self.k)

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, tuple(frozenset(e) for e in self.edges))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def deletable(self, q: int) -> bool:
        masks = [to_mask(e) for p, e in enumerate(self.edges) if p != q]
        return masks_test_cover(self.n, masks)

    # -- Rule 1 --
    def rule_black_singleton(self) -> bool:
        deg = self.degrees()
        for q, e in enumerate(self.edges):
            if self.black[q] and len(e) == 1:
                (x,) = e
                if deg[x] == 1:
                    self.apply(("del_edge", q))
                    self.apply(("del_vertex", x))
                    self.commit("rule1")
                    return True
        return False

    # -- Rule 2 --
    def rule_black_overlap(self) -> bool:
        blacks = [q for q in range(self.m) if self.black[q]]
        for b in blacks:
            eb = self.edges[b]
            for q, e in enumerate(self.edges):
                if q == b or not eb <= e:
                    continue
                if e == eb:
                    # a duplicate of a black edge: redundant either way
                    was_black = self.black[q]
                    self.apply(("del_edge", q))
                    if not was_black:
                        self.apply(("k", -1))
                    self.commit("rule2-duplicate")
                else:
                    self.apply(("set_edge", q, frozenset(e - eb)))
                    self.commit("rule2-subset")
                return True
        for i, b in enumerate(blacks):
            for b2 in blacks[i + 1:]:
                e1, e2 = self.edges[b], self.edges[b2]
                if e1 & e2 and e1 - e2 and e2 - e1:
                    pieces = (frozenset(e1 - e2), frozenset(e2 - e1), frozenset(e1 & e2))
                    self.apply(("del_edge", b2))
                    self.apply(("del_edge", b))
                    for p in pieces:
                        self.apply(("add_edge", p, True))
                    self.commit("rule2-split")
                    return True
        return False

    def rules_fixpoint(self) -> bool:
        changed = False
        while self.rule_black_singleton() or self.rule_black_overlap():
            changed = True
        return changed

    # -- degree reduction --
    def degree_round(self, r: int) -> bool:
        """One application of the degree-reduction step, if some vertex is too heavy."""
        if self.k <= 0:
            return False
        limit = self.k * r * r
        deg = self.degrees()
        heavy = [v for v in range(self.n) if deg[v] > limit]
        if not heavy:
            return False
        x = heavy[0]
        X = _isolated_core(self.hypergraph(), x, self.k, r)
        match = [q for q, e in enumerate(self.edges) if e == X and not self.black[q]]
        if match:
            self.apply(("del_edge", match[0]))
            self.apply(("k", -1))
            self.commit("degree-delete")
        else:
            if any(e == X for e in self.edges):
                raise InvariantViolation(f"core {sorted(X)} only matches a black edge")
            self.apply(("add_edge", X, True))
            self.commit("degree-black")
            self.rules_fixpoint()
        return True

    # -- coloring --
    def color(self) -> tuple[EdgeColoring, bool]:
        changed = False
        restart = True
        while restart:
            restart = False
            for q in range(self.m):
                if not self.black[q] and not self.deletable(q):
                    self.apply(("set_black", q, True))
                    self.commit("color-black")
                    self.rules_fixpoint()
                    changed = True
                    restart = True
                    break
        deg = self.degrees()
        colors = []
        for q, e in enumerate(self.edges):
            if self.black[q]:
                colors.append(Color.BLACK)
            elif any(deg[v] == 1 for v in e):
                colors.append(Color.ORANGE)
            else:
                colors.append(Color.GREEN)
        return EdgeColoring(tuple(colors)), changed

    # -- Rule 3 --
    def rule_orange(self, coloring: EdgeColoring) -> bool:
        H = self.hypergraph()
        green = set(coloring.of(Color.GREEN))
        for o in coloring.of(Color.ORANGE):
            if not edge_neighborhood(H, {o}, 2) & green:
                self.apply(("del_edge", o))
                self.apply(("k", -1))
                self.commit("rule3")
                return True
        return False


def _isolated_core(H: Hypergraph, x: int, k: int, r: int) -> frozenset[int]:
    """Grow a vertex set around x that stays isolated after deleting any k edges.

    Collects k + 1 pairwise disjoint groups E_i + {e_i} (e_i contains X,
    |E_i| <= r - 1) each isolating X; when the remaining edges stop isolating
    X, X grows to its class and the collection restarts.
    """
    remaining = set(range(H.m))
    X = frozenset({x})
    i, j = 1, 1
    while i <= k + 1:
        if isolates(H, remaining, X):
            holders = [q for q in sorted(remaining) if X <= H.edges[q]]
            if not holders:
                raise InvariantViolation(f"no remaining edge contains {sorted(X)}")
            e_i = holders[0]
            E_i = separating_subset(H, X, H.edges[e_i] - X, pool=remaining)
            if len(E_i) > r - 1:
                raise InvariantViolation(f"|E_{i}|={len(E_i)} exceeds r-1={r - 1}")
            remaining -= E_i | {e_i}
            i += 1
        else:
            xm = to_mask(X)
            cls = next(c for c in class_masks(H, remaining) if c & xm)
            X = from_mask(cls)
            i, j = 1, j + 1
            if j > r:
                raise InvariantViolation(f"core growth reached j={j} > r={r}")
    return X


# ---------------------------------------------------------------------------
# public single-step API


def apply_rule_black_singleton(I: SubsetInstance) -> SubsetInstance | None:
    """Rule 1 once: drop a black singleton {x} whose vertex has degree 1. None if it does not fire."""
    w = _Work(I)
    return w.snapshot() if w.rule_black_singleton() else None


def apply_rule_black_overlap(I: SubsetInstance) -> SubsetInstance | None:
    """Rule 2 once: shrink an edge containing a black edge, or split two mutually cutting black edges."""
    w = _Work(I)
    return w.snapshot() if w.rule_black_overlap() else None


def reduce_degrees(I: SubsetInstance, r: int | None = None, trace: ReductionTrace | None = None) -> SubsetInstance:
    """Repeat the degree-reduction step (with Rules 1-2 in between) until every degree is at most k r^2."""
    r = max(I.H.r, 2) if r is None else r
    w = _Work(I, trace)
    w.rules_fixpoint()
    while w.degree_round(r):
        w.rules_fixpoint()
    return w.snapshot()


def color_edges(I: SubsetInstance, trace: ReductionTrace | None = None) -> tuple[SubsetInstance, EdgeColoring]:
    """Blacken every non-deletable edge (re-running Rules 1-2), then color the rest orange or green."""
    w = _Work(I, trace)
    coloring, _ = w.color()
    return w.snapshot(), coloring


def apply_rule_orange(I: SubsetInstance, coloring: EdgeColoring) -> SubsetInstance | None:
    """Rule 3 once: delete an orange edge with no green edge within distance 2, lowering k."""
    w = _Work(I)
    return w.snapshot() if w.rule_orange(coloring) else None


def greedy_green_packing(I: SubsetInstance, coloring: EdgeColoring) -> frozenset[int]:
    """Green edges, taken in index order, whose closed neighbourhoods are pairwise disjoint."""
    H = I.H
    packed: list[int] = []
    used: set[int] = set()
    for g in coloring.of(Color.GREEN):
        nb = edge_neighborhood(H, {g}, 1)
        if not nb & used:
            packed.append(g)
            used |= nb
    return frozenset(packed)


def check_coloring(I: SubsetInstance, coloring: EdgeColoring) -> None:
    H = I.H
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v] += 1
    for q, c in enumerate(coloring.colors):
        rest = [H.masks[p] for p in range(H.m) if p != q]
        deletable = masks_test_cover(H.n, rest)
        if (c is Color.BLACK) != (q in I.black or not deletable):
            raise InvariantViolation(f"edge {q}: black status inconsistent")
        has_leaf = any(deg[v] == 1 for v in H.edges[q])
        if c is Color.ORANGE and not (deletable and has_leaf):
            raise InvariantViolation(f"edge {q}: bad orange")
        if c is Color.GREEN and not (deletable and not has_leaf):
            raise InvariantViolation(f"edge {q}: bad green")
    if coloring.of(Color.ORANGE) and 0 in deg:
        raise InvariantViolation("orange edge while an isolated vertex exists")


def _check_kernel(I: SubsetInstance, coloring: EdgeColoring, r: int) -> None:
    H, k = I.H, I.k
    blacks = sorted(I.black)
    for i, b in enumerate(blacks):
        for b2 in blacks[i + 1:]:
            if H.edges[b] & H.edges[b2]:
                raise InvariantViolation(f"black edges {b} and {b2} intersect")
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v] += 1
    if max(deg, default=0) > k * r * r:
        raise InvariantViolation("degree bound violated")
    green = coloring.of(Color.GREEN)
    reach = vertices_of(H, edge_neighborhood(H, green, 3)) if green else frozenset()
    for v in range(H.n):
        if deg[v] and v not in reach:
            raise InvariantViolation(f"vertex {v} is not within three steps of a green edge")
    if H.n > kernel_vertex_bound(k, r) or H.m > kernel_edge_bound(k, r):
        raise InvariantViolation(f"kernel of size n={H.n}, m={H.m} exceeds the bound for k={k}, r={r}")


def kernelize_mk(I: SubsetInstance, r: int | None = None) -> MKKernelResult:
    """Run the reduction rules to a joint fixpoint and answer or return the kernel.

    Order: Rules 1-2, degree reduction, coloring, Rule 3; any change restarts
    the sequence. Afterwards the answer is yes if k green edges pack or if
    m - k >= n, no if m - k < 0, and otherwise the reduced instance is
    returned after its invariants and size bounds are checked.
    """
    if not masks_test_cover(I.H.n, I.H.masks):
        raise ValueError("the edge set is not a test cover")
    r = max(I.H.r, 2) if r is None else r
    trace = ReductionTrace()
    w = _Work(I, trace)
    while True:
        if w.k <= 0:
            return MKKernelResult("yes", None, trace)
        if w.rules_fixpoint():
            continue
        if w.k <= 0:
            continue
        if w.degree_round(r):
            continue
        coloring, changed = w.color()
        if changed:
            continue
        if w.rule_orange(coloring):
            continue
        break
    kernel = w.snapshot()
    if len(greedy_green_packing(kernel, coloring)) >= kernel.k:
        return MKKernelResult("yes", None, trace)
    if kernel.H.m - kernel.k >= kernel.H.n:
        return MKKernelResult("yes", None, trace)
    if kernel.H.m - kernel.k < 0:
        return MKKernelResult("no", kernel, trace)
    _check_kernel(kernel, coloring, r)
    return MKKernelResult("reduced", kernel, trace)


def replay(I: SubsetInstance, trace: Iterable[TraceEvent]) -> SubsetInstance:
    w = _Work(I)
    for ev in trace:
        for op in ev.ops:
            w.apply(op)
    return w.snapshot()


def encode_black_gadget(I: SubsetInstance, r: int | None = None) -> tuple[Hypergraph, int]:
    """Turn a subset instance into a plain m - k instance.

    A black edge that is needed anyway (its removal breaks the test cover)
    just loses its color. Any other black edge b becomes b + {x1} together
    with new edges {x1, x2, x3} and {x3, x4}; those three edges are forced in
    every test cover, which forces b. Each gadget adds 4 vertices and 2 edges.
    """
    H = I.H
    r = max(H.r, 3) if r is None else r
    edges = list(H.edges)
    extra: list[frozenset[int]] = []
    n = H.n
    for b in sorted(I.black):
        rest = [H.masks[p] for p in range(H.m) if p != b]
        if not masks_test_cover(H.n, rest):
            continue
        if len(H.edges[b]) > r - 1:
            raise InvariantViolation(f"black edge {b} has {len(H.edges[b])} vertices; the gadget needs at most r-1={r - 1}")
        x1, x2, x3, x4 = n, n + 1, n + 2, n + 3
        n += 4
        edges[b] = H.edges[b] | {x1}
        extra += [frozenset({x1, x2, x3}), frozenset({x3, x4})]
    return Hypergraph(n, tuple(edges + extra)), I.k
