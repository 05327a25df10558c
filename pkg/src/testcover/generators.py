"""Instance generators: tight grids, hardness-reduction instances, seeded random.

Vertex layouts are row-major and fixed so that witnesses map back to the
source objects:

* ``gen_grid(r)``: x_{i,j} (1-based i, j) is vertex ``(i-1)*r + (j-1)``; edges are
  rows 1..r-1 followed by columns 1..r-1.
* ``reduce_from_matching``: x_{i,j} is ``(i-1)*n' + (j-1)``; then y_{i,p} for
  i = 1..r-1 and p = r-1, 2(r-1), ..., n' in that order; y_0 is the last vertex.
  Edges are E(G) in input order followed by e_{i,p} in the same order as y_{i,p}.
* ``reduce_from_p3``: graph vertices keep their ids; the isolated vertex is ``n``.

Random instances use the SplitMix64 generator so they can be
reproduced anywhere: edge size is ``1 + next() % min(r, n)`` and the vertices are
drawn by a partial Fisher-Yates shuffle with index ``i + next() % (n - i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .hypergraph import Hypergraph, class_masks, is_test_cover, iter_bits

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next())


@dataclass(frozen=True)
class RPartiteHypergraph:
    """r-partite r-uniform hypergraph; edge ``(j_1..j_r)`` is {x_{1,j_1}, ..., x_{r,j_r}} (0-based j)."""

    r: int
    n_prime: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.r < 1 or self.n_prime < 0:
            raise ValueError("need r >= 1 and n' >= 0")
        for e in self.edges:
            if len(e) != self.r or not all(0 <= j < self.n_prime for j in e):
                raise ValueError(f"edge {e} must pick one of {self.n_prime} vertices in each of {self.r} parts")

    def vertex(self, i: int, j: int) -> int:
        """Vertex id of x_{i+1, j+1} (both arguments 0-based)."""
        return i * self.n_prime + j

    @property
    def parts(self) -> list[range]:
        return [range(i * self.n_prime, (i + 1) * self.n_prime) for i in range(self.r)]

    def edge_vertices(self, e: Sequence[int]) -> frozenset[int]:
        return frozenset(self.vertex(i, j) for i, j in enumerate(e))


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}-{v} out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))


def _grid_vertices(r: int, drop_corner: bool) -> list[tuple[int, int]]:
    cells = [(i, j) for i in range(r) for j in range(r)]
    if drop_corner:
        cells.pop()
    return cells


def _grid_edges(r: int, index: dict[tuple[int, int], int]) -> list[frozenset[int]]:
    rows = [frozenset(index[i, j] for j in range(r) if (i, j) in index) for i in range(r - 1)]
    cols = [frozenset(index[i, j] for i in range(r) if (i, j) in index) for j in range(r - 1)]
    return rows + cols


def gen_grid(r: int) -> Hypergraph:
    if r < 2:
        raise ValueError("r must be at least 2")
    index = {cell: v for v, cell in enumerate(_grid_vertices(r, False))}
    return Hypergraph(r * r, tuple(_grid_edges(r, index)))


def gen_grid_multi(r: int, copies: int, verify_cap: int = 12) -> Hypergraph:
    """Disjoint union of ``copies`` grids; every copy after the first drops x_{r,r}.

    The result is self-checked: it must be a test cover with exactly one
    isolated vertex, and when it has at most ``verify_cap`` edges the exact
    solver must confirm the minimum equals the size lower bound.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if copies < 1:
        raise ValueError("copies must be at least 1")
    edges: list[frozenset[int]] = []
    offset = 0
    for c in range(copies):
        cells = _grid_vertices(r, drop_corner=c > 0)
        index = {cell: offset + v for v, cell in enumerate(cells)}
        edges.extend(_grid_edges(r, index))
        offset += len(cells)
    H = Hypergraph(offset, tuple(edges))

    from .bounds import lower_bound_r
    from .oracle import exact_min

    covered = set().union(*H.edges) if H.edges else set()
    if not is_test_cover(H) or H.n - len(covered) != 1:
        raise AssertionError("grid gluing failed self-verification")
    if H.m <= verify_cap:
        size, _ = exact_min(H)
        if size != lower_bound_r(H.n, r) or size != copies * 2 * (r - 1):
            raise AssertionError(f"grid gluing failed self-verification: minimum {size}")
    return H


def reduce_from_matching(G: RPartiteHypergraph) -> tuple[Hypergraph, int]:
    """Test-r-Cover instance with a cover of size 2n' iff G has a perfect matching."""
    r, n1 = G.r, G.n_prime
    if r < 3:
        raise ValueError("the matching reduction needs r >= 3")
    if n1 % (r - 1):
        raise ValueError(f"n'={n1} is not divisible by r-1={r - 1}")
    nxt = r * n1
    gadget = []
    for i in range(r - 1):
        for p in range(r - 1, n1 + 1, r - 1):
            y = nxt
            nxt += 1
            # x_{i,p-r+2} .. x_{i,p} in 1-based terms
            gadget.append(frozenset(G.vertex(i, j - 1) for j in range(p - r + 2, p + 1)) | {y})
    n = nxt + 1  # y_0
    assert n == r * n1 + n1 + 1
    edges = [G.edge_vertices(e) for e in G.edges] + gadget
    return Hypergraph(n, tuple(edges)), 2 * n1


def reduce_from_p3(G: SimpleGraph) -> tuple[Hypergraph, int]:
    """Test-2-Cover instance with a cover of size 2n/3 iff G has a perfect P3-packing."""
    if G.n % 3:
        raise ValueError(f"|V(G)|={G.n} is not divisible by 3")
    H = Hypergraph(G.n + 1, tuple(frozenset(e) for e in G.edges))
    return H, 2 * G.n // 3


def gen_random(n: int, m: int, r: int, seed: int) -> Hypergraph:
    if n < 1 or m < 0 or r < 2:
        raise ValueError("need n >= 1, m >= 0, r >= 2")
    rng = SplitMix64(seed)
    top = min(r, n)
    edges = []
    for _ in range(m):
        edges.append(_random_subset(rng, n, 1 + rng.below(top)))
    return Hypergraph(n, tuple(edges))


def _random_subset(rng: SplitMix64, n: int, size: int) -> frozenset[int]:
    pool = list(range(n))
    for i in range(size):
        j = i + rng.below(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return frozenset(pool[:size])


def gen_laminar(n: int, r: int, extra: int, seed: int) -> Hypergraph:
    """Consecutive blocks of size <= r, each possibly with a nested prefix, plus ``extra`` random edges.

    The result is completed to a test cover. These instances have few
    crossing edges, so the n - k kernel usually has to build its F family
    instead of finding a small cover right away.
    """
    if n < 1 or r < 1 or extra < 0:
        raise ValueError("need n >= 1, r >= 1, extra >= 0")
    rng = SplitMix64(seed)
    edges: list[frozenset[int]] = []
    v = 0
    while v < n:
        block = list(range(v, min(n, v + 1 + rng.below(r))))
        v += len(block)
        edges.append(frozenset(block))
        if len(block) > 1 and rng.below(2):
            edges.append(frozenset(block[: 1 + rng.below(len(block) - 1)]))
    for _ in range(extra):
        edges.append(_random_subset(rng, n, 1 + rng.below(min(r, n))))
    return complete_to_test_cover(Hypergraph(n, tuple(edges)))


def gen_anchored(n: int, r: int, attach: int, seed: int) -> Hypergraph:
    """Laminar blocks next to the core {0,1}, {1,2}, plus ``attach`` edges {c} + block prefix, c in {0,1,2}.

    The core splits 0, 1, 2 apart; each attached edge holds one core vertex
    and a nested piece of a block, so it meets a core class and the uncovered
    part at once. This is the shape the n - k marking step deals with.
    """
    if r < 2 or n < 4 or attach < 0:
        raise ValueError("need r >= 2, n >= 4, attach >= 0")
    rng = SplitMix64(seed)
    edges = [frozenset({0, 1}), frozenset({1, 2})]
    blocks = []
    v = 3
    while v < n:
        block = list(range(v, min(n, v + 1 + rng.below(r))))
        v += len(block)
        blocks.append(block)
        edges.append(frozenset(block))
    for _ in range(attach):
        block = blocks[rng.below(len(blocks))]
        prefix = block[: 1 + rng.below(min(len(block), r - 1))]
        edges.append(frozenset({rng.below(3)}) | frozenset(prefix))
    return complete_to_test_cover(Hypergraph(n, tuple(edges)))


def complete_to_test_cover(H: Hypergraph) -> Hypergraph:
    """Append a singleton edge for every vertex except the lowest of its class."""
    edges = list(H.edges)
    for c in class_masks(H, range(H.m)):
        edges.extend(frozenset({v}) for v in list(iter_bits(c))[1:])
    out = Hypergraph(H.n, tuple(edges))
    assert is_test_cover(out)
    return out


def random_graph(n: int, seed: int, p_num: int = 1, p_den: int = 2) -> SimpleGraph:
    """G(n, p) with p = p_num / p_den, driven by SplitMix64."""
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.below(p_den) < p_num]
    return SimpleGraph(n, tuple(edges))


def candidate_edges(r: int, n_prime: int) -> list[tuple[int, ...]]:
    """Every possible edge of an r-partite r-uniform hypergraph with parts of size n'."""
    return list(product(range(n_prime), repeat=r))
