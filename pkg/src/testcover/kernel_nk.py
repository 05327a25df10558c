"""Kernel and decision pipeline for "is there a test cover of size at most n - k?".

Such a cover exists iff some T with |T| <= 2k induces at least |T| + k
classes (a k-mini test cover). The kernel either finds one greedily or builds
a family F whose classes constrain every edge, marks a bounded number of
components of the F-uncovered class G, and drops edges outside them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceeded, InvariantViolation
from .hypergraph import Hypergraph, class_masks, from_mask, masks_test_cover, refine


@dataclass(frozen=True)
class MiniTestCover:
    T: frozenset[int]
    class_count: int
    k: int

    def check(self) -> None:
        if len(self.T) > 2 * self.k or self.class_count < len(self.T) + self.k:
            raise InvariantViolation(f"not a {self.k}-mini test cover: |T|={len(self.T)}, classes={self.class_count}")


@dataclass
class FStructure:
    F: frozenset[int]
    classes: list[frozenset[int]]  # C_1..C_l, ordered by smallest vertex
    G: frozenset[int]
    C: frozenset[int]
    components: list[frozenset[int]] = field(default_factory=list)
    E_pair: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    E_single: dict[int, list[int]] = field(default_factory=dict)
    marked: list[frozenset[int]] = field(default_factory=list)


@dataclass(frozen=True)
class NKKernelResult:
    verdict: str  # "yes" or "reduced"
    kernel: Hypergraph | None
    k: int
    mini: MiniTestCover | None = None
    structure: FStructure | None = None
    kept_edges: tuple[int, ...] = ()  # kernel edge index -> original edge index


@dataclass(frozen=True)
class NKResult:
    verdict: bool
    witness: MiniTestCover | None
    kernel: NKKernelResult


def _count(H: Hypergraph, T) -> int:
    return len(refine([H.full_mask], (H.masks[q] for q in T)))


def find_mini_or_F(H: Hypergraph, k: int) -> MiniTestCover | FStructure:
    """Greedy: add an edge that raises the class count by 2, else a pair raising it by 3.

    With a single and b pair additions the set has a + 2b edges and at least
    1 + 2a + 3b classes, so once a + b >= k - 1 it is a k-mini test cover.
    At a fixpoint no edge cuts two F-classes and no pair of edges splits one
    F-class four ways, which are exactly the structural conditions on F.
    """
    if k < 2:
        raise ValueError("k must be at least 2 (smaller k is always a yes)")
    F: list[int] = []
    classes = [H.full_mask] if H.n else []
    steps = 0
    while steps < k - 1:
        base = len(classes)
        pick = None
        for q in range(H.m):
            if q in F:
                continue
            nxt = refine(classes, (H.masks[q],))
            if len(nxt) >= base + 2:
                pick = ([q], nxt)
                break
        if pick is None:
            free = [q for q in range(H.m) if q not in F]
            for q1, q2 in combinations(free, 2):
                nxt = refine(classes, (H.masks[q1], H.masks[q2]))
                if len(nxt) >= base + 3:
                    pick = ([q1, q2], nxt)
                    break
        if pick is None:
            break
        F.extend(pick[0])
        classes = pick[1]
        steps += 1
    if steps >= k - 1 or len(classes) >= len(F) + k:
        mini = MiniTestCover(frozenset(F), len(classes), k)
        mini.check()
        return mini
    return _structure(H, F, classes, k)


def _structure(H: Hypergraph, F: list[int], classes: list[int], k: int) -> FStructure:
    covered = 0
    for q in F:
        covered |= H.masks[q]
    G = from_mask(H.full_mask & ~covered)
    Cs = sorted((from_mask(c) for c in classes if c & covered), key=min)
    C = frozenset().union(*Cs) if Cs else frozenset()
    S = FStructure(frozenset(F), Cs, G, C)
    check_structure(H, S, k)
    return S


def check_structure(H: Hypergraph, S: FStructure, k: int) -> None:
    """Verify the four defining conditions of F by direct enumeration."""
    n_classes = len(S.classes) + (1 if S.G else 0)
    if not len(S.F) < 2 * k:
        raise InvariantViolation(f"|F|={len(S.F)} is not below 2k={2 * k}")
    if not n_classes < len(S.F) + k:
        raise InvariantViolation(f"F induces {n_classes} classes, not below |F|+k={len(S.F) + k}")
    all_classes = list(S.classes) + ([S.G] if S.G else [])
    for q, e in enumerate(H.edges):
        cut = [K for K in all_classes if K & e and K - e]
        if len(cut) > 1:
            raise InvariantViolation(f"edge {q} cuts {len(cut)} classes of F")
    for q1 in range(H.m):
        for q2 in range(q1 + 1, H.m):
            e, f = H.edges[q1], H.edges[q2]
            for K in all_classes:
                if (e & f) & K and (e - f) & K and (f - e) & K and K - (e | f):
                    raise InvariantViolation(f"edges {q1}, {q2} split a class of F four ways")
    if len(S.classes) >= 3 * k:
        raise InvariantViolation(f"l={len(S.classes)} is not below 3k")
    r = max(H.r, 1)
    if len(S.C) > (2 * k - 1) * r:
        raise InvariantViolation(f"|C|={len(S.C)} exceeds (2k-1)r")


def _components(H: Hypergraph, G: frozenset[int]) -> list[frozenset[int]]:
    portions = {e & G for e in H.edges if e & G}
    maximal = [p for p in portions if not any(p < o for o in portions)]
    maximal.sort(key=min)
    for i, a in enumerate(maximal):
        for b in maximal[i + 1:]:
            if a & b:
                raise InvariantViolation(f"components {sorted(a)} and {sorted(b)} overlap")
    return maximal


def build_marks(H: Hypergraph, k: int, S: FStructure) -> FStructure:
    """Mark components of G: up to 2k per ordered class pair, then up to 2k+1 per class.

    Components must be pairwise disjoint, which holds once |V| > (7k+2)r.
    """
    comps = _components(H, S.G)
    S.components = comps
    owner = {}
    for idx, comp in enumerate(comps):
        for v in comp:
            owner[v] = idx
    marked: set[int] = set()

    def comp_of(q: int) -> int | None:
        portion = H.edges[q] & S.G
        return owner[min(portion)] if portion else None

    def mark(pred, limit: int) -> list[int]:
        chosen: dict[int, int] = {}
        for q in range(H.m):
            c = comp_of(q)
            if c is None or c in marked or c in chosen or not pred(H.edges[q]):
                continue
            chosen[c] = q
        picks = sorted(chosen)[:limit]
        marked.update(picks)
        return [chosen[c] for c in picks]

    l = len(S.classes)
    for i in range(l):
        for j in range(l):
            if i != j:
                Ci, Cj = S.classes[i], S.classes[j]
                S.E_pair[i, j] = mark(lambda e: Ci <= e and not e & Cj, 2 * k)
    for i in range(l):
        Ci = S.classes[i]
        S.E_single[i] = mark(lambda e: Ci <= e, 2 * k + 1)
    S.marked = [comps[c] for c in sorted(marked)]
    if len(S.marked) >= max((3 * k - 1) ** 2 * (2 * k + 1), 1):
        raise InvariantViolation(f"{len(S.marked)} marked components exceed the bound")
    return S


def kernelize_nk(H: Hypergraph, k: int) -> NKKernelResult:
    """Reduce to an instance with at most 18 k^3 r vertices having a k-mini test cover iff H does."""
    if not masks_test_cover(H.n, H.masks):
        raise ValueError("the edge set is not a test cover")
    if k <= 1:
        return NKKernelResult("yes", None, k, mini=MiniTestCover(frozenset(), min(H.n, 1), k))
    r = max(H.r, 1)
    if H.n <= (7 * k + 2) * r:
        return NKKernelResult("reduced", H, k, kept_edges=tuple(range(H.m)))
    found = find_mini_or_F(H, k)
    if isinstance(found, MiniTestCover):
        return NKKernelResult("yes", None, k, mini=found)
    S = build_marks(H, k, found)
    inside = set().union(*S.marked) if S.marked else set()
    kept = [q for q, e in enumerate(H.edges) if not (e & S.G) or (e & S.G) <= inside]
    used = set().union(*(H.edges[q] for q in kept)) if kept else set()
    spare = sorted(set(range(H.n)) - used)
    keep_vertices = sorted(used | set(spare[:1]))
    relabel = {v: i for i, v in enumerate(keep_vertices)}
    K = Hypergraph(len(keep_vertices), tuple(frozenset(relabel[v] for v in H.edges[q]) for q in kept))
    if K.n > 18 * k**3 * r or K.m > (18 * k**3 * r) ** r:
        raise InvariantViolation(f"kernel with n={K.n}, m={K.m} exceeds the bound for k={k}, r={r}")
    return NKKernelResult("reduced", K, k, structure=S, kept_edges=tuple(kept))


def find_mini_cover(H: Hypergraph, k: int, budget: int | None = 2_000_000) -> MiniTestCover | None:
    """Exhaustive search over edge sets of size at most 2k for a k-mini test cover."""
    seen = 0
    for size in range(0, min(2 * k, H.m) + 1):
        for T in combinations(range(H.m), size):
            seen += 1
            if budget is not None and seen > budget:
                raise BudgetExceeded(f"mini test cover search exceeded {budget} subsets")
            c = _count(H, T) if H.n else 0
            if c >= size + k:
                return MiniTestCover(frozenset(T), c, k)
    return None


def solve_nk(H: Hypergraph, k: int, budget: int | None = 2_000_000) -> NKResult:
    """Decide whether H has a test cover with at most n - k edges, via the kernel."""
    res = kernelize_nk(H, k)
    if res.verdict == "yes":
        return NKResult(True, res.mini, res)
    mini = find_mini_cover(res.kernel, k, budget)
    if mini is None:
        return NKResult(False, None, res)
    lifted = MiniTestCover(frozenset(res.kept_edges[q] for q in mini.T), _count(H, [res.kept_edges[q] for q in mini.T]), k)
    lifted.check()
    return NKResult(True, lifted, res)
