"""Text format for instances, plus the small input formats used by ``tcov gen``.

Instance files::

    c any comment
    p tcov <n> <m>
    e <v1> ... <vt>      (m lines, 1-indexed vertices)
    b <edge-index>       (optional, 1-indexed into edge order)
"""

from __future__ import annotations

from .errors import ParseError
from .generators import RPartiteHypergraph, SimpleGraph
from .hypergraph import Hypergraph
from .kernel_mk import SubsetInstance


def _lines(text: str):
    for no, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        tokens = raw.split()
        if tokens and tokens[0] != "c":
            yield no, tokens


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def _header(text: str, kind: str, width: int):
    """Yield (line, tokens) after checking the single ``p <kind> ...`` header; first item is the header ints."""
    seen = False
    for no, tokens in _lines(text):
        if tokens[0] == "p":
            if seen:
                raise ParseError("duplicate p line", no)
            if len(tokens) != 2 + width or tokens[1] != kind:
                raise ParseError(f"expected 'p {kind}' with {width} numbers", no)
            values = _ints(tokens[2:], no)
            if any(v < 0 for v in values):
                raise ParseError("negative size in p line", no)
            seen = True
            yield no, values
        elif not seen:
            raise ParseError("p line must come first", no)
        else:
            yield no, tokens
    if not seen:
        raise ParseError("missing p line", 0)


def parse_instance(text: str) -> SubsetInstance:
    it = _header(text, "tcov", 2)
    _, (n, m) = next(it)
    edges: list[frozenset[int]] = []
    black: list[int] = []
    for no, tokens in it:
        tag, args = tokens[0], _ints(tokens[1:], no)
        if tag == "e":
            if len(edges) == m:
                raise ParseError(f"more than m={m} edge lines", no)
            if not args:
                raise ParseError("empty edge", no)
            if len(set(args)) != len(args):
                raise ParseError("repeated vertex in edge", no)
            for v in args:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex id {v} out of range 1..{n}", no)
            edges.append(frozenset(v - 1 for v in args))
        elif tag == "b":
            if len(args) != 1:
                raise ParseError("b line takes one edge index", no)
            if not 1 <= args[0] <= m:
                raise ParseError(f"edge index {args[0]} out of range 1..{m}", no)
            black.append(args[0] - 1)
        else:
            raise ParseError(f"unknown line type {tag!r}", no)
    if len(edges) != m:
        raise ParseError(f"expected {m} edge lines, found {len(edges)}", 0)
    return SubsetInstance(Hypergraph(n, tuple(edges)), frozenset(black), 0)


def serialize_instance(I: SubsetInstance | Hypergraph, comments: tuple[str, ...] = ()) -> str:
    if isinstance(I, Hypergraph):
        I = SubsetInstance(I, frozenset(), 0)
    H = I.H
    out = [f"c {c}" for c in comments]
    out.append(f"p tcov {H.n} {H.m}")
    out.extend("e " + " ".join(str(v + 1) for v in sorted(e)) for e in H.edges)
    out.extend(f"b {q + 1}" for q in sorted(I.black))
    return "\n".join(out) + "\n"


def parse_rpartite(text: str) -> RPartiteHypergraph:
    """``p rdm <r> <n'>`` then ``t j_1 ... j_r`` lines (1-indexed within each part)."""
    it = _header(text, "rdm", 2)
    _, (r, n1) = next(it)
    edges = []
    for no, tokens in it:
        if tokens[0] != "t":
            raise ParseError(f"unknown line type {tokens[0]!r}", no)
        args = _ints(tokens[1:], no)
        if len(args) != r or not all(1 <= j <= n1 for j in args):
            raise ParseError(f"t line needs {r} indices in 1..{n1}", no)
        edges.append(tuple(j - 1 for j in args))
    return RPartiteHypergraph(r, n1, tuple(edges))


def parse_graph(text: str) -> SimpleGraph:
    """``p edge <n> <m>`` then ``e u v`` lines (1-indexed)."""
    it = _header(text, "edge", 2)
    _, (n, m) = next(it)
    edges = []
    for no, tokens in it:
        if tokens[0] != "e":
            raise ParseError(f"unknown line type {tokens[0]!r}", no)
        args = _ints(tokens[1:], no)
        if len(args) != 2 or not all(1 <= v <= n for v in args):
            raise ParseError(f"e line needs two vertices in 1..{n}", no)
        edges.append((args[0] - 1, args[1] - 1))
    if len(edges) != m:
        raise ParseError(f"expected {m} edge lines, found {len(edges)}", 0)
    try:
        return SimpleGraph(n, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
