"""``tcov``: generate, bound, solve, kernelize and verify test cover instances.

Exit codes: 0 yes/success, 1 no, 2 error or budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import generators, io
from .bounds import lower_bound_log, lower_bound_r
from .errors import BudgetExceeded, InvariantViolation, ParseError
from .fpt_mk import solve_mk
from .hypergraph import Hypergraph, is_test_cover, unseparated_pair
from .kernel_mk import SubsetInstance, kernelize_mk, subset_answer
from .kernel_nk import kernelize_nk, solve_nk
from .oracle import DEFAULT_CAP, brute_force_min, env_node_budget, exact_min, greedy_cover

log = logging.getLogger(__name__)

YES, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """Ordered report fields, printed as ``key value`` lines or one JSON object."""

    def __init__(self) -> None:
        self.fields: dict[str, object] = {}
        self.text: list[str] = []

    def add(self, key: str, value, text: str | None = None) -> None:
        self.fields[key] = value
        self.text.append(text if text is not None else f"{key} {_fmt(value)}")

    def note(self, line: str) -> None:
        self.text.append(line)

    def emit(self, out: TextIO, as_json: bool) -> None:
        if as_json:
            out.write(json.dumps(self.fields, sort_keys=False) + "\n")
        else:
            for line in self.text:
                out.write(line + "\n")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value) if value else "-"
    return str(value)


def _op(op: tuple) -> list:
    return [sorted(a) if isinstance(a, frozenset) else a for a in op]


def _one_based(edges) -> list[int]:
    return [q + 1 for q in sorted(edges)]


def _load(path: str) -> SubsetInstance:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return io.parse_instance(text)


def _plain(I: SubsetInstance, command: str) -> Hypergraph:
    if I.black:
        raise UsageError(f"{command} does not accept black edges; use 'kernel --mode mk' or 'oracle'")
    return I.H


def _need_k(args) -> int:
    if args.k is None:
        raise UsageError(f"--mode {args.mode} needs -k")
    if args.k < 0:
        raise UsageError("k must be nonnegative")
    return args.k


def cmd_gen(args, rep: Report) -> int:
    target = None
    if args.grid is not None:
        H = generators.gen_grid(args.grid)
    elif args.grid_multi is not None:
        H = generators.gen_grid_multi(*args.grid_multi)
    elif args.random is not None:
        n, m, r, seed = args.random
        H = generators.gen_random(n, m, r, seed)
    elif args.from_matching is not None:
        H, target = generators.reduce_from_matching(io.parse_rpartite(Path(args.from_matching).read_text()))
    else:
        H, target = generators.reduce_from_p3(io.parse_graph(Path(args.from_p3).read_text()))
    comments = (f"target {target}",) if target is not None else ()
    text = io.serialize_instance(H, comments)
    rep.add("n", H.n)
    rep.add("m", H.m)
    rep.add("r", H.r)
    if target is not None:
        rep.add("target", target)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        rep.add("output", args.output)
    else:
        rep.fields["instance"] = text
        rep.text = [text.rstrip("\n")]
    return YES


def cmd_bound(args, rep: Report) -> int:
    H = _load(args.instance).H
    r = max(H.r, 2)
    rep.add("lb_r", lower_bound_r(H.n, r))
    rep.add("lb_log", lower_bound_log(H.n))
    rep.add("ub_bondy", max(H.n - 1, 0), f"ub_bondy ≤ {max(H.n - 1, 0)}")
    return YES


def cmd_solve(args, rep: Report) -> int:
    H = _plain(_load(args.instance), "solve")
    if not is_test_cover(H):
        rep.add("test_cover", False, "c the edge set is not a test cover")
        rep.add("answer", False, "s no")
        return NO
    budget = env_node_budget()
    if args.mode == "exact":
        size, cover = exact_min(H, node_budget=budget)
        rep.add("min", size)
        rep.add("cover", _one_based(cover))
        return YES
    if args.mode == "approx":
        cover = greedy_cover(H)
        rep.add("size", len(cover))
        rep.add("cover", _one_based(cover))
        return YES
    k = _need_k(args)
    if args.mode == "mk":
        res = solve_mk(H, k, node_budget=budget)
        rep.add("answer", res.verdict, "s " + _fmt(res.verdict))
        rep.add("target", H.m - k)
        rep.add("nodes", res.stats.nodes_visited)
        if res.witness is not None:
            rep.add("cover", _one_based(res.witness))
        return YES if res.verdict else NO
    res = solve_nk(H, k)
    rep.add("answer", res.verdict, "s " + _fmt(res.verdict))
    rep.add("target", H.n - k)
    if res.witness is not None:
        rep.add("mini", _one_based(res.witness.T))
        rep.add("classes", res.witness.class_count)
    return YES if res.verdict else NO


def cmd_kernel(args, rep: Report) -> int:
    I = _load(args.instance)
    k = _need_k(args)
    if not is_test_cover(I.H):
        raise UsageError("the edge set is not a test cover")
    if args.mode == "mk":
        res = kernelize_mk(SubsetInstance(I.H, I.black, k))
        rep.add("verdict", res.verdict)
        if args.trace:
            rep.fields["trace"] = [{"rule": ev.rule, "ops": [_op(op) for op in ev.ops], "k_delta": ev.k_delta} for ev in res.trace]
            for ev in res.trace:
                rep.note(f"c rule {ev.rule} k_delta {ev.k_delta} ops {' '.join(':'.join(str(a).replace(' ', '') for a in _op(op)) for op in ev.ops)}")
        rep.add("rules_fired", len(res.trace))
        kernel, kk = res.kernel, (res.kernel.k if res.kernel else None)
    else:
        _plain(I, "kernel --mode nk")
        res = kernelize_nk(I.H, k)
        rep.add("verdict", res.verdict)
        if args.trace and res.structure is not None:
            S = res.structure
            rep.add("F", _one_based(S.F))
            rep.add("classes", len(S.classes))
            rep.add("components", len(S.components))
            rep.add("marked", len(S.marked))
        kernel = SubsetInstance(res.kernel, frozenset(), k) if res.kernel is not None else None
        kk = k if kernel else None
    if kernel is not None:
        rep.add("n", kernel.H.n)
        rep.add("m", kernel.H.m)
        rep.add("k", kk)
        if args.output:
            Path(args.output).write_text(io.serialize_instance(kernel, (f"k {kk}",)), encoding="utf-8")
            rep.add("output", args.output)
    if res.verdict == "no":
        return NO
    return YES


def cmd_verify(args, rep: Report) -> int:
    H = _load(args.instance).H
    try:
        cover = [int(t) - 1 for t in args.cover.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --cover list {args.cover!r}") from None
    T = H.check_edge_set(cover)
    pair = unseparated_pair(H, T)
    if pair is None:
        rep.add("valid", True, f"valid test cover, size {len(T)}")
        rep.fields["size"] = len(T)
        return YES
    x, y = pair
    rep.add("valid", False, f"not a test cover: vertices {x + 1} and {y + 1} are not separated")
    rep.fields["unseparated"] = [x + 1, y + 1]
    return NO


def cmd_oracle(args, rep: Report) -> int:
    I = _load(args.instance)
    if not is_test_cover(I.H):
        rep.add("test_cover", False, "c the edge set is not a test cover")
        rep.add("answer", False, "s no")
        return NO
    size, cover = brute_force_min(I.H, cap=args.cap, forced=I.black)
    rep.add("min", size)
    rep.add("cover", _one_based(cover))
    if args.k is not None:
        ans = subset_answer(SubsetInstance(I.H, I.black, args.k), cap=args.cap)
        rep.add("answer", ans, "s " + _fmt(ans))
        return YES if ans else NO
    return YES


def build_parser() -> argparse.ArgumentParser:
    def globals_(defaults: bool) -> argparse.ArgumentParser:
        # flags may go before or after the subcommand; only the top level sets defaults
        g = argparse.ArgumentParser(add_help=False)
        d = {} if defaults else {"default": argparse.SUPPRESS}
        g.add_argument("--json", action="store_true", help="print the report as one JSON object", **d)
        g.add_argument("--threads", type=int, help="accepted; solvers run single-threaded", **({"default": 1} if defaults else d))
        g.add_argument("-v", "--verbose", action="store_true", **d)
        return g

    common = globals_(False)
    p = argparse.ArgumentParser(prog="tcov", description=__doc__.splitlines()[0], parents=[globals_(True)])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write an instance")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--grid", type=int, metavar="R")
    src.add_argument("--grid-multi", type=int, nargs=2, metavar=("R", "C"))
    src.add_argument("--random", type=int, nargs=4, metavar=("N", "M", "R", "SEED"))
    src.add_argument("--from-matching", metavar="FILE")
    src.add_argument("--from-p3", metavar="FILE")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bound", parents=[common], help="lower and upper bounds")
    b.add_argument("instance")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("solve", parents=[common], help="minimum cover or a parameterized decision")
    s.add_argument("instance")
    s.add_argument("--mode", choices=["exact", "mk", "nk", "approx"], default="exact")
    s.add_argument("-k", type=int)
    s.set_defaults(func=cmd_solve)

    kp = sub.add_parser("kernel", parents=[common], help="kernelize for m-k or n-k")
    kp.add_argument("instance")
    kp.add_argument("--mode", choices=["mk", "nk"], required=True)
    kp.add_argument("-k", type=int)
    kp.add_argument("-o", "--output")
    kp.add_argument("--trace", action="store_true")
    kp.set_defaults(func=cmd_kernel)

    v = sub.add_parser("verify", parents=[common], help="check a proposed cover")
    v.add_argument("instance")
    v.add_argument("--cover", required=True, metavar="CSV", help="1-indexed edge ids")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="exhaustive minimum (honors black edges)")
    o.add_argument("instance")
    o.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="M")
    o.add_argument("-k", type=int)
    o.set_defaults(func=cmd_oracle)
    return p


def run_command(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else YES
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.threads != 1:
        log.info("--threads %d ignored; running single-threaded", args.threads)
    rep = Report()
    try:
        code = args.func(args, rep)
    except BudgetExceeded as exc:
        rep.add("error", f"budget exceeded: {exc}", f"c budget exceeded: {exc}")
        code = ERROR
    except (ParseError, UsageError, ValueError, OSError) as exc:
        print(f"tcov: error: {exc}", file=sys.stderr)
        return ERROR
    except InvariantViolation as exc:
        print(f"tcov: internal invariant failed: {exc}", file=sys.stderr)
        return ERROR
    rep.emit(out, args.json)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
