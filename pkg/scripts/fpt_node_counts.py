#!/usr/bin/env python3
"""Search-tree sizes of the m - k algorithm on random instances, compared with the worst-case bound."""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass

from testcover.fpt_mk import node_bound, solve_mk
from testcover.generators import complete_to_test_cover, gen_random


@dataclass
class Config:
    n: int = 10
    m: int = 8
    r: int = 3
    seeds: int = 50
    max_k: int = 4


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(p.parse_args()))

    print(f"{'k':>3}{'yes':>6}{'mean nodes':>12}{'max nodes':>11}{'max/bound':>11}")
    for k in range(cfg.max_k + 1):
        nodes, ratios, yes = [], [], 0
        for seed in range(cfg.seeds):
            H = complete_to_test_cover(gen_random(cfg.n, cfg.m, cfg.r, seed))
            res = solve_mk(H, k)
            yes += res.verdict
            nodes.append(res.stats.nodes_visited)
            ratios.append(res.stats.nodes_visited / node_bound(H.n, max(H.r, 1), k))
        print(f"{k:>3}{yes:>6}{statistics.mean(nodes):>12.1f}{max(nodes):>11}{max(ratios):>11.2e}")


if __name__ == "__main__":
    main()
