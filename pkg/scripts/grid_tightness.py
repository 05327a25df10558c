#!/usr/bin/env python3
"""Minimum test cover of grid instances against the size lower bound."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from testcover.bounds import degree_profile_check, lower_bound_r
from testcover.generators import gen_grid, gen_grid_multi
from testcover.oracle import exact_min


@dataclass
class Config:
    max_r: int = 5
    copies: int = 2
    multi_max_r: int = 3


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-r", type=int, default=Config.max_r)
    p.add_argument("--copies", type=int, default=Config.copies)
    p.add_argument("--multi-max-r", type=int, default=Config.multi_max_r)
    cfg = Config(**vars(p.parse_args()))

    print(f"{'instance':<16}{'n':>5}{'m':>5}{'lb_r':>6}{'min':>5}{'profile':>9}{'secs':>8}")
    cases = [(f"grid {r}", r, gen_grid(r)) for r in range(2, cfg.max_r + 1)]
    cases += [(f"grid-multi {r} {cfg.copies}", r, gen_grid_multi(r, cfg.copies)) for r in range(2, cfg.multi_max_r + 1)]
    for label, r, H in cases:
        start = time.perf_counter()
        size, cover = exact_min(H)
        secs = time.perf_counter() - start
        lb = lower_bound_r(H.n, r)
        profile = degree_profile_check(H, cover, r) if size == lb else False
        print(f"{label:<16}{H.n:>5}{H.m:>5}{lb:>6}{size:>5}{str(profile):>9}{secs:>8.3f}")


if __name__ == "__main__":
    main()
