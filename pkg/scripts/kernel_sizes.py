#!/usr/bin/env python3
"""Kernel sizes produced by the m - k and n - k reductions on seeded instances."""

from __future__ import annotations

import argparse
import collections
from dataclasses import dataclass

from testcover.generators import complete_to_test_cover, gen_anchored, gen_random
from testcover.kernel_mk import SubsetInstance, kernelize_mk
from testcover.kernel_nk import kernelize_nk


@dataclass
class Config:
    seeds: int = 40
    n: int = 10
    m: int = 10
    r: int = 3
    k: int = 2


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name}", type=int, default=default)
    cfg = Config(**vars(p.parse_args()))

    verdicts: collections.Counter[str] = collections.Counter()
    sizes = []
    for seed in range(cfg.seeds):
        H = complete_to_test_cover(gen_random(cfg.n, cfg.m, cfg.r, seed))
        res = kernelize_mk(SubsetInstance(H, frozenset(), cfg.k))
        verdicts[res.verdict] += 1
        if res.verdict == "reduced":
            sizes.append((H.n, H.m, res.kernel.H.n, res.kernel.H.m, res.kernel.k))
    print(f"m-k kernel, k={cfg.k}: {dict(verdicts)}")
    for n, m, kn, km, kk in sizes[:10]:
        print(f"  n={n:>3} m={m:>3}  ->  n'={kn:>3} m'={km:>3} k'={kk}")

    verdicts.clear()
    rows = []
    r = max(cfg.r - 1, 2)
    k = max(cfg.k, 3)  # below 3 every greedy step already yields a small cover
    for seed in range(cfg.seeds):
        n = (7 * k + 2) * r + 1 + seed % 10
        H = gen_anchored(n, r, 3 + seed % 10, seed)
        res = kernelize_nk(H, k)
        verdicts[res.verdict] += 1
        if res.kernel is not None and res.structure is not None:
            rows.append((H.n, H.m, res.kernel.n, res.kernel.m, len(res.structure.marked)))
    print(f"n-k kernel on anchored instances, k={k}, r={r}: {dict(verdicts)}; bound 18k^3r = {18 * k**3 * r}")
    for n, m, kn, km, marked in rows[:10]:
        print(f"  n={n:>3} m={m:>3}  ->  n'={kn:>3} m'={km:>3} marked components={marked}")


if __name__ == "__main__":
    main()
