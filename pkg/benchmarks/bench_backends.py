#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs identical workloads through both backends, checks the outputs match
bit for bit, and reports wall times and speedups.

    python benchmarks/bench_backends.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from math import comb

import ramseykit._kernels_py as pure
from ramseykit.generators import random_uniform_coloring
from ramseykit.search import (_by_top, _candidate_subsets, _dense_color_ids,
                              _free_violation_masks, _rainbow_violation_masks,
                              _tuple_masks)

try:
    import ramseykit._kernels_c as compiled
except ImportError:
    compiled = None


def workloads():
    f12 = random_uniform_coloring(2, 12, 6, seed=2024)
    free_masks = _free_violation_masks(f12)
    rainbow_masks = _rainbow_violation_masks(f12)
    ids, n_colors = _dense_color_ids(f12.values)
    tmasks = _tuple_masks(f12)

    f18 = random_uniform_coloring(2, 18, 3, seed=7)
    flat18, offs18 = _by_top(_free_violation_masks(f18), None, 18)

    ids18, nc18 = _dense_color_ids(f18.values)
    pflat, pids, poffs = _by_top(_tuple_masks(f18), ids18, 18)

    offsets, ranks = _candidate_subsets(6, 2, 3)

    yield ("bitmap_avoid free [12]^2",
           lambda k: k.bitmap_avoid(12, free_masks))
    yield ("bitmap_avoid rainbow [12]^2",
           lambda k: k.bitmap_avoid(12, rainbow_masks))
    yield ("bitmap_palette_le d=2 [12]^2",
           lambda k: k.bitmap_palette_le(12, tmasks, ids, n_colors, 2))
    yield ("solve_avoid free [18]^2",
           lambda k: k.solve_avoid(18, flat18, offs18, 0, 0, 0))
    yield ("solve_palette_le d=2 [18]^2",
           lambda k: k.solve_palette_le(18, pflat, pids, poffs, nc18, 2,
                                        0, 0, 0))
    yield ("scan_colorings 2^15 plain",
           lambda k: k.scan_colorings(comb(6, 2), 2, 1, offsets, ranks, False))


def best_time(fn, backend, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = fn(backend)
        best = min(best, time.perf_counter() - started)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per workload (best kept)")
    args = parser.parse_args()

    if compiled is None:
        print("compiled kernels unavailable; timing the pure backend only")

    header = f"{'workload':<34} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads():
        pure_time, pure_result = best_time(fn, pure, args.repeat)
        if compiled is None:
            print(f"{name:<34} {pure_time * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        c_time, c_result = best_time(fn, compiled, args.repeat)
        if pure_result != c_result:
            raise SystemExit(f"backend results differ on {name!r}")
        print(f"{name:<34} {pure_time * 1e3:>8.2f}ms {c_time * 1e3:>8.2f}ms "
              f"{pure_time / c_time:>7.1f}x")


if __name__ == "__main__":
    main()
