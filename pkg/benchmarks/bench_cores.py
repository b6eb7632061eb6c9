#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot workloads through both cores and prints wall times and
speedups.  Results are asserted equal along the way, so this doubles as a
coarse parity check.

    python3 benchmarks/bench_cores.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from zsegz import _core_py, _tables
from zsegz.groups import automorphism_index_maps, make_group

try:
    from zsegz import _core_c
except ImportError:
    _core_c = None


def _time(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def bench_search(core):
    """Exhaustive modified-constant layer: [4,4], L={4}, length 12."""
    g = make_group([4, 4])
    add = _tables.add_index(g)
    ident = tuple(range(g.order))
    auts = [p for p in automorphism_index_maps(g) if p != ident]
    accept = _tables.multiple_image_mask(g, 12)
    return core.search_absent(
        (4, 4), 12, [4], add, accept, True, auts, 10**9, 10**9
    )


def bench_sweep(core):
    """Largest congruence sweep: all 1.3M multisets of size 9 over [2]^4."""
    g = make_group([2, 2, 2, 2])
    add = _tables.add_index(g)
    coef = [0] * 9
    for k in (1, 2, 3, 4):
        coef[2 * k] = -1 if k % 2 else 1
    return core.sweep_residues((2, 2, 2, 2), 9, 8, 2, add, coef, 1, False, 3)


def bench_batch(core):
    """Mod-p count rows for 2000 sampled sequences over [5,5,5]."""
    import random

    g = make_group([5, 5, 5])
    add = _tables.add_index(g)
    rng = random.Random(0)
    seqs = [[rng.randrange(125) for _ in range(16)] for _ in range(2000)]
    return core.count_mod_identity_batch((5, 5, 5), seqs, 15, 5, add)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    workloads = (
        ("search [4,4] len 12", bench_search),
        ("sweep [2]^4 len 9", bench_sweep),
        ("batch count [5]^3", bench_batch),
    )
    print(f"{'workload':<22}{'pure':>10}{'compiled':>10}{'speedup':>9}")
    for name, fn in workloads:
        t_pure, r_pure = _time(lambda: fn(_core_py), args.repeat)
        if _core_c is None:
            print(f"{name:<22}{t_pure:>9.3f}s{'n/a':>10}{'':>9}")
            continue
        t_fast, r_fast = _time(lambda: fn(_core_c), args.repeat)
        assert r_pure == r_fast, f"core mismatch on {name}"
        print(f"{name:<22}{t_pure:>9.3f}s{t_fast:>9.3f}s{t_pure / t_fast:>8.1f}x")
    if _core_c is None:
        print("compiled core not built; showing pure timings only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
