"""Benchmark the peeling kernel: numba vs vectorized numpy vs big-int Python.

    python benchmarks/bench_peel.py [--n-max 40] [--repeat 5]

Each workload peels nE with twist nE (the growth-sweep inner loop) on a fixed
configuration.  All backends must agree exactly; the script checks this
before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from plumbcalc import kernels
from plumbcalc.cohomology import peel_order
from plumbcalc.plumbing import PlumbingConfig, intersection_matrix
from plumbcalc.solver import primitive_positive_solution

CONFIGS = {
    "b=[2]": PlumbingConfig.from_lists(([2], [1])),
    "b=[3,2,2]+[4]": PlumbingConfig.from_lists(([3, 2, 2], [1, 1, 2]), ([4], [3])),
    "b=[2,2,2,2]x2": PlumbingConfig.from_lists(([2, 2, 2, 2], [1, 1, 1, 1]), ([2, 2, 2, 2], [1, 2, 3, 1])),
}


def _time(fn, repeat):
    fn()  # warmup (includes jit compile / cache load for numba)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["python", "numpy"] + (["numba"] if kernels.numba is not None else [])
    print(f"{'config':<18}{'steps':>8}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, config in CONFIGS.items():
        sol = primitive_positive_solution(config)
        M = intersection_matrix(config)
        nE = args.n_max * sol.E()
        order = peel_order(config, nE)
        ref = kernels.peel(M, nE.mult, order, config.b_flat, backend="python")
        for be in backends[1:]:
            out = kernels.peel(M, nE.mult, order, config.b_flat, backend=be)
            assert np.asarray(out.h1_lo).tolist() == ref.h1_lo and out.euler == ref.euler, be
        times = {
            be: _time(lambda be=be: kernels.peel(M, nE.mult, order, config.b_flat, backend=be), args.repeat)
            for be in backends
        }
        speed = times["python"] / times[backends[-1]]
        print(f"{name:<18}{len(order):>8}" + "".join(f"{times[b] * 1e3:>10.3f}ms" for b in backends) + f"{speed:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
