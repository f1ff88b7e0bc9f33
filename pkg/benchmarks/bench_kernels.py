"""Benchmark the jit-compiled kernel lane against the pure-numpy lane.

Times the raw recursion kernel on batches of circle points, then an
end-to-end zero solve, in both lanes. The lane is chosen at import time
from CIRCLEQUAD_NUMBA, so the end-to-end comparison re-runs this script
in a subprocess with the flag flipped.

Usage: python benchmarks/bench_kernels.py [--points 20000] [--order 24]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(points, order):
    from circlequad._kernels import szego_eval, szego_eval_numpy, using_numba

    rng = np.random.default_rng(0)
    deltas = 0.6 * np.exp(1j * rng.uniform(0, 2 * np.pi, size=order))
    z = np.exp(1j * rng.uniform(0, 2 * np.pi, size=points))
    szego_eval(deltas, z)  # compile before timing
    t_active = time_call(szego_eval, deltas, z)
    t_numpy = time_call(szego_eval_numpy, deltas, z)
    lane = "numba" if using_numba() else "numpy"
    print(f"kernel ({points} points, order {order}):")
    print(f"  active lane [{lane}]: {t_active * 1e3:8.3f} ms")
    print(f"  numpy reference:      {t_numpy * 1e3:8.3f} ms")
    if using_numba():
        print(f"  speedup: {t_numpy / t_active:.2f}x")


def bench_solve():
    import circlequad as cq
    from circlequad._kernels import using_numba

    measure = cq.MeasureSpec("rogers_szego", q=0.5)
    mu = cq.moments(measure, 40)
    deltas = cq.schur_from_moments(mu, 32)
    cq.blaschke_solve(deltas, 32, 1.0 + 0j)  # warm up
    t = time_call(cq.blaschke_solve, deltas, 32, 1.0 + 0j, repeat=10)
    lane = "numba" if using_numba() else "numpy"
    print(f"blaschke_solve n=32 [{lane}]: {t * 1e3:8.3f} ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--points", type=int, default=20000)
    parser.add_argument("--order", type=int, default=24)
    parser.add_argument("--lane-only", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    bench_kernel(args.points, args.order)
    bench_solve()
    if not args.lane_only:
        flipped = "0" if os.environ.get("CIRCLEQUAD_NUMBA", "1") != "0" else "1"
        print(f"\n--- rerunning with CIRCLEQUAD_NUMBA={flipped} ---")
        sys.stdout.flush()
        env = dict(os.environ, CIRCLEQUAD_NUMBA=flipped)
        subprocess.run(
            [sys.executable, __file__, "--points", str(args.points),
             "--order", str(args.order), "--lane-only"],
            env=env,
            check=True,
        )


if __name__ == "__main__":
    main()
