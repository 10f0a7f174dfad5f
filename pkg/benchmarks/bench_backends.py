"""Timing table: compiled extension vs pure NumPy kernels.

Run as: python3 benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import random
import time

import numpy as np

from sqsieve import _purecore, backend


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_phase_moments(repeat):
    rng = random.Random(0)
    dens = [rng.randint(2, 10**6) for _ in range(400)]
    nums = [rng.randint(0, d - 1) for d in dens]
    count = 4096
    nums64 = np.asarray(nums, dtype=np.int64)
    dens64 = np.asarray(dens, dtype=np.int64)
    rows = []
    if backend.HAVE_COMPILED:
        from sqsieve import _fastcore

        rows.append(
            (
                "phase_moments[400x4096]",
                "compiled",
                time_call(lambda: _fastcore.phase_moments(nums64, dens64, count), repeat),
            )
        )
    rows.append(
        (
            "phase_moments[400x4096]",
            "pure",
            time_call(lambda: _purecore.phase_moments(nums, dens, count), repeat),
        )
    )
    return rows


def bench_gauss_row(repeat):
    cases = [(3, 9973), (7, 4096), (11, 7920)]
    rows = []

    def run_all(fn):
        for a, c in cases:
            fn(a, c)

    if backend.HAVE_COMPILED:
        from sqsieve import _fastcore

        rows.append(
            ("gauss_row[c~10^4 x3]", "compiled", time_call(lambda: run_all(_fastcore.gauss_row), repeat))
        )
    rows.append(
        ("gauss_row[c~10^4 x3]", "pure", time_call(lambda: run_all(_purecore.gauss_row), repeat))
    )
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"active backend: {backend.active_backend()}")
    rows = bench_phase_moments(args.repeat) + bench_gauss_row(args.repeat)
    print(f"{'kernel':<26} {'backend':<10} {'best (s)':>12}")
    timings = {}
    for kernel, which, secs in rows:
        timings[(kernel, which)] = secs
        print(f"{kernel:<26} {which:<10} {secs:>12.6f}")
    for kernel in {k for k, _ in timings}:
        fast = timings.get((kernel, "compiled"))
        pure = timings.get((kernel, "pure"))
        if fast and pure:
            print(f"{kernel}: speedup x{pure / fast:.1f}")


if __name__ == "__main__":
    main()
