"""Benchmark the compiled frame-integration kernel against the numpy fallback.

Usage: python3 benchmarks/bench_frame.py [--steps N] [--repeats R]
"""

import argparse
import time

import numpy as np

from filaments import _frame_py, bishop


def time_kernel(kernel, phi1, phi2, h, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        frames = kernel.integrate_frames(phi1, phi2, h)
        best = min(best, time.perf_counter() - start)
    return best, frames


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    phi1 = rng.standard_normal((args.steps, 3))
    phi2 = rng.standard_normal((args.steps, 3))
    h = 1.0 / args.steps

    py_time, py_frames = time_kernel(_frame_py, phi1, phi2, h, args.repeats)
    print(f"python fallback : {py_time * 1e3:8.2f} ms  ({args.steps} steps)")

    if bishop.KERNEL == "compiled":
        c_time, c_frames = time_kernel(bishop._kernel, phi1, phi2, h, args.repeats)
        diff = float(np.max(np.abs(c_frames - py_frames)))
        print(f"compiled kernel : {c_time * 1e3:8.2f} ms  ({args.steps} steps)")
        print(f"speedup         : {py_time / c_time:8.1f}x")
        print(f"max |diff|      : {diff:8.1e}")
    else:
        print("compiled kernel : not available (pure-python build)")


if __name__ == "__main__":
    main()
