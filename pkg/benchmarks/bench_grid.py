#!/usr/bin/env python3
"""Benchmark the compiled grid kernel against the NumPy fallback.

Both backends receive identical phase tables, so the comparison covers only
the summation work. Reports wall time (best of --repeats), throughput in
grid cells per second, speedup, and the worst value disagreement.

Usage:
    python benchmarks/bench_grid.py
    python benchmarks/bench_grid.py --cutoffs 64,128,256,512 --phi-samples 1024
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from npwigner import density_from_pure, make_coherent_state
from npwigner._gridkernel_py import grid_eval as py_kernel

try:
    from npwigner._gridkernel import grid_eval as cy_kernel
except ImportError:
    cy_kernel = None


def time_kernel(kernel, args, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        kernel(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cutoffs", default="64,128,256,512",
                        help="comma-separated Fock cutoffs")
    parser.add_argument("--phi-samples", type=int, default=512)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if cy_kernel is None:
        print("compiled kernel not importable; timing the NumPy fallback only")

    cutoffs = [int(c) for c in args.cutoffs.split(",")]
    s = args.phi_samples
    header = f"{'cutoff':>7} {'phi':>6} {'numpy [ms]':>11} {'cython [ms]':>12} " \
             f"{'speedup':>8} {'max |diff|':>11}"
    print(header)
    print("-" * len(header))

    for cutoff in cutoffs:
        # half-filled basis keeps the tail negligible at every size
        alpha = math.sqrt(cutoff / 4.0)
        rho = density_from_pure(make_coherent_state(alpha, cutoff))
        q = np.ascontiguousarray(rho.entries)
        qt = np.ascontiguousarray(q.T)
        phis = 2.0 * np.pi * np.arange(s) / s
        kernel_args = (q, qt, phis, cutoff)

        t_py = time_kernel(py_kernel, kernel_args, args.repeats)
        v_py, _ = py_kernel(*kernel_args)

        if cy_kernel is not None:
            t_cy = time_kernel(cy_kernel, kernel_args, args.repeats)
            v_cy, _ = cy_kernel(*kernel_args)
            diff = float(np.abs(v_cy - v_py).max())
            print(f"{cutoff:>7} {s:>6} {t_py * 1e3:>11.2f} {t_cy * 1e3:>12.2f} "
                  f"{t_py / t_cy:>8.2f} {diff:>11.2e}")
        else:
            print(f"{cutoff:>7} {s:>6} {t_py * 1e3:>11.2f} {'-':>12} {'-':>8} {'-':>11}")

    return 0


if __name__ == "__main__":
    raise SystemExit(main())
