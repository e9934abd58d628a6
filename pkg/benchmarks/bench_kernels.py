#!/usr/bin/env python3
"""Benchmark the compiled sampling kernels against the numpy fallback.

Run from the repository root after installing:

    python benchmarks/bench_kernels.py [--quick]

Both backends implement one sampling contract and return bitwise-equal
arrays; the benchmark verifies that on every workload it times.
"""

import argparse
import time

import numpy as np

import adhocsinr.kernels as kernels
from adhocsinr.kernels import MODEL_FD, MODEL_NFD, MODEL_PFD


def _time(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    scale = 0.25 if args.quick else 1.0
    n = int(20000 * scale)
    n_mu3 = int(2000 * scale)
    n_mm = int(1000 * scale)

    workloads = [
        ("sinr nfd mu=3.7", "sinr_batch", (3.7, 500, 1e-2, True, MODEL_NFD, 0.0, 1, 0, n)),
        ("sinr fd  mu=3.7", "sinr_batch", (3.7, 500, 1e-2, True, MODEL_FD, 0.0, 2, 0, n)),
        ("sinr pfd mu=3.7", "sinr_batch", (3.7, 500, 1e-2, True, MODEL_PFD, 0.0, 3, 0, n)),
        ("sinr nfd mu=3.0 (deep tails)", "sinr_batch",
         (3.0, 500, 1e-2, True, MODEL_NFD, 0.0, 4, 0, n_mu3)),
        ("mmimo finite M=64", "mmimo_finite_batch",
         (3.7, 200, 1e-2, True, 64, 0.01, 5, 0, n_mm)),
    ]

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled backend unavailable; timing the fallback only")

    print(f"{'workload':32s} {'n':>7s} " + " ".join(f"{b:>12s}" for b in backends) + "  speedup")
    for label, fn_name, fn_args in workloads:
        results, times = {}, {}
        for backend in backends:
            fn = getattr(kernels.get_backend(backend), fn_name)
            results[backend], times[backend] = _time(fn, *fn_args)
        if len(backends) == 2 and not np.array_equal(results["compiled"], results["fallback"]):
            raise SystemExit(f"bitwise mismatch between backends on: {label}")
        count = fn_args[-1]
        cells = " ".join(f"{times[b]:>10.3f}s" for b in backends)
        speedup = (
            f"{times['fallback'] / times['compiled']:>6.2f}x" if len(backends) == 2 else "     -"
        )
        print(f"{label:32s} {count:>7d} {cells}  {speedup}")


if __name__ == "__main__":
    main()
