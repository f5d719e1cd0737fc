"""Benchmark the compiled seesaw kernel against the pure-NumPy fallback.

Runs identical restart batches through both implementations, checks that the
resulting maxima agree, and prints per-call timings.

Usage: python benchmarks/bench_seesaw.py [--restarts 64] [--repeats 20]
"""

import argparse
import time

import numpy as np

from witnesslp import _seesaw_py
from witnesslp.opbasis import build_basis
from witnesslp.region import DEFAULT_SEED, MAX_ITER, VALUE_TOL, _materialize

try:
    from witnesslp import _seesaw as _seesaw_c
except ImportError:
    _seesaw_c = None

WORKLOADS = [
    ("n=3 facet", 3, (3.0, 3.0, 1.0)),
    ("n=3 rotated", 3, (1 / 0.55, 3.0, 2 - 1 / (3 * 0.55))),
    ("n=3 steep", 3, (3.0, 9.0, 5.0)),
    ("n=4 facet", 4, (4.0, 4.0, 4.0, 1.0)),
    ("n=4 rotated", 4, (1 / 0.3, 4.0, 4.0, 2 - 1 / (4 * 0.3))),
    ("n=5 facet", 5, (5.0, 5.0, 5.0, 5.0, 1.0)),
]


def bench(kernel, w4, starts, repeats):
    best = np.inf
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        vals, *_ = kernel.run(w4, starts, MAX_ITER, VALUE_TOL)
        best = min(best, time.perf_counter() - t0)
        value = float(vals.max())
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if _seesaw_c is None:
        print("compiled kernel not available; timing the NumPy path only\n")

    rng = np.random.default_rng(DEFAULT_SEED)
    header = f"{'workload':<14} {'numpy ms':>10} {'compiled ms':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n, coeffs in WORKLOADS:
        basis = build_basis(n)
        w4 = _materialize(np.asarray(coeffs), basis).reshape(n, n, n, n)
        starts = rng.standard_normal((args.restarts, n)) + 1j * rng.standard_normal(
            (args.restarts, n)
        )
        t_py, v_py = bench(_seesaw_py, w4, starts, args.repeats)
        if _seesaw_c is not None:
            t_c, v_c = bench(_seesaw_c, w4, starts, args.repeats)
            if abs(v_py - v_c) > 1e-9:
                raise AssertionError(
                    f"{name}: kernels disagree ({v_py} vs {v_c})"
                )
            print(f"{name:<14} {t_py * 1e3:>10.2f} {t_c * 1e3:>12.2f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<14} {t_py * 1e3:>10.2f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
