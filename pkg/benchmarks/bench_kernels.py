#!/usr/bin/env python3
"""Benchmark the compiled evaluation kernels against the NumPy fallback.

Times the two hot paths behind the Monte Carlo and grid integrators:
batched point evaluation of sparse symbols, and tensor-grid power means.

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from multhankel._kernels import BACKEND, available_backends
from multhankel.integrals import _term_arrays
from multhankel.symbols import multiply, normalized_linear, shift


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_eval_terms(backends, n_samples):
    rng = np.random.default_rng(0)
    rows = []
    for d in (2, 8, 64):
        expts, coeffs = _term_arrays(normalized_linear(d))
        z = np.exp(2j * np.pi * rng.random((n_samples, d)))
        timings = {}
        values = {}
        for name, mod in backends.items():
            timings[name], values[name] = _time(lambda m=mod: m.eval_terms(expts, coeffs, z))
        rows.append((f"eval {n_samples:.0e} pts, d={d}", timings, values))
    return rows


def bench_grid(backends, n_nodes):
    base = normalized_linear(2)
    cases = {
        "grid width2": (base, n_nodes * 8),
        "grid width4": (multiply(base, shift(base, 2)), n_nodes),
    }
    rows = []
    for label, (f, nodes) in cases.items():
        expts, coeffs = _term_arrays(f)
        timings = {}
        values = {}
        for name, mod in backends.items():
            timings[name], values[name] = _time(
                lambda m=mod: m.grid_abs_pow_mean(expts, coeffs, nodes, 1.0)
            )
        rows.append((f"{label}, {nodes} nodes/axis", timings, values))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = parser.parse_args()

    backends = available_backends()
    print(f"active backend: {BACKEND}; available: {', '.join(sorted(backends))}")
    if "compiled" not in backends:
        print("compiled extension not built; timing the NumPy backend only")

    n_samples = 100_000 if args.quick else 1_000_000
    n_nodes = 32 if args.quick else 64

    rows = bench_eval_terms(backends, n_samples) + bench_grid(backends, n_nodes)
    names = sorted(backends)
    header = f"{'case':34s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, timings, values in rows:
        if len(values) == 2:
            a, b = values["python"], values["compiled"]
            err = np.max(np.abs(np.subtract(a, b)))
            assert err < 1e-9, f"backend mismatch on {label}: {err}"
        cells = "".join(f"{timings[n]*1e3:10.1f}ms" for n in names)
        speedup = (
            f"{timings['python'] / timings['compiled']:9.1f}x"
            if len(timings) == 2
            else "       n/a"
        )
        print(f"{label:34s}{cells}{speedup}")


if __name__ == "__main__":
    main()
