#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-numpy kernel backends.

Times the two hot kernels (synthesis and analysis) on desk-scale and
paper-scale geometries, checks the backends agree, and prints a table.

    python benchmarks/bench_backends.py [--repeats 20] [--trial]

--trial additionally times one full Monte Carlo trial per scale using
whichever backend is active in this process (AFFINE_FBMC_BACKEND selects it).
"""

import argparse
import time

import numpy as np
from threadpoolctl import threadpool_limits

from affine_fbmc import FbmcModem, SimConfig, design_phydyas, run_point
from affine_fbmc import _kernels_py

try:
    from affine_fbmc import _kernels as _compiled
except ImportError:
    _compiled = None

SCALES = [
    ("desk  (N=64,  T=128)", 64, 128),
    ("paper (N=256, T=512)", 256, 512),
]


def time_call(fn, *args, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_scale(name, n_sub, instants, repeats):
    modem = FbmcModem(design_phydyas(n_sub))
    rng = np.random.default_rng(0)
    weighted = np.ascontiguousarray(
        rng.standard_normal((n_sub, instants))
        + 1j * rng.standard_normal((n_sub, instants))
    )
    synth_args = (weighted, modem._twiddle, modem.filter.taps, modem.half)
    samples = np.ascontiguousarray(_kernels_py.synthesize_grid(*synth_args))
    analyze_args = (samples, modem._twiddle_conj, modem.filter.taps, modem.half, instants)

    rows = []
    py_synth = time_call(_kernels_py.synthesize_grid, *synth_args, repeats=repeats)
    py_analyze = time_call(_kernels_py.analyze_segments, *analyze_args, repeats=repeats)
    if _compiled is not None:
        c_synth = time_call(_compiled.synthesize_grid, *synth_args, repeats=repeats)
        c_analyze = time_call(_compiled.analyze_segments, *analyze_args, repeats=repeats)
        synth_diff = np.max(np.abs(
            _compiled.synthesize_grid(*synth_args) - _kernels_py.synthesize_grid(*synth_args)
        ))
        analyze_diff = np.max(np.abs(
            _compiled.analyze_segments(*analyze_args) - _kernels_py.analyze_segments(*analyze_args)
        ))
        rows.append((f"{name} synthesize", py_synth, c_synth, synth_diff))
        rows.append((f"{name} analyze   ", py_analyze, c_analyze, analyze_diff))
    else:
        rows.append((f"{name} synthesize", py_synth, None, 0.0))
        rows.append((f"{name} analyze   ", py_analyze, None, 0.0))
    return rows


def bench_trial(n_sub):
    cfg = SimConfig(
        subcarriers=n_sub, frames=n_sub, redundancy=(n_sub,), channel_taps=12,
        trials=10 if n_sub <= 64 else 3, seed=0,
    )
    run_point(cfg, 0, 0.2, n_sub, 15.0)  # warm caches
    start = time.perf_counter()
    run_point(cfg, 0, 0.2, n_sub, 15.0)
    return (time.perf_counter() - start) / cfg.trials


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--trial", action="store_true",
                        help="also time full Monte Carlo trials")
    args = parser.parse_args()

    if _compiled is None:
        print("compiled extension not available; timing the python backend only")
    header = f"{'kernel':34s} {'python':>10s} {'compiled':>10s} {'speedup':>8s} {'max diff':>10s}"
    print(header)
    print("-" * len(header))
    # Single-threaded BLAS, matching how the harness runs trials.
    with threadpool_limits(limits=1, user_api="blas"):
        for name, n_sub, instants in SCALES:
            for label, py_t, c_t, diff in bench_scale(name, n_sub, instants, args.repeats):
                if c_t is None:
                    print(f"{label:34s} {py_t*1e3:9.2f}ms {'-':>10s} {'-':>8s} {'-':>10s}")
                else:
                    print(
                        f"{label:34s} {py_t*1e3:9.2f}ms {c_t*1e3:9.2f}ms "
                        f"{py_t/c_t:7.2f}x {diff:10.2e}"
                    )

    if args.trial:
        from affine_fbmc import active_backend
        print(f"\nfull trial timings ({active_backend()} backend):")
        for n_sub in (64, 256):
            print(f"  N={n_sub:<4d}: {bench_trial(n_sub) * 1e3:8.1f} ms per trial")


if __name__ == "__main__":
    main()
