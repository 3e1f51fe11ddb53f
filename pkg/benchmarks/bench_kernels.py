#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Times batch polynomial evaluation and 4-D occupancy binning on both
backends, verifies the outputs agree bitwise, and prints a small table.

    python benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""

import argparse
import time

import numpy as np

from germimage import kernels
from germimage.poly import MapGerm, Polynomial
from germimage.probe import unit_ball_samples


def build_inputs(samples):
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    w = x**4 + y
    germ = MapGerm(x * w, y * w * w)  # 2 and 3 terms, degrees 5 and 9
    pts = 0.5 * unit_ball_samples(2, samples, seed=0)
    return germ, pts


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    germ, pts = build_inputs(args.samples)
    print(f"samples: {args.samples}, polynomial degrees: "
          f"{germ.f.degree()} and {germ.g.degree()}")

    kernels.warmup()

    rows = []
    outputs = {}
    for backend in ("numba", "numpy"):
        t_eval = best_of(
            args.repeat, lambda: kernels.evaluate_batch(germ.g, pts, backend=backend)
        )
        u = kernels.evaluate_batch(germ.f, pts, backend=backend)
        v = kernels.evaluate_batch(germ.g, pts, backend=backend)
        t_bin = best_of(
            args.repeat, lambda: kernels.bin_hits(u, v, 0.01, 8, backend=backend)
        )
        outputs[backend] = (u, v, kernels.bin_hits(u, v, 0.01, 8, backend=backend))
        rows.append((backend, t_eval, t_bin))

    same = all(
        np.array_equal(outputs["numba"][k], outputs["numpy"][k]) for k in range(3)
    )
    print(f"backends agree bitwise: {same}")
    print(f"{'backend':8s} {'evaluate':>12s} {'binning':>12s}")
    for backend, t_eval, t_bin in rows:
        print(f"{backend:8s} {t_eval * 1e3:10.2f}ms {t_bin * 1e3:10.2f}ms")
    base = dict((r[0], r) for r in rows)
    speed_eval = base["numpy"][1] / base["numba"][1]
    speed_bin = base["numpy"][2] / base["numba"][2]
    print(f"speedup (numpy/numba): evaluate {speed_eval:.1f}x, binning {speed_bin:.1f}x")
    if not same:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
