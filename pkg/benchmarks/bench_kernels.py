#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the two hot kernels on realistic workloads:

* quartic batch: resolvent coefficients on a lagged-spectrum grid
  (the shape solved per theory curve), plus a random complex batch;
* KDE: large eigenvalue set (4096 samples) on a 2048-point grid.

Run: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from rmtspec._kernels import _pure
from rmtspec.theory import _coeffs_grid

try:
    from rmtspec._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeat=5):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    rng = np.random.default_rng(0)
    xs = np.linspace(-6.0, 6.0, 6001)
    xs = xs[np.abs(xs) > 1e-9]
    green = _coeffs_grid(xs, 1e-3, 0.5)
    rand = rng.standard_normal((20000, 5)) + 1j * rng.standard_normal((20000, 5))
    rand[:, 0] += 2.0 * np.sign(rand[:, 0].real)
    samples = rng.standard_normal(4096)
    grid = np.linspace(-4, 4, 2048)

    cases = [
        ("quartic (green grid, 6k)", "quartic_roots_batch", (green,)),
        ("quartic (random, 20k)", "quartic_roots_batch", (rand,)),
        ("kde gaussian (4096x2048)", "kde_eval", (samples, grid, 0.15, 0)),
        ("kde epanechnikov (4096x2048)", "kde_eval", (samples, grid, 0.15, 1)),
    ]

    print(f"{'case':32s} {'pure':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, attr, args in cases:
        t_pure, out_pure = _time(getattr(_pure, attr), *args)
        if _core is None:
            print(f"{name:32s} {t_pure * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")
            continue
        t_core, out_core = _time(getattr(_core, attr), *args)
        np.testing.assert_allclose(out_core, out_pure, atol=1e-9, rtol=1e-7)
        print(f"{name:32s} {t_pure * 1e3:9.2f}ms {t_core * 1e3:9.2f}ms "
              f"{t_pure / t_core:7.1f}x")
    if _core is None:
        print("\ncompiled extension not built; showing fallback only")


if __name__ == "__main__":
    main()
