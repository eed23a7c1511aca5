"""Timing comparison of the two periodic-overlap kernel backends.

Runs the same violation scans through the numba kernel and the pure numpy
path in one process and prints a table of best-of-N wall times. Usage:

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from bidisc import kernels
from bidisc.flows import interstitial
from bidisc.geometry import _window_extents


def workloads():
    """(label, xy, radii, u, v, mwin, nwin, tol) cases of growing size."""
    out = []
    for r in (0.1, 0.05, 0.02):
        domain = interstitial(r)[0]
        xy = np.array([[d.x, d.y] for d in domain.discs])
        radii = np.array([d.radius for d in domain.discs])
        mwin, nwin = _window_extents(domain)
        out.append((f"interstitial r={r} ({len(radii)} discs)",
                    xy, radii, domain.u, domain.v, mwin, nwin, 1e-9))
    rng = np.random.default_rng(7)
    for n in (100, 400):
        xy = rng.uniform(0.0, 10.0, size=(n, 2))
        radii = rng.uniform(0.3, 1.0, size=n)
        # dense enough that many pairs overlap, so the hit path is timed too
        out.append((f"random n={n}", xy, radii, (10.0, 0.0), (0.0, 10.0),
                    1, 1, 1e-9))
    return out


def run_numpy(case):
    _, xy, radii, u, v, mwin, nwin, tol = case
    return kernels._violations_numpy(xy, radii, u, v, mwin, nwin, tol)


def run_numba(case):
    _, xy, radii, u, v, mwin, nwin, tol = case
    lat = np.array([[u[0], v[0]], [u[1], v[1]]], dtype=float)
    inv = np.linalg.inv(lat)
    out = kernels._violations_jit(
        np.ascontiguousarray(xy, dtype=float),
        np.ascontiguousarray(radii, dtype=float),
        u[0], u[1], v[0], v[1],
        inv[0, 0], inv[0, 1], inv[1, 0], inv[1, 1], mwin, nwin, tol)
    return out[np.lexsort((out[:, 3], out[:, 2], out[:, 1], out[:, 0]))]


def best_of(fn, case, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(case)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if kernels.backend_name() != "numba":
        print("numba backend unavailable (BIDISC_KERNELS=numpy or numba "
              "missing); nothing to compare")
        return

    cases = workloads()
    run_numba(cases[0])  # trigger jit compilation outside the timing loop

    print(f"{'case':<34} {'numpy':>10} {'numba':>10} {'speedup':>8}  rows")
    for case in cases:
        a = run_numpy(case)
        b = run_numba(case)
        assert np.array_equal(a, b), f"backend mismatch on {case[0]}"
        t_np = best_of(run_numpy, case, args.repeat)
        t_nb = best_of(run_numba, case, args.repeat)
        print(f"{case[0]:<34} {t_np * 1e3:>8.2f}ms {t_nb * 1e3:>8.2f}ms "
              f"{t_np / t_nb:>7.1f}x  {len(a)}")


if __name__ == "__main__":
    main()
