"""Compare the numba and pure-numpy paths of the floating kernels.

    python3 benchmarks/bench_kernels.py [--sizes 6,12,24,48] [--repeat 5]

The first numba call compiles (or loads the on-disk cache); it is timed
separately and excluded from the per-call numbers.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from latsym import _kernels
from latsym.fixtures import fig1
from latsym.ges import build_ges


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="6,12,24,48")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba not installed: only the numpy path is available")
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    if _kernels.HAVE_NUMBA:
        t = time.perf_counter()
        _kernels.jacobi_eigh(np.eye(2), jit=True)
        _kernels.ges_residuals(np.eye(2), np.eye(2), 0, 1, jit=True)
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t:.3f} s")

    print(f"{'kernel':<12}{'n':>5}{'numpy [ms]':>14}{'numba [ms]':>14}{'speedup':>10}{'max |diff|':>14}")
    for n in sizes:
        a = rng.standard_normal((n, n))
        h = (a + a.T) / 2
        w_np, _, _ = _kernels.jacobi_eigh(h, jit=False)
        t_np = _best(lambda: _kernels.jacobi_eigh(h, jit=False), args.repeat)
        if _kernels.HAVE_NUMBA:
            w_nb, _, _ = _kernels.jacobi_eigh(h, jit=True)
            t_nb = _best(lambda: _kernels.jacobi_eigh(h, jit=True), args.repeat)
            diff = float(np.abs(w_np - w_nb).max())
            print(f"{'jacobi':<12}{n:>5}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.1f}{diff:>14.2e}")
        else:
            print(f"{'jacobi':<12}{n:>5}{t_np * 1e3:>14.3f}{'-':>14}{'-':>10}{'-':>14}")

        q = np.linalg.qr(rng.standard_normal((n, n)))[0]
        r_np = _kernels.ges_residuals(q, h, 0, 1, jit=False)
        t_np = _best(lambda: _kernels.ges_residuals(q, h, 0, 1, jit=False), args.repeat)
        if _kernels.HAVE_NUMBA:
            r_nb = _kernels.ges_residuals(q, h, 0, 1, jit=True)
            t_nb = _best(lambda: _kernels.ges_residuals(q, h, 0, 1, jit=True), args.repeat)
            diff = max(abs(r_np[k] - r_nb[k]) for k in r_np)
            print(f"{'residuals':<12}{n:>5}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>10.1f}{diff:>14.2e}")

    h = fig1(1, 2, 3, 0, 5)
    for jit in ([False, True] if _kernels.HAVE_NUMBA else [False]):
        t = _best(lambda: build_ges(h, 1, 2, jit=jit), args.repeat)
        print(f"build_ges on the six-site example, jit={jit}: {t * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
