"""Floating-point hot loops: cyclic Jacobi eigensolver and GES residuals.

Each kernel exists twice: an explicit-loop version compiled with numba's
``njit`` and a vectorised pure-numpy version. ``LATSYM_DISABLE_JIT=1`` (or a
missing numba) selects the numpy path. Both are always importable so the
benchmark and the tests can compare them directly.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    HAVE_NUMBA = False

JIT_DISABLED = os.environ.get("LATSYM_DISABLE_JIT", "").lower() in ("1", "true", "yes")
USE_JIT = HAVE_NUMBA and not JIT_DISABLED

MAX_SWEEPS = 100


def _jacobi_loops(a, tol):
    # a: symmetric, overwritten; returns (eigenvalues, eigenvectors, sweeps)
    n = a.shape[0]
    v = np.eye(n)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            if abs(a[i, j]) > scale:
                scale = abs(a[i, j])
    thresh = tol * max(scale, 1e-300)
    sweeps = 0
    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                if abs(a[p, q]) > off:
                    off = abs(a[p, q])
        if off <= thresh:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    return w, v, sweeps


def _jacobi_numpy(a, tol):
    n = a.shape[0]
    v = np.eye(n)
    scale = np.abs(a).max() if n else 0.0
    thresh = tol * max(scale, 1e-300)
    iu = np.triu_indices(n, 1)
    sweeps = 0
    for _ in range(MAX_SWEEPS):
        if n < 2 or np.abs(a[iu]).max() <= thresh:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta or 1.0) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cols = a[:, [p, q]].copy()
                a[:, p] = c * cols[:, 0] - s * cols[:, 1]
                a[:, q] = s * cols[:, 0] + c * cols[:, 1]
                rows = a[[p, q], :].copy()
                a[p, :] = c * rows[0] - s * rows[1]
                a[q, :] = s * rows[0] + c * rows[1]
                vc = v[:, [p, q]].copy()
                v[:, p] = c * vc[:, 0] - s * vc[:, 1]
                v[:, q] = s * vc[:, 0] + c * vc[:, 1]
    return np.diag(a).copy(), v, sweeps


def _residuals_loops(q, h, u, v):
    n = q.shape[0]
    inv = 0.0
    sym = 0.0
    comm = 0.0
    for i in range(n):
        for j in range(n):
            s2 = 0.0
            c = 0.0
            for k in range(n):
                s2 += q[i, k] * q[k, j]
                c += q[i, k] * h[k, j] - h[i, k] * q[k, j]
            if i == j:
                s2 -= 1.0
            inv = max(inv, abs(s2))
            comm = max(comm, abs(c))
            sym = max(sym, abs(q[i, j] - q[j, i]))
    swap = 0.0
    for i in range(n):
        target = 1.0 if i == v else 0.0
        swap = max(swap, abs(q[i, u] - target))
    return inv, sym, comm, swap


def _residuals_numpy(q, h, u, v):
    n = q.shape[0]
    eye = np.eye(n)
    inv = np.abs(q @ q - eye).max()
    sym = np.abs(q.T - q).max()
    comm = np.abs(q @ h - h @ q).max()
    swap = np.abs(q[:, u] - eye[:, v]).max()
    return inv, sym, comm, swap


if HAVE_NUMBA:
    jacobi_numba = njit(cache=True)(_jacobi_loops)
    residuals_numba = njit(cache=True)(_residuals_loops)
else:  # pragma: no cover
    jacobi_numba = None
    residuals_numba = None


def jacobi_eigh(h: np.ndarray, tol: float = 1e-14, *, jit: bool | None = None):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns ascending eigenvalues, orthonormal eigenvectors (columns) and the
    final max off-diagonal magnitude of the rotated matrix.
    """
    a = np.array(h, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    if not np.allclose(a, a.T, atol=0, rtol=0):
        raise ValueError("Jacobi eigensolver needs a symmetric matrix")
    use = USE_JIT if jit is None else (jit and HAVE_NUMBA)
    if use:
        w, v, _ = jacobi_numba(a, tol)
    else:
        w, v, _ = _jacobi_numpy(a, tol)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    rotated = v.T @ np.asarray(h, dtype=float) @ v
    off = np.abs(rotated - np.diag(np.diag(rotated))).max() if len(w) else 0.0
    return w, v, float(off)


def ges_residuals(q: np.ndarray, h: np.ndarray, u: int, v: int, *, jit: bool | None = None) -> dict:
    """Max-norm residuals of Q^2 - I, Q^T - Q, [Q, H] and Q|u> - |v>."""
    q = np.ascontiguousarray(q, dtype=float)
    h = np.ascontiguousarray(h, dtype=float)
    use = USE_JIT if jit is None else (jit and HAVE_NUMBA)
    fn = residuals_numba if use else _residuals_numpy
    inv, sym, comm, swap = fn(q, h, u, v)
    return {"involution": float(inv), "symmetry": float(sym), "commutator": float(comm), "swap": float(swap)}
