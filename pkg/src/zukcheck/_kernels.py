"""Cyclic Jacobi eigenvalue sweeps for small dense symmetric matrices.

Two interchangeable back ends: a numba ``@njit`` kernel and a pure-numpy one.
Set ``ZUKCHECK_DISABLE_NUMBA=1`` (or run without numba installed) to force
the numpy path.
"""

from __future__ import annotations

import math
import os

import numpy as np

OFF_TOL = 1e-12
MAX_SWEEPS = 100


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


try:
    if _env_flag("ZUKCHECK_DISABLE_NUMBA"):
        raise ImportError("numba disabled by ZUKCHECK_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _off_norm_np(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(off * off)))


def _rotation(app: float, aqq: float, apq: float) -> tuple[float, float]:
    theta = (aqq - app) / (2.0 * apq)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


def jacobi_numpy(a, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS):
    """Return ``(eigenvalues, sweeps, off_norm)``; eigenvalues unsorted."""
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    sweeps = 0
    off = _off_norm_np(a)
    while off >= tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation(a[p, p], a[q, q], apq)
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
        sweeps += 1
        off = _off_norm_np(a)
    return np.diag(a).copy(), sweeps, off


if HAS_NUMBA:

    @njit(cache=True)
    def _jacobi_njit(a, tol, max_sweeps):
        n = a.shape[0]
        sweeps = 0
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        off = math.sqrt(off)
        while off >= tol and sweeps < max_sweeps:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        xp = a[p, k]
                        xq = a[q, k]
                        a[p, k] = c * xp - s * xq
                        a[q, k] = s * xp + c * xq
                    for k in range(n):
                        xp = a[k, p]
                        xq = a[k, q]
                        a[k, p] = c * xp - s * xq
                        a[k, q] = s * xp + c * xq
            sweeps += 1
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += a[i, j] * a[i, j]
            off = math.sqrt(off)
        out = np.empty(n)
        for i in range(n):
            out[i] = a[i, i]
        return out, sweeps, off

    def jacobi_numba(a, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS):
        a = np.array(a, dtype=np.float64, copy=True)
        return _jacobi_njit(a, float(tol), int(max_sweeps))

    jacobi_eigenvalues = jacobi_numba
else:
    jacobi_numba = None
    jacobi_eigenvalues = jacobi_numpy

BACKEND = "numba" if HAS_NUMBA else "numpy"
