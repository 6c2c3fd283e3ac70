"""Dense real-symmetric eigensolver.

Householder reduction to tridiagonal form followed by the implicit-shift QL
iteration, in the classic EISPACK ``tred2``/``tql2`` arrangement. The inner
loops are compiled with numba; they release the GIL so independent solves
can run on a thread pool.
"""

from __future__ import annotations

import math

import numba
import numpy as np

from .errors import NoConvergence

_MAX_SWEEPS = 60


@numba.njit(cache=True, nogil=True)
def _tred2(V, d, e, want_vectors):
    # V holds the input matrix on entry and the accumulated orthogonal
    # transform on exit; only the lower triangle is read.
    n = V.shape[0]
    for j in range(n):
        d[j] = V[n - 1, j]
    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += abs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
                V[j, i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = math.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h = h - f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                V[j, i] = f
                g = e[j] + V[j, j] * f
                for k in range(j + 1, i):
                    g += V[k, j] * d[k]
                    e[k] += V[k, j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    V[k, j] -= f * e[k] + g * d[k]
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
        d[i] = h

    for i in range(n - 1):
        V[n - 1, i] = V[i, i]
        V[i, i] = 1.0
        h = d[i + 1]
        if h != 0.0 and want_vectors:
            for k in range(i + 1):
                d[k] = V[k, i + 1] / h
            for j in range(i + 1):
                g = 0.0
                for k in range(i + 1):
                    g += V[k, i + 1] * V[k, j]
                for k in range(i + 1):
                    V[k, j] -= g * d[k]
        for k in range(i + 1):
            V[k, i + 1] = 0.0
    for j in range(n):
        d[j] = V[n - 1, j]
        V[n - 1, j] = 0.0
    V[n - 1, n - 1] = 1.0
    e[0] = 0.0


@numba.njit(cache=True, nogil=True)
def _tql2(V, d, e, want_vectors, max_sweeps):
    # Returns False if some eigenvalue needs more than max_sweeps sweeps.
    n = V.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    f = 0.0
    tst1 = 0.0
    eps = 2.0**-52
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n:
            if abs(e[m]) <= eps * tst1:
                break
            m += 1
        if m > l:
            sweeps = 0
            while True:
                sweeps += 1
                if sweeps > max_sweeps:
                    return False
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h

                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    if want_vectors:
                        for k in range(n):
                            h = V[k, i + 1]
                            V[k, i + 1] = s * V[k, i] + c * h
                            V[k, i] = c * V[k, i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= eps * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return True


def symmetric_eigh(a: np.ndarray, want_vectors: bool = True):
    """Eigenvalues (ascending) and optionally eigenvectors of a symmetric matrix.

    Returns ``(w, v)`` with ``v[:, k]`` the unit eigenvector for ``w[k]``;
    ``v`` is ``None`` when ``want_vectors`` is false.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.empty(0), (np.empty((0, 0)) if want_vectors else None)
    if n == 1:
        return a[0].copy(), (np.ones((1, 1)) if want_vectors else None)

    V = np.array(a, dtype=np.float64, order="C")
    d = np.empty(n)
    e = np.empty(n)
    _tred2(V, d, e, want_vectors)
    if not _tql2(V, d, e, want_vectors, _MAX_SWEEPS):
        raise NoConvergence(f"QL iteration exceeded {_MAX_SWEEPS} sweeps for one eigenvalue")

    order = np.argsort(d, kind="stable")
    w = d[order]
    if not want_vectors:
        return w, None
    return w, V[:, order]
