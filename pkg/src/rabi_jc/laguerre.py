"""Laguerre polynomials L_n(x) and associated L_n^1(x) by upward recurrence.

Monomial expansions cancel catastrophically for moderate degree, so both
functions use the forward three-term recurrence, which is stable for x >= 0.
Inputs may be scalars or numpy arrays of ``x``.
"""

from __future__ import annotations

import numpy as np

from .errors import NegativeDegree


def _check_degree(n: int) -> None:
    if n < 0:
        raise NegativeDegree(f"degree must be >= 0, got {n}")


def _recurrence(n: int, x, alpha: float):
    prev = np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre(n: int, x):
    """L_n(x) from ``(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}``."""
    _check_degree(n)
    return _recurrence(n, x, 0.0)


def laguerre_assoc1(n: int, x):
    """Associated Laguerre polynomial L_n^1(x), via its own recurrence."""
    _check_degree(n)
    return _recurrence(n, x, 1.0)


def laguerre_assoc1_by_sum(n: int, x):
    """L_n^1(x) through the identity ``L_n^1 = sum_{k<=n} L_k``.

    Independent route used to cross-check :func:`laguerre_assoc1`.
    """
    _check_degree(n)
    total = np.zeros_like(x, dtype=float) if isinstance(x, np.ndarray) else 0.0
    prev, cur = None, None
    for k in range(n + 1):
        if k == 0:
            cur = np.ones_like(x, dtype=float) if isinstance(x, np.ndarray) else 1.0
        elif k == 1:
            prev, cur = cur, 1.0 - x
        else:
            prev, cur = cur, ((2 * k - 1 - x) * cur - (k - 1) * prev) / k
        total = total + cur
    return total
