"""The displacement parameter lambda of U = exp[lambda sigma_z (a^dag - a)].

lambda is chosen so the counter-rotating coupling of the transformed
Hamiltonian vanishes:

    h_n(lam) = (lam*omega + g) + Omega_r * lam * exp(-2 lam^2) * L_n^1(4 lam^2) / (n + 1) = 0

Replacing ``L_n^1(4 lam^2)`` by ``n + 1`` (valid for small lambda) gives an
n-independent equation whose approximate solution is the closed form
``-g / (omega + Omega_r exp[-2 (g / (omega + Omega_r))^2])``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import NoBracket
from .laguerre import laguerre_assoc1
from .params import ModelParams, validate_params

CLOSED_FORM = "closed_form"
ROOT = "root_n_independent"
ROOT_PER_N = "root_per_n"

_SCAN_STEPS = 64
_BISECT_WIDTH = 1e-13


@dataclass(frozen=True)
class LambdaSolution:
    """A value of lambda, how it was obtained, and its defect in h(lam) = 0.

    ``n`` is set only for :data:`ROOT_PER_N`.
    """

    value: float
    method: str
    residual: float
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "residual", float(self.residual))

    def __float__(self) -> float:
        return self.value


def defining_function(p: ModelParams, lam: float, n: Optional[int] = None) -> float:
    """h_n(lam); ``n=None`` selects the n-independent form."""
    if n is None:
        ratio = 1.0
    else:
        ratio = laguerre_assoc1(n, 4.0 * lam * lam) / (n + 1)
    return (lam * p.omega + p.g) + p.Omega_r * lam * math.exp(-2.0 * lam * lam) * ratio


def lambda_closed_form(p: ModelParams) -> LambdaSolution:
    validate_params(p)
    if p.g == 0:
        return LambdaSolution(0.0, CLOSED_FORM, defining_function(p, 0.0))
    total = p.omega + p.Omega_r
    lam = -p.g / (p.omega + p.Omega_r * math.exp(-2.0 * (p.g / total) ** 2))
    return LambdaSolution(lam, CLOSED_FORM, defining_function(p, lam))


def _solve(p: ModelParams, n: Optional[int]) -> float:
    h = lambda lam: defining_function(p, lam, n)  # noqa: E731

    # Scan down from 0 for the first sign change; h(0) = g > 0.
    hi, f_hi = 0.0, h(0.0)
    lo = f_lo = None
    for k in range(1, _SCAN_STEPS + 1):
        x = -k / _SCAN_STEPS
        fx = h(x)
        if fx <= 0.0:
            lo, f_lo = x, fx
            break
        hi, f_hi = x, fx
    if lo is None:
        raise NoBracket(f"no sign change of h on [-1, 0] for {p} (n={n})")
    if f_lo == 0.0:
        return lo

    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid = h(mid)
        if f_mid == 0.0:
            return mid
        if f_mid > 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid

    best = lo if abs(f_lo) < abs(f_hi) else hi
    if f_hi != f_lo:
        secant = hi - f_hi / (f_hi - f_lo) * (hi - lo)
        if lo <= secant <= hi and abs(h(secant)) < abs(h(best)):
            best = secant
    return best


def lambda_root(p: ModelParams) -> LambdaSolution:
    """Root of the n-independent equation in (-1, 0]."""
    validate_params(p)
    if p.g == 0:
        return LambdaSolution(0.0, ROOT, defining_function(p, 0.0))
    lam = _solve(p, None)
    return LambdaSolution(lam, ROOT, defining_function(p, lam))


def lambda_root_per_n(p: ModelParams, n: int) -> LambdaSolution:
    """Root of the full n-dependent equation in (-1, 0]."""
    validate_params(p)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p.g == 0:
        return LambdaSolution(0.0, ROOT_PER_N, defining_function(p, 0.0, n), n)
    lam = _solve(p, n)
    return LambdaSolution(lam, ROOT_PER_N, defining_function(p, lam, n), n)


def solve_lambda(p: ModelParams, method: str = "closed") -> LambdaSolution:
    """Dispatch on the CLI-level method name (``closed`` or ``root``)."""
    if method in ("closed", CLOSED_FORM):
        return lambda_closed_form(p)
    if method in ("root", ROOT):
        return lambda_root(p)
    raise ValueError(f"unknown lambda method {method!r}")
