"""Analytic spectrum, states and observables of the Jaynes-Cummings-like map.

After rotating the spin about y and displacing the oscillator by
``lambda * sigma_z``, the Rabi Hamiltonian (keeping the one-photon terms of
the dressed spin operators) splits into 2x2 blocks spanned by
|n, +x> and |n+1, -x>, with the isolated ground state |0, -x>.
The block for photon number n is

    [[ n w + c + (W/2) G0(n),   kappa_n                       ],
     [ kappa_n,                 (n+1) w + c - (W/2) G0(n+1)   ]]

with ``c = w lam^2 + 2 lam g``, ``G0(n) = exp(-2 lam^2) L_n(4 lam^2)`` and
``kappa_n = (lam w + g) sqrt(n+1) - W lam exp(-2 lam^2) L_n^1(4 lam^2) / sqrt(n+1)``.

Spin states in the rotated frame use the phase convention
``|+x> = (|up> + |down>)/sqrt2`` and ``|-x> = (|down> - |up>)/sqrt2``, under
which ``sigma_z = -(tau_+ + tau_-)`` and the block coupling is ``+kappa_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import TruncationTooSmall
from .exact import displacement_operator
from .lambda_solver import LambdaSolution, lambda_closed_form
from .laguerre import laguerre, laguerre_assoc1
from .params import ModelParams, jc_energies, validate_params

LambdaLike = Union[LambdaSolution, float]


@dataclass(frozen=True)
class AnalyticIntermediates:
    """Dressing factors for photon number ``n``.

    ``R_r`` is the co-rotating coupling ``(lam w + g) - (W/2) f1`` and
    ``R_ar`` the counter-rotating one ``(lam w + g) + (W/2) f1``; when
    ``R_ar`` vanishes, ``R_r = 2 (lam w + g)``.
    """

    n: int
    G0: float
    f1: float
    R_r: float
    R_ar: float


def intermediates(p: ModelParams, lam: LambdaLike, n: int, *, small_lambda: bool = False) -> AnalyticIntermediates:
    """G0(n), f1(n+1, n) and the two couplings.

    ``small_lambda`` replaces ``L_n^1(4 lam^2)`` by ``n + 1`` in f1, the
    approximation under which the n-independent lambda equation holds.
    """
    lam = float(lam)
    x = 4.0 * lam * lam
    damp = math.exp(-2.0 * lam * lam)
    assoc = (n + 1.0) if small_lambda else laguerre_assoc1(n, x)
    f1 = 2.0 * lam * damp * assoc / (n + 1)
    base = lam * p.omega + p.g
    return AnalyticIntermediates(
        n=n,
        G0=damp * laguerre(n, x),
        f1=f1,
        R_r=base - 0.5 * p.Omega_r * f1,
        R_ar=base + 0.5 * p.Omega_r * f1,
    )


def _offset(p: ModelParams, lam: float) -> float:
    return p.omega * lam * lam + 2.0 * lam * p.g


def _block(p: ModelParams, lam: float, n: int) -> tuple[float, float, float]:
    """Diagonal entries for |n,+x>, |n+1,-x> and their coupling kappa_n."""
    x = 4.0 * lam * lam
    damp = math.exp(-2.0 * lam * lam)
    c = _offset(p, lam)
    upper = n * p.omega + c + 0.5 * p.Omega_r * damp * laguerre(n, x)
    lower = (n + 1) * p.omega + c - 0.5 * p.Omega_r * damp * laguerre(n + 1, x)
    root = math.sqrt(n + 1)
    kappa = (lam * p.omega + p.g) * root - p.Omega_r * lam * damp * laguerre_assoc1(n, x) / root
    return upper, lower, kappa


def ground_energy(p: ModelParams, lam: LambdaLike) -> float:
    """E_G = w lam^2 + 2 lam g - (W/2) exp(-2 lam^2)."""
    lam = float(lam)
    return _offset(p, lam) - 0.5 * p.Omega_r * math.exp(-2.0 * lam * lam)


def excited_energies(p: ModelParams, lam: LambdaLike, n: int) -> tuple[float, float]:
    """The doublet (E_minus, E_plus) of block ``n``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    lam = float(lam)
    x = 4.0 * lam * lam
    damp = math.exp(-2.0 * lam * lam)
    ln, ln1 = laguerre(n, x), laguerre(n + 1, x)
    centre = (n + 0.5) * p.omega + _offset(p, lam) + 0.25 * p.Omega_r * damp * (ln - ln1)
    gap = p.omega - 0.5 * p.Omega_r * damp * (ln + ln1)
    root = math.sqrt(n + 1)
    kappa = (lam * p.omega + p.g) * root - p.Omega_r * lam * damp * laguerre_assoc1(n, x) / root
    half = 0.5 * math.sqrt(gap * gap + 4.0 * kappa * kappa)
    return centre - half, centre + half


def mixing_angle(p: ModelParams, lam: LambdaLike, n: int) -> float:
    """theta_n in [0, pi/2] with |+,n> = cos|n,+x> + sin|n+1,-x> the upper state.

    ``tan(2 theta_n) = 2 kappa_n / (d_upper - d_lower)``, resolved with atan2.
    The fully degenerate case (no gap, no coupling) returns 0.
    """
    upper, lower, kappa = _block(p, float(lam), n)
    return 0.5 * math.atan2(2.0 * kappa, upper - lower)


@dataclass(frozen=True)
class Level:
    n: int
    E_minus: float
    E_plus: float
    theta: float


@dataclass(frozen=True)
class AnalyticSpectrum:
    params: ModelParams
    lam: LambdaSolution
    E_G: float
    levels: list
    sorted_energies: np.ndarray

    def state_energy(self, m: int) -> float:
        """Energy of analytic state ``m`` (0 is the ground state)."""
        if m == 0:
            return self.E_G
        lvl = self.levels[(m - 1) // 2]
        return lvl.E_minus if m % 2 else lvl.E_plus

    def ranked_states(self, count: int) -> list:
        """State labels ``m`` of the ``count`` lowest analytic energies."""
        labels = range(2 * len(self.levels) + 1)
        ordered = sorted(labels, key=lambda m: (self.state_energy(m), m))
        return ordered[:count]


def analytic_spectrum(p: ModelParams, n_max: int, lam: Optional[LambdaSolution] = None) -> AnalyticSpectrum:
    """Ground energy plus doublets n = 0..n_max-1 (closed-form lambda by default)."""
    validate_params(p)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if lam is None:
        lam = lambda_closed_form(p)
    E_G = ground_energy(p, lam)
    levels = []
    for n in range(n_max):
        lo, hi = excited_energies(p, lam, n)
        levels.append(Level(n, lo, hi, mixing_angle(p, lam, n)))
    energies = [E_G] + [e for lvl in levels for e in (lvl.E_minus, lvl.E_plus)]
    return AnalyticSpectrum(p, lam, E_G, levels, np.sort(np.array(energies)))


@dataclass(frozen=True)
class StateVector:
    """Lab-frame amplitudes over the interleaved |spin, n> basis."""

    amplitudes: np.ndarray
    label: str


def _to_lab(lam: float, plus_x: np.ndarray, minus_x: np.ndarray, n_max: int) -> np.ndarray:
    s = 1.0 / math.sqrt(2.0)
    up = s * (plus_x - minus_x)
    down = s * (plus_x + minus_x)
    # exp[-lam sigma_z (a^dag - a)] acts branch-wise on sigma_z eigenstates.
    up = displacement_operator(lam, 1, n_max) @ up
    down = displacement_operator(lam, -1, n_max) @ down
    # exp(i pi sigma_y / 4) = [[1, 1], [-1, 1]] / sqrt2
    out = np.empty(2 * (n_max + 1))
    out[0::2] = s * (up + down)
    out[1::2] = s * (down - up)
    tail = max(abs(out[-1]), abs(out[-2]))
    if tail > 1e-12:
        raise TruncationTooSmall(f"state amplitude {tail:.2e} at n={n_max}; raise n_max")
    return out


def ground_state(p: ModelParams, lam: LambdaLike, n_max: int) -> StateVector:
    validate_params(p)
    plus_x = np.zeros(n_max + 1)
    minus_x = np.zeros(n_max + 1)
    minus_x[0] = 1.0
    return StateVector(_to_lab(float(lam), plus_x, minus_x, n_max), "ground")


def excited_state(p: ModelParams, lam: LambdaLike, m: int, n_max: int) -> StateVector:
    """Excited state ``m``: odd m is |-, (m-1)/2>, even m is |+, (m-2)/2>."""
    validate_params(p)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n = (m - 1) // 2
    if n + 1 > n_max:
        raise TruncationTooSmall(f"state m={m} needs n_max >= {n + 1}")
    theta = mixing_angle(p, lam, n)
    c, s = math.cos(theta), math.sin(theta)
    plus_x = np.zeros(n_max + 1)
    minus_x = np.zeros(n_max + 1)
    if m % 2:
        plus_x[n], minus_x[n + 1] = -s, c
    else:
        plus_x[n], minus_x[n + 1] = c, s
    return StateVector(_to_lab(float(lam), plus_x, minus_x, n_max), f"excited-{m}")


def mean_photon_ground(lam: LambdaLike) -> float:
    return float(lam) ** 2


def mean_photon_excited(p: ModelParams, lam: LambdaLike, m: int, form: str = "derived") -> float:
    """<a^dag a> of analytic excited state ``m``.

    ``form="derived"`` is the expectation value in the states built by
    :func:`excited_state`: ``mu + lam^2 + cos^2 - 2 lam sin cos sqrt(mu+1)``
    for odd m and ``nu + lam^2 + sin^2 + 2 lam sin cos sqrt(nu+1)`` for even m.
    ``form="printed"`` uses ``+/- 2 lam tan(theta) sqrt(m+1)`` cross terms in
    place of those, written over ``1 + tan^2`` as cos^2-weighted terms so that
    theta = pi/2 stays finite.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    lam = float(lam)
    n = (m - 1) // 2
    theta = mixing_angle(p, lam, n)
    c, s = math.cos(theta), math.sin(theta)
    if form == "derived":
        cross = 2.0 * lam * s * c * math.sqrt(n + 1)
        if m % 2:
            return n + lam * lam + c * c - cross
        return n + lam * lam + s * s + cross
    if form == "printed":
        cross = 2.0 * lam * s * c * math.sqrt(m + 1)
        if m % 2:
            return n + lam * lam + c * c + cross
        return n + lam * lam + s * s - cross
    raise ValueError(f"unknown form {form!r}")


def bloch_siegert_shift(p: ModelParams, lam: Optional[LambdaLike] = None) -> float:
    """Analytic E_{-,0} - E_G minus the same transition of the JC model."""
    validate_params(p)
    if lam is None:
        lam = lambda_closed_form(p)
    e_minus, _ = excited_energies(p, lam, 0)
    jc = jc_energies(p, 1)
    return (e_minus - ground_energy(p, lam)) - (jc.doublet(0)[0] - jc.ground_energy)
