"""Model parameters, basis bookkeeping and the Jaynes-Cummings reference.

All frequencies share one unit (hbar = 1). The Rabi Hamiltonian is

    H = omega a^dag a + (Omega_r / 2) sigma_z + g sigma_x (a^dag + a)

and the Jaynes-Cummings model keeps only the co-rotating part of the
coupling, ``g (sigma_- a^dag + sigma_+ a)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NegativeCoupling, NegativeResonance, NonPositiveOmega


@dataclass(frozen=True)
class ModelParams:
    """Oscillator frequency, two-level splitting and coupling strength."""

    omega: float = 1.0
    Omega_r: float = 1.0
    g: float = 0.0


def validate_params(p: ModelParams) -> ModelParams:
    """Return ``p`` unchanged, or raise naming the violated field."""
    if not (math.isfinite(p.omega) and p.omega > 0):
        raise NonPositiveOmega(f"omega must be finite and > 0, got {p.omega!r}")
    if not (math.isfinite(p.Omega_r) and p.Omega_r >= 0):
        raise NegativeResonance(f"Omega_r must be finite and >= 0, got {p.Omega_r!r}")
    if not (math.isfinite(p.g) and p.g >= 0):
        raise NegativeCoupling(f"g must be finite and >= 0, got {p.g!r}")
    return p


class Spin(enum.IntEnum):
    """sigma_z eigenvalue of a basis state."""

    UP = 1
    DOWN = -1


@dataclass(frozen=True)
class BasisIndex:
    """Label of a product state |spin, n> in the truncated space.

    The flat layout interleaves spins: ``flat_index = 2 n + (0 if up else 1)``.
    """

    spin: Spin
    n: int

    @property
    def flat_index(self) -> int:
        return 2 * self.n + (0 if self.spin is Spin.UP else 1)

    @classmethod
    def from_flat(cls, index: int) -> "BasisIndex":
        if index < 0:
            raise ValueError(f"flat index must be >= 0, got {index}")
        n, r = divmod(index, 2)
        return cls(Spin.UP if r == 0 else Spin.DOWN, n)


def basis_dimension(n_max: int) -> int:
    return 2 * (n_max + 1)


@dataclass(frozen=True)
class JCReference:
    """Jaynes-Cummings spectrum: the isolated ground state and the doublets.

    ``doublets[n]`` holds the ascending pair diagonalizing the block spanned
    by |up, n> and |down, n+1>.
    """

    ground_energy: float
    doublets: np.ndarray

    def doublet(self, n: int) -> tuple[float, float]:
        lo, hi = self.doublets[n]
        return float(lo), float(hi)


def jc_energies(p: ModelParams, n_levels: int) -> JCReference:
    validate_params(p)
    if n_levels < 1:
        raise ValueError(f"n_levels must be >= 1, got {n_levels}")
    n = np.arange(n_levels, dtype=float)
    detuning = p.Omega_r - p.omega
    half_split = 0.5 * np.sqrt(detuning**2 + 4.0 * p.g**2 * (n + 1.0))
    centre = (n + 0.5) * p.omega
    doublets = np.column_stack([centre - half_split, centre + half_split])
    return JCReference(ground_energy=-0.5 * p.Omega_r, doublets=doublets)
