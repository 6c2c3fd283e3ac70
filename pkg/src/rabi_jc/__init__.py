"""Quantum Rabi model: analytic Jaynes-Cummings-like spectrum and exact oracle."""

__version__ = "0.1.0"

from .analytic import (  # noqa: E402
    AnalyticSpectrum,
    StateVector,
    analytic_spectrum,
    bloch_siegert_shift,
    excited_energies,
    excited_state,
    ground_energy,
    ground_state,
    mean_photon_excited,
    mean_photon_ground,
    mixing_angle,
)
from .exact import ExactSpectrum, build_hamiltonian, eigen_decompose, exact_spectrum  # noqa: E402
from .lambda_solver import LambdaSolution, lambda_closed_form, lambda_root, lambda_root_per_n  # noqa: E402
from .params import BasisIndex, JCReference, ModelParams, Spin, jc_energies, validate_params  # noqa: E402

__all__ = [
    "AnalyticSpectrum",
    "BasisIndex",
    "ExactSpectrum",
    "JCReference",
    "LambdaSolution",
    "ModelParams",
    "Spin",
    "StateVector",
    "analytic_spectrum",
    "bloch_siegert_shift",
    "build_hamiltonian",
    "eigen_decompose",
    "exact_spectrum",
    "excited_energies",
    "excited_state",
    "ground_energy",
    "ground_state",
    "jc_energies",
    "lambda_closed_form",
    "lambda_root",
    "lambda_root_per_n",
    "mean_photon_excited",
    "mean_photon_ground",
    "mixing_angle",
    "validate_params",
]
