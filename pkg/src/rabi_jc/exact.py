"""Exact diagonalization of the Rabi Hamiltonian in a truncated Fock space.

Basis states |spin, n> are interleaved as ``flat = 2 n + (0 if up else 1)``
for n = 0..n_max, so the Hamiltonian is a banded real symmetric matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .eigen import symmetric_eigh
from .errors import DimensionOverflow, NoConvergence, TruncationTooSmall
from .params import ModelParams, basis_dimension, jc_energies, validate_params

MAX_N_MAX = 4096
DEFAULT_N_MAX = 60


@dataclass(frozen=True)
class ExactSpectrum:
    """Ascending eigenvalues with optional eigenvectors (as columns).

    ``convergence_defect`` is the largest shift of the requested levels
    between this truncation and its doubling; zero for a bare
    decomposition that was never certified.
    """

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    n_max: Optional[int]
    converged: bool
    convergence_defect: float


def build_hamiltonian(p: ModelParams, n_max: int, *, rotating_only: bool = False) -> np.ndarray:
    """Dense matrix of the Rabi Hamiltonian truncated at ``n_max`` photons.

    With ``rotating_only`` the counter-rotating elements |down, n> <-> |up, n+1>
    are dropped, which yields the Jaynes-Cummings Hamiltonian.
    """
    validate_params(p)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if n_max > MAX_N_MAX:
        raise DimensionOverflow(f"n_max={n_max} exceeds the limit {MAX_N_MAX}")
    dim = basis_dimension(n_max)
    H = np.zeros((dim, dim))
    n = np.arange(n_max + 1)
    up = 2 * n
    down = up + 1
    H[up, up] = n * p.omega + 0.5 * p.Omega_r
    H[down, down] = n * p.omega - 0.5 * p.Omega_r

    # sigma_x (a^dag + a) flips the spin and moves one photon.
    k = n[:-1]
    amp = p.g * np.sqrt(k + 1.0)
    H[2 * k, 2 * (k + 1) + 1] = amp          # |up, k> <-> |down, k+1>
    H[2 * (k + 1) + 1, 2 * k] = amp
    if not rotating_only:
        H[2 * k + 1, 2 * (k + 1)] = amp      # |down, k> <-> |up, k+1>
        H[2 * (k + 1), 2 * k + 1] = amp
    return H


def eigen_decompose(H: np.ndarray, want_vectors: bool = True) -> ExactSpectrum:
    w, v = symmetric_eigh(H, want_vectors)
    return ExactSpectrum(w, v, None, True, 0.0)


def exact_spectrum(
    p: ModelParams,
    k_levels: int = 10,
    tol: Optional[float] = None,
    *,
    n_max: int = DEFAULT_N_MAX,
    want_vectors: bool = False,
) -> ExactSpectrum:
    """Diagonalize at ``n_max`` and certify the lowest ``k_levels`` by doubling.

    The truncation is doubled until the requested levels move by less than
    ``tol`` (default ``1e-10 * omega``). The returned spectrum is the one at
    the smaller truncation of the first agreeing pair.
    """
    validate_params(p)
    if k_levels < 1:
        raise ValueError(f"k_levels must be >= 1, got {k_levels}")
    if k_levels > basis_dimension(n_max):
        raise ValueError(f"k_levels={k_levels} exceeds the basis size at n_max={n_max}")
    if tol is None:
        tol = 1e-10 * p.omega
    if 2 * n_max > MAX_N_MAX:
        raise NoConvergence(f"cannot certify n_max={n_max}: doubling exceeds {MAX_N_MAX}")

    current = eigen_decompose(build_hamiltonian(p, n_max), want_vectors)
    while True:
        bigger = 2 * n_max
        if bigger > MAX_N_MAX:
            raise NoConvergence(
                f"lowest {k_levels} levels not converged to {tol:g} below n_max={MAX_N_MAX}"
            )
        trial = eigen_decompose(build_hamiltonian(p, bigger), False)
        defect = float(np.max(np.abs(current.eigenvalues[:k_levels] - trial.eigenvalues[:k_levels])))
        if defect < tol:
            return replace(current, n_max=n_max, converged=True, convergence_defect=defect)
        n_max = bigger
        current = eigen_decompose(build_hamiltonian(p, n_max), want_vectors) if want_vectors else trial


def photon_numbers(dim: int) -> np.ndarray:
    return np.arange(dim) // 2


def mean_photon(v: np.ndarray) -> float:
    """<a^dag a> = sum_n n |c_{spin,n}|^2."""
    v = np.asarray(v)
    return float(np.sum(photon_numbers(v.size) * np.abs(v) ** 2))


def parity_signs(dim: int) -> np.ndarray:
    """Diagonal of Pi = sigma_z (-1)^{a^dag a} in the interleaved basis."""
    idx = np.arange(dim)
    spin = np.where(idx % 2 == 0, 1.0, -1.0)
    return spin * np.where(photon_numbers(dim) % 2 == 0, 1.0, -1.0)


def parity_expectation(v: np.ndarray) -> float:
    v = np.asarray(v)
    return float(np.sum(parity_signs(v.size) * np.abs(v) ** 2))


def parity_resolved(spectrum: ExactSpectrum, degeneracy_tol: float = 1e-9) -> np.ndarray:
    """Eigenvectors rotated within degenerate clusters to diagonalize parity.

    Levels closer than ``degeneracy_tol`` form a cluster; inside each
    cluster the parity operator is diagonalized so every returned column
    has definite parity.
    """
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum carries no eigenvectors")
    w = spectrum.eigenvalues
    V = spectrum.eigenvectors.copy()
    signs = parity_signs(V.shape[0])
    start = 0
    while start < w.size:
        stop = start + 1
        while stop < w.size and w[stop] - w[stop - 1] < degeneracy_tol:
            stop += 1
        if stop - start > 1:
            block = V[:, start:stop]
            _, rot = symmetric_eigh(block.T @ (signs[:, None] * block))
            V[:, start:stop] = block @ rot
        start = stop
    return V


def _expm(A: np.ndarray) -> np.ndarray:
    # Scaling and squaring with a Taylor polynomial.
    norm = np.linalg.norm(A, 1)
    squarings = max(0, int(math.ceil(math.log2(norm / 0.25)))) if norm > 0.25 else 0
    X = A / (2.0**squarings)
    result = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, 20):
        term = term @ X / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def displacement_operator(lam: float, spin_sign: int, n_max: int) -> np.ndarray:
    """exp[-lam * spin_sign * (a^dag - a)] on Fock states 0..n_max.

    Column ``k`` is the displaced Fock state D(-lam * spin_sign)|k>. The
    generator is truncated, so the matrix is orthogonal to rounding but only
    low columns approximate the untruncated operator; the displaced vacuum's
    top amplitude must stay below 1e-8.
    """
    if spin_sign not in (1, -1):
        raise ValueError(f"spin_sign must be +1 or -1, got {spin_sign}")
    if not abs(lam) < 1:
        raise ValueError(f"|lambda| must be < 1, got {lam}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    a = np.diag(np.sqrt(np.arange(1.0, n_max + 1)), 1)
    D = _expm(-lam * spin_sign * (a.T - a))
    if abs(D[n_max, 0]) > 1e-8:
        raise TruncationTooSmall(
            f"displaced vacuum leaks {abs(D[n_max, 0]):.2e} into n={n_max}; raise n_max"
        )
    return D


def exact_bloch_siegert_shift(p: ModelParams, *, n_max: int = DEFAULT_N_MAX) -> float:
    """Lowest exact Rabi transition minus the lowest Jaynes-Cummings transition."""
    spec = exact_spectrum(p, 2, n_max=n_max)
    jc = jc_energies(p, 1)
    jc_transition = jc.doublet(0)[0] - jc.ground_energy
    return float(spec.eigenvalues[1] - spec.eigenvalues[0] - jc_transition)
