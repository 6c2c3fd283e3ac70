import numpy as np
import pytest

from rabi_jc import exact
from rabi_jc.errors import DimensionOverflow, NoConvergence, TruncationTooSmall
from rabi_jc.exact import (
    build_hamiltonian,
    displacement_operator,
    eigen_decompose,
    exact_bloch_siegert_shift,
    exact_spectrum,
    mean_photon,
    parity_expectation,
    parity_resolved,
)
from rabi_jc.params import BasisIndex, ModelParams, Spin, jc_energies

from oracles import coherent_column, kron_hamiltonian


def basis_vector(spin, n, n_max=10):
    v = np.zeros(2 * (n_max + 1))
    v[BasisIndex(spin, n).flat_index] = 1.0
    return v


def test_build_decoupled():
    H = build_hamiltonian(ModelParams(1, 1, 0), 1)
    assert np.array_equal(H, np.diag([0.5, -0.5, 1.5, 0.5]))


def test_build_coupling_positions():
    H = build_hamiltonian(ModelParams(1, 1, 0.1), 1)
    expected = np.diag([0.5, -0.5, 1.5, 0.5])
    expected[0, 3] = expected[3, 0] = 0.1
    expected[1, 2] = expected[2, 1] = 0.1
    assert np.array_equal(H, expected)


@pytest.mark.parametrize("n_max", [1, 5, 40])
@pytest.mark.parametrize("p", [ModelParams(1, 1, 0.3), ModelParams(8.13, 4.25, 0.813), ModelParams(1, 0, 0.5)])
def test_build_matches_kron_oracle(p, n_max):
    H = build_hamiltonian(p, n_max)
    assert np.array_equal(H, H.T)
    assert np.allclose(H, kron_hamiltonian(p.omega, p.Omega_r, p.g, n_max), atol=1e-15)


@pytest.mark.parametrize("n_max", [1, 7, 60])
def test_trace(n_max):
    p = ModelParams(1.3, 0.7, 0.2)
    direct = sum(2 * n * p.omega for n in range(n_max + 1))
    assert np.trace(build_hamiltonian(p, n_max)) == pytest.approx(direct, rel=1e-14)
    assert direct == pytest.approx(p.omega * n_max * (n_max + 1))


def test_dimension_overflow():
    with pytest.raises(DimensionOverflow):
        build_hamiltonian(ModelParams(), 4097)


def test_jc_variant_reproduces_jc_energies():
    p = ModelParams(1.0, 0.8, 0.25)
    n_max = 30
    w = eigen_decompose(build_hamiltonian(p, n_max, rotating_only=True), False).eigenvalues
    jc = jc_energies(p, n_max)
    expected = np.sort(np.concatenate([[jc.ground_energy, n_max * p.omega + p.Omega_r / 2], jc.doublets.ravel()]))
    assert np.allclose(w, expected, atol=1e-12, rtol=0)


def test_decoupled_eigenvalues():
    spec = exact_spectrum(ModelParams(1, 1, 0), 5)
    assert spec.eigenvalues[:5] == pytest.approx([-0.5, 0.5, 0.5, 1.5, 1.5], abs=1e-14)


def test_ground_energy_weak_coupling():
    p = ModelParams(1, 1, 0.1)
    spec = exact_spectrum(p, 1)
    oracle = np.linalg.eigvalsh(kron_hamiltonian(1, 1, 0.1, 120))[0]
    assert spec.eigenvalues[0] == pytest.approx(oracle, abs=1e-12)
    assert spec.eigenvalues[0] == pytest.approx(-0.505, abs=1e-4)
    assert spec.converged and spec.n_max == 60 and spec.convergence_defect < 1e-10


def test_fig3_transition():
    spec = exact_spectrum(ModelParams(8.13, 4.25, 0.813), 2)
    oracle = np.linalg.eigvalsh(kron_hamiltonian(8.13, 4.25, 0.813, 120))
    assert spec.eigenvalues[1] - spec.eigenvalues[0] == pytest.approx(oracle[1] - oracle[0], abs=1e-11)
    assert spec.eigenvalues[1] - spec.eigenvalues[0] == pytest.approx(4.137, abs=1e-3)
    jc = jc_energies(ModelParams(8.13, 4.25, 0.813), 1)
    assert jc.doublet(0)[0] - jc.ground_energy == pytest.approx(4.0865, abs=1e-3)


def test_exact_bs_shift_fig3():
    assert exact_bloch_siegert_shift(ModelParams(8.13, 4.25, 0.813)) == pytest.approx(0.0503, abs=2e-4)
    assert exact_bloch_siegert_shift(ModelParams(8.13, 4.25, 0.0)) == pytest.approx(0.0, abs=1e-12)


def test_spectrum_contract():
    p = ModelParams(1, 1.5, 0.5)
    spec = exact_spectrum(p, 10, want_vectors=True)
    H = build_hamiltonian(p, spec.n_max)
    V, w = spec.eigenvectors, spec.eigenvalues
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.linalg.norm(H @ V - V * w, axis=0)) <= 1e-10 * np.linalg.norm(H)
    assert np.max(np.abs(V.T @ V - np.eye(V.shape[0]))) <= 1e-10


def test_doubling_until_converged():
    # A tiny starting truncation cannot hold g = 0.5; the solver must grow it.
    spec = exact_spectrum(ModelParams(1, 1, 0.5), 4, n_max=2)
    assert spec.converged and spec.n_max > 2
    ref = np.linalg.eigvalsh(kron_hamiltonian(1, 1, 0.5, 120))[:4]
    assert np.allclose(spec.eigenvalues[:4], ref, atol=1e-10)


def test_no_convergence(monkeypatch):
    with pytest.raises(NoConvergence):
        exact_spectrum(ModelParams(1, 1, 0.1), 1, n_max=3000)
    monkeypatch.setattr(exact, "MAX_N_MAX", 16)
    with pytest.raises(NoConvergence):
        exact_spectrum(ModelParams(1, 1, 0.5), 2, tol=-1.0, n_max=2)


def test_too_many_levels():
    with pytest.raises(ValueError):
        exact_spectrum(ModelParams(), 10, n_max=3)


def test_mean_photon_examples():
    assert mean_photon(basis_vector(Spin.UP, 0)) == 0
    assert mean_photon(basis_vector(Spin.DOWN, 3)) == 3
    v = (basis_vector(Spin.UP, 0) + basis_vector(Spin.DOWN, 2)) / np.sqrt(2)
    assert mean_photon(v) == pytest.approx(1.0, abs=1e-15)


def test_parity_examples():
    assert parity_expectation(basis_vector(Spin.UP, 0)) == 1
    assert parity_expectation(basis_vector(Spin.DOWN, 0)) == -1
    assert parity_expectation(basis_vector(Spin.UP, 1)) == -1
    assert parity_expectation(basis_vector(Spin.DOWN, 3)) == 1


def test_parity_conserved_by_eigenvectors():
    spec = exact_spectrum(ModelParams(1, 1, 0.3), 10, want_vectors=True)
    for k in range(spec.eigenvectors.shape[1]):
        assert abs(abs(parity_expectation(spec.eigenvectors[:, k])) - 1) <= 1e-8


def test_parity_resolution_of_degenerate_levels():
    spec = exact_spectrum(ModelParams(1, 1, 0), 10, want_vectors=True)
    V = parity_resolved(spec)
    assert np.allclose(V.T @ V, np.eye(V.shape[1]), atol=1e-12)
    H = build_hamiltonian(ModelParams(1, 1, 0), spec.n_max)
    assert np.allclose(H @ V, V * spec.eigenvalues, atol=1e-12)
    for k in range(V.shape[1]):
        assert abs(abs(parity_expectation(V[:, k])) - 1) <= 1e-12


def test_displacement_identity():
    assert np.allclose(displacement_operator(0.0, 1, 10), np.eye(11), atol=0)


@pytest.mark.parametrize("spin_sign", [1, -1])
def test_displacement_coherent_column(spin_sign):
    D = displacement_operator(0.3, spin_sign, 40)
    # exp[-lam s (a^dag - a)] |0> is the coherent state with alpha = -lam s
    assert np.allclose(D[:, 0], coherent_column(-0.3 * spin_sign, 40), atol=1e-10, rtol=0)


@pytest.mark.parametrize("lam", [0.05, 0.3, -0.6])
def test_displacement_group_inverse_and_unitarity(lam):
    D = displacement_operator(lam, 1, 40)
    Dinv = displacement_operator(-lam, 1, 40)
    assert np.allclose(D @ Dinv, np.eye(41), atol=1e-10)
    assert np.allclose(D.T @ D, np.eye(41), atol=1e-10)
    assert np.allclose(Dinv, displacement_operator(lam, -1, 40), atol=0)


def test_displacement_matches_fock_matrix_elements():
    # <n+1| D(alpha) |n> against the Laguerre closed form alpha e^{-a^2/2} L_n^1(a^2) / sqrt(n+1)
    from rabi_jc.laguerre import laguerre_assoc1

    alpha = 0.4
    D = displacement_operator(-alpha, 1, 40)
    for n in range(10):
        expected = alpha * np.exp(-alpha**2 / 2) * laguerre_assoc1(n, alpha**2) / np.sqrt(n + 1)
        assert D[n + 1, n] == pytest.approx(expected, abs=1e-12)


def test_displacement_truncation_errors():
    with pytest.raises(TruncationTooSmall):
        displacement_operator(0.99, 1, 3)
    with pytest.raises(ValueError):
        displacement_operator(1.5, 1, 40)
    with pytest.raises(ValueError):
        displacement_operator(0.1, 0, 40)
