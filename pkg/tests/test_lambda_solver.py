import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rabi_jc.laguerre import laguerre_assoc1
from rabi_jc.lambda_solver import (
    CLOSED_FORM,
    ROOT,
    ROOT_PER_N,
    defining_function,
    lambda_closed_form,
    lambda_root,
    lambda_root_per_n,
    solve_lambda,
)
from rabi_jc.params import ModelParams


def bisection_oracle(p, n=None, iters=200):
    def h(lam):
        ratio = 1.0 if n is None else laguerre_assoc1(n, 4 * lam * lam) / (n + 1)
        return lam * p.omega + p.g + p.Omega_r * lam * math.exp(-2 * lam * lam) * ratio

    lo, hi = -1.0, 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if h(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def fixed_point_oracle(p, iters=500):
    lam = 0.0
    for _ in range(iters):
        lam = -p.g / (p.omega + p.Omega_r * math.exp(-2 * lam * lam))
    return lam


params_strategy = st.builds(
    ModelParams,
    omega=st.just(1.0),
    Omega_r=st.floats(min_value=0.0, max_value=2.0, allow_subnormal=False),
    g=st.floats(min_value=0.0, max_value=0.5, allow_subnormal=False),
)


def test_closed_form_examples():
    assert lambda_closed_form(ModelParams(1, 1, 0)).value == 0.0
    # mpmath: -0.050124999739583984..., -0.065864622535879888...
    assert lambda_closed_form(ModelParams(1, 1, 0.1)).value == pytest.approx(-0.05012499973958398, rel=1e-14)
    sol = lambda_closed_form(ModelParams(8.13, 4.25, 0.813))
    assert sol.value == pytest.approx(-0.06586462253587989, rel=1e-14)
    assert sol.method == CLOSED_FORM
    assert sol.residual == pytest.approx(defining_function(ModelParams(8.13, 4.25, 0.813), sol.value))


def test_root_examples():
    zero = lambda_root(ModelParams(1, 1, 0))
    assert zero.value == 0.0 and zero.residual == 0.0
    sol = lambda_root(ModelParams(1, 1, 0.1))
    assert sol.method == ROOT
    assert sol.value == pytest.approx(-0.05012562866810198, rel=1e-12)
    assert sol.value == pytest.approx(fixed_point_oracle(ModelParams(1, 1, 0.1)), abs=1e-14)
    p = ModelParams(1, 1.5, 0.3)
    sol = lambda_root(p)
    assert abs(p.omega * sol.value + p.g + p.Omega_r * sol.value * math.exp(-2 * sol.value**2)) <= 1e-12
    assert sol.value == pytest.approx(bisection_oracle(p), abs=1e-13)


def test_per_n_examples():
    for p in (ModelParams(1, 1, 0.1), ModelParams(1, 1.5, 0.3), ModelParams(8.13, 4.25, 0.813)):
        per0 = lambda_root_per_n(p, 0)
        assert per0.value == lambda_root(p).value
        assert per0.method == ROOT_PER_N and per0.n == 0
    p = ModelParams(1, 1, 0.1)
    sol = lambda_root_per_n(p, 3)
    assert sol.value == pytest.approx(bisection_oracle(p, 3), abs=1e-13)
    # mpmath root: -0.050511911392250826
    assert sol.value == pytest.approx(-0.050511911392250826, rel=1e-12)
    assert abs(sol.value - lambda_root(p).value) < 1e-3
    for n in range(6):
        assert lambda_root_per_n(ModelParams(1, 1, 0), n).value == 0.0


@settings(max_examples=200, deadline=None)
@given(params_strategy, st.integers(min_value=0, max_value=10))
def test_bracket_is_valid(p, n):
    assert defining_function(p, 0.0, n) == p.g
    assert defining_function(p, -1.0, n) < 0
    assert defining_function(p, -1.0) < 0


@settings(max_examples=200, deadline=None)
@given(params_strategy)
def test_root_invariants(p):
    sol = lambda_root(p)
    assert -1 < sol.value <= 0
    assert (sol.value == 0) == (p.g == 0)
    assert abs(sol.residual) <= 1e-12 * max(p.omega, p.Omega_r, 1.0)
    assert sol.value == pytest.approx(bisection_oracle(p), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(params_strategy, st.integers(min_value=0, max_value=8))
def test_per_n_invariants(p, n):
    sol = lambda_root_per_n(p, n)
    assert -1 < sol.value <= 0
    assert abs(sol.residual) <= 1e-12 * max(p.omega, p.Omega_r, 1.0)


@settings(max_examples=200, deadline=None)
@given(params_strategy)
def test_closed_form_close_to_root(p):
    cf = lambda_closed_form(p).value
    root = lambda_root(p).value
    assert abs(cf - root) <= 0.05 * abs(root) + 1e-6


@pytest.mark.parametrize("Omega_r", [0.0, 0.5, 1.0, 2.0])
def test_weak_coupling_limit(Omega_r):
    p = ModelParams(1.0, Omega_r, 1e-4)
    expected = -p.g / (p.omega + p.Omega_r)
    assert lambda_root(p).value / expected == pytest.approx(1.0, rel=1e-3)
    assert lambda_closed_form(p).value / expected == pytest.approx(1.0, rel=1e-3)


def test_omega_zero_root_is_exact_displacement():
    for g in (0.1, 0.3, 0.5):
        assert lambda_root(ModelParams(1, 0, g)).value == pytest.approx(-g, abs=1e-14)


def test_solve_lambda_dispatch():
    p = ModelParams(1, 1, 0.2)
    assert solve_lambda(p, "closed") == lambda_closed_form(p)
    assert solve_lambda(p, "root") == lambda_root(p)
    with pytest.raises(ValueError):
        solve_lambda(p, "newton")


def test_float_conversion():
    assert float(lambda_root(ModelParams(1, 1, 0.1))) == lambda_root(ModelParams(1, 1, 0.1)).value
    assert np.isfinite(float(lambda_closed_form(ModelParams(1, 2, 0.5))))
