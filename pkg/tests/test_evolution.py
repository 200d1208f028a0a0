import cmath
import math

import numpy as np
import pytest

from twophase_qw import (
    CoinParameters,
    WalkState,
    binned_density,
    distribution,
    empirical_cdf,
    empirical_moment,
    evolve,
    make_initial_state,
    step,
    weight_matrices,
)
from twophase_qw.errors import BinError, ResourceError


def test_single_step_splits_spinor(example_params):
    init = make_initial_state(0.6, 0.8j)
    state = evolve(example_params, init, 1)
    # P_0 keeps the upper component and sends it left; Q_0 negates the
    # lower component and sends it right.
    assert np.allclose(state.psi(-1), [init.alpha, 0.0], atol=1e-16)
    assert np.allclose(state.psi(1), [0.0, -init.beta], atol=1e-16)
    assert np.array_equal(state.psi(0), [0.0, 0.0])


def test_two_steps_from_upper_basis_state(example_params, example_init):
    state = evolve(example_params, example_init, 2)
    dist = distribution(state)
    assert math.isclose(dist.prob(-2), 0.5, abs_tol=1e-15)
    assert math.isclose(dist.prob(0), 0.5, abs_tol=1e-15)
    assert dist.prob(2) == 0.0
    # the mass at the origin came back through Q_{-1}
    expected = cmath.exp(-1j * example_params.sigma_minus) / math.sqrt(2.0)
    assert np.allclose(state.psi(0), [0.0, expected], atol=1e-15)


def test_evolve_matches_repeated_step():
    params = CoinParameters(0.9, 4.2)
    init = make_initial_state(0.5 + 0.5j, 0.5 - 0.5j)
    t = 25
    fast = evolve(params, init, t)
    slow = WalkState(0, np.array([[init.alpha, init.beta]], dtype=np.complex128))
    for _ in range(t):
        slow = step(slow, params)
    assert np.allclose(fast.amplitudes, slow.amplitudes, atol=1e-13)


def test_parity_support_is_exact(example_params, example_init):
    state = evolve(example_params, example_init, 31)
    xs = state.positions()
    dead = (xs + state.t) % 2 == 1
    assert np.array_equal(state.amplitudes[dead], np.zeros_like(state.amplitudes[dead]))


def test_norm_conserved_over_random_tuples(frozen_tuples):
    for params, init in frozen_tuples[:25]:
        state = evolve(params, init, 200)
        assert abs(state.total_probability() - 1.0) < 1e-13


def test_evolve_is_linear_in_the_initial_state():
    params = CoinParameters(2.2, 0.4)
    alpha, beta = 0.6, 0.8j
    t = 12
    series = weight_matrices(params, t)
    combined = evolve(params, make_initial_state(alpha, beta), t)
    for x in range(-t, t + 1):
        xi = series.xi(t, x)
        assert np.allclose(
            combined.psi(x), xi @ np.array([alpha, beta]), atol=1e-13
        )


def test_evolve_rejects_negative_t(example_params, example_init):
    with pytest.raises(ValueError):
        evolve(example_params, example_init, -1)


def test_evolve_respects_resource_cap(example_params, example_init, monkeypatch):
    monkeypatch.setenv("QW_MAX_T", "50")
    with pytest.raises(ResourceError):
        evolve(example_params, example_init, 51)
    evolve(example_params, example_init, 50)


def test_distribution_support_and_mass(example_params, example_init):
    dist = distribution(evolve(example_params, example_init, 40))
    assert np.array_equal(dist.positions, np.arange(-40, 41, 2))
    assert math.isclose(float(dist.probs.sum()), 1.0, abs_tol=1e-13)
    assert dist.prob(3) == 0.0
    assert dist.prob(999) == 0.0


def test_binned_density_conserves_mass(example_params, example_init):
    dist = distribution(evolve(example_params, example_init, 500))
    centers, density = binned_density(dist, 0.02)
    assert math.isclose(float(density.sum()) * 0.02, 1.0, abs_tol=1e-12)
    assert centers[0] == -centers[-1]
    assert np.all(density >= 0.0)


def test_binned_density_bin_assignment():
    from twophase_qw.evolution import Distribution

    dist = Distribution(
        t=100, positions=np.array([1, 45]), probs=np.array([0.5, 0.5])
    )
    centers, density = binned_density(dist, 0.1)
    # x/t = 0.01 falls in the bin centered at 0; x/t = 0.45 sits exactly on
    # a bin edge and the left-closed convention pushes it into center 0.5
    assert math.isclose(density[np.argmin(np.abs(centers))], 5.0)
    assert math.isclose(density[np.argmin(np.abs(centers - 0.5))], 5.0)


def test_binned_density_rejects_bad_widths(example_params, example_init):
    dist = distribution(evolve(example_params, example_init, 100))
    with pytest.raises(BinError):
        binned_density(dist, 0.0)
    with pytest.raises(BinError):
        binned_density(dist, 1.5)
    with pytest.raises(BinError):
        binned_density(dist, 0.01)  # below 2/t at t = 100
    binned_density(dist, 0.02)  # exactly one occupied site per bin is allowed


def test_empirical_cdf_monotone(example_params, example_init):
    dist = distribution(evolve(example_params, example_init, 64))
    ratios, cum = empirical_cdf(dist)
    assert np.all(np.diff(ratios) > 0)
    assert np.all(np.diff(cum) >= 0)
    assert math.isclose(float(cum[-1]), 1.0, abs_tol=1e-13)


def test_empirical_moments(example_params, example_init):
    dist = distribution(evolve(example_params, example_init, 64))
    assert math.isclose(
        empirical_moment(dist, 0), float(dist.probs.sum()), abs_tol=1e-15
    )
    m1 = float(np.sum((dist.positions / dist.t) * dist.probs))
    assert math.isclose(empirical_moment(dist, 1), m1, abs_tol=1e-15)


def test_weight_matrix_columns_are_basis_evolutions():
    params = CoinParameters(5.1, 1.7)
    series = weight_matrices(params, 10)
    up = evolve(params, make_initial_state(1, 0), 10)
    lo = evolve(params, make_initial_state(0, 1), 10)
    for x in range(-10, 11):
        assert np.allclose(series.xi(10, x)[:, 0], up.psi(x), atol=1e-13)
        assert np.allclose(series.xi(10, x)[:, 1], lo.psi(x), atol=1e-13)
