"""Exact amplitude evolution of the walk and empirical statistics.

Amplitudes live on a dense array over [-t, t]; sites of the wrong parity
stay exact zeros because amplitude only ever flows from occupied sites.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import BinError, ResourceError
from .model import SQRT2, CoinParameters, InitialState

DEFAULT_MAX_T = 10**6


def _max_time() -> int:
    return int(os.environ.get("QW_MAX_T", DEFAULT_MAX_T))


@dataclass(frozen=True)
class WalkState:
    """Walk amplitudes at a fixed time.

    ``amplitudes`` has shape (2t+1, 2); row i holds the spinor at position
    x = i - t, columns are the (upper, lower) components.
    """

    t: int
    amplitudes: np.ndarray

    def psi(self, x: int) -> np.ndarray:
        """Spinor at position x (zero outside [-t, t])."""
        if abs(x) > self.t:
            return np.zeros(2, dtype=np.complex128)
        return self.amplitudes[x + self.t]

    def positions(self) -> np.ndarray:
        return np.arange(-self.t, self.t + 1)

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True)
class Distribution:
    """Site probabilities P_t(x) on the parity-allowed support."""

    t: int
    positions: np.ndarray
    probs: np.ndarray

    def prob(self, x: int) -> float:
        idx = np.searchsorted(self.positions, x)
        if idx < len(self.positions) and self.positions[idx] == x:
            return float(self.probs[idx])
        return 0.0


@dataclass(frozen=True)
class WeightMatrixSeries:
    """Path-weight matrices Xi_t(x) for all t up to a horizon T.

    ``matrices[t]`` has shape (2t+1, 2, 2); column j of Xi_t(x) is the
    amplitude at x after evolving the basis initial state e_j for t steps.
    """

    horizon: int
    matrices: list[np.ndarray]

    def xi(self, t: int, x: int) -> np.ndarray:
        if abs(x) > t:
            return np.zeros((2, 2), dtype=np.complex128)
        return self.matrices[t][x + t]

    def series_sum(self, x: int, z: complex) -> np.ndarray:
        """Partial sum of the generating series sum_t Xi_t(x) z^t."""
        acc = np.zeros((2, 2), dtype=np.complex128)
        zt = 1.0 + 0.0j
        for t in range(self.horizon + 1):
            if abs(x) <= t:
                acc += self.matrices[t][x + t] * zt
            zt *= z
        return acc


def _coin_rows(params: CoinParameters, size: int, center: int) -> tuple[np.ndarray, ...]:
    """Per-position propagator rows on a grid of ``size`` sites, x = i - center.

    Returns (p11, p12, q21, q22): the nonzero entries of P_x and Q_x.
    """
    ep = np.exp(1j * params.sigma_plus)
    em = np.exp(1j * params.sigma_minus)
    xs = np.arange(size) - center
    p11 = np.full(size, 1.0 / SQRT2, dtype=np.complex128)
    p12 = np.where(xs >= 0, ep, em) / SQRT2
    q21 = np.where(xs >= 0, ep, em).conj() / SQRT2
    q22 = np.full(size, -1.0 / SQRT2, dtype=np.complex128)
    at0 = xs == 0
    p11[at0] = 1.0
    p12[at0] = 0.0
    q21[at0] = 0.0
    q22[at0] = -1.0
    return p11, p12, q21, q22


def step(state: WalkState, params: CoinParameters) -> WalkState:
    """One application of the recurrence Psi'(x) = P_{x+1} Psi(x+1) + Q_{x-1} Psi(x-1)."""
    t = state.t
    size = 2 * t + 3  # padded by one site on each side
    up = np.zeros(size, dtype=np.complex128)
    lo = np.zeros(size, dtype=np.complex128)
    up[1:-1] = state.amplitudes[:, 0]
    lo[1:-1] = state.amplitudes[:, 1]
    p11, p12, q21, q22 = _coin_rows(params, size, t + 1)
    new_up = np.zeros(size, dtype=np.complex128)
    new_lo = np.zeros(size, dtype=np.complex128)
    new_up[:-1] = p11[1:] * up[1:] + p12[1:] * lo[1:]
    new_lo[1:] = q21[:-1] * up[:-1] + q22[:-1] * lo[:-1]
    amplitudes = np.stack([new_up, new_lo], axis=1)
    return WalkState(t=t + 1, amplitudes=amplitudes)


# Two-term representation of 1/sqrt(2): the double rounding of fl(1/sqrt2)^2
# is biased by ~1e-16 and would drift the norm by ~1e-12 over 10^4 steps;
# x*H + x*L recovers the correctly rounded product, leaving unbiased noise.
_INV_SQRT2_HI = float(np.float64(1.0) / np.float64(SQRT2))
_INV_SQRT2_LO = float(
    np.longdouble(1.0) / np.sqrt(np.longdouble(2.0)) - np.longdouble(_INV_SQRT2_HI)
)


def _unit_phase(angle: float) -> complex:
    """exp(i*angle) normalized to unit modulus at extended precision."""
    a = np.longdouble(angle)
    c, s = np.cos(a), np.sin(a)
    n = np.sqrt(c * c + s * s)
    return complex(float(c / n), float(s / n))


def _evolve_components(
    params: CoinParameters, t: int, starts: np.ndarray
) -> np.ndarray:
    """Evolve several initial spinors at once for t steps.

    ``starts`` has shape (2, n).  Returns an array of shape (2t+1, 2, n)
    with the amplitudes at time t.  The inner loop touches only the active
    window [-s-1, s+1] at step s.
    """
    n = starts.shape[1]
    size = 2 * t + 3  # one zero pad site on each side
    center = t + 1
    up = np.zeros((size, n), dtype=np.complex128)
    lo = np.zeros((size, n), dtype=np.complex128)
    up[center] = starts[0]
    lo[center] = starts[1]
    xs = np.arange(size) - center
    ep = _unit_phase(params.sigma_plus)
    em = _unit_phase(params.sigma_minus)
    phase = np.where(xs >= 0, ep, em)[:, None]
    phase_conj = phase.conj()
    at0 = (xs == 0)[:, None]
    for s in range(t):
        a0 = center - s - 1
        a1 = center + s + 1
        src_p = slice(a0 + 1, a1 + 2)
        src_q = slice(a0 - 1, a1)
        # left mover: (up + e^{i sigma} lo)/sqrt2 off-origin, plain up at 0
        mix_up = up[src_p] + phase[src_p] * lo[src_p]
        new_up = np.where(
            at0[src_p], up[src_p], mix_up * _INV_SQRT2_HI + mix_up * _INV_SQRT2_LO
        )
        # right mover: (e^{-i sigma} up - lo)/sqrt2 off-origin, -lo at 0
        mix_lo = phase_conj[src_q] * up[src_q] - lo[src_q]
        new_lo = np.where(
            at0[src_q], -lo[src_q], mix_lo * _INV_SQRT2_HI + mix_lo * _INV_SQRT2_LO
        )
        up[a0 : a1 + 1] = new_up
        lo[a0 : a1 + 1] = new_lo
    return np.stack([up[1:-1], lo[1:-1]], axis=1)


def evolve(params: CoinParameters, init: InitialState, t: int) -> WalkState:
    """Evolve Psi_0(0) = (alpha, beta) for t steps.

    Raises
    ------
    ResourceError
        If t exceeds the configured maximum (QW_MAX_T, default 10^6).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t > _max_time():
        raise ResourceError(f"t={t} exceeds the configured maximum {_max_time()}")
    starts = np.array([[init.alpha], [init.beta]], dtype=np.complex128)
    amps = _evolve_components(params, t, starts)
    return WalkState(t=t, amplitudes=amps[:, :, 0])


def distribution(state: WalkState) -> Distribution:
    """Per-site probabilities on the parity-allowed support."""
    t = state.t
    xs = np.arange(-t, t + 1, 2)
    probs = np.sum(np.abs(state.amplitudes[xs + t]) ** 2, axis=1)
    return Distribution(t=t, positions=xs, probs=probs)


def binned_density(
    dist: Distribution, bin_width: float
) -> tuple[np.ndarray, np.ndarray]:
    """Empirical density of x/t on uniform bins covering [-1, 1].

    Bins are left-closed, [c - w/2, c + w/2), with centers c = j * w on a
    grid including 0.  The returned densities integrate to the total mass.

    Raises
    ------
    BinError
        If bin_width < 2/t (less than one occupied parity site per bin).
    """
    if not 0.0 < bin_width < 1.0:
        raise BinError(f"bin_width must lie in (0, 1), got {bin_width}")
    if dist.t <= 0 or bin_width < 2.0 / dist.t:
        raise BinError(f"bin_width {bin_width} below 2/t = {2.0 / dist.t if dist.t else math.inf}")
    jmax = int(math.floor(1.0 / bin_width + 0.5))
    centers = np.arange(-jmax, jmax + 1) * bin_width
    ratios = dist.positions / dist.t
    j = np.floor(ratios / bin_width + 0.5).astype(int)
    mass = np.zeros(2 * jmax + 1)
    np.add.at(mass, j + jmax, dist.probs)
    return centers, mass / bin_width


def empirical_cdf(dist: Distribution) -> tuple[np.ndarray, np.ndarray]:
    """Right-continuous cumulative sums of P_t(x) against x/t."""
    ratios = dist.positions / dist.t if dist.t > 0 else dist.positions.astype(float)
    return ratios, np.cumsum(dist.probs)


def empirical_moment(dist: Distribution, m: int) -> float:
    """m-th empirical moment of the rescaled position x/t."""
    ratios = dist.positions / dist.t if dist.t > 0 else dist.positions.astype(float)
    return float(np.sum(ratios**m * dist.probs))


def weight_matrices(params: CoinParameters, horizon: int) -> WeightMatrixSeries:
    """Assemble Xi_t(x) for all t <= horizon by evolving the two basis states."""
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if horizon > _max_time():
        raise ResourceError(f"horizon={horizon} exceeds the configured maximum")
    matrices = [np.eye(2, dtype=np.complex128)[None, :, :]]
    # Re-running the evolution per t keeps the step kernel single-purpose; the
    # O(T^3) total cost is irrelevant at the horizons used for series checks.
    state_up = WalkState(0, np.array([[1.0, 0.0]], dtype=np.complex128))
    state_lo = WalkState(0, np.array([[0.0, 1.0]], dtype=np.complex128))
    for t in range(1, horizon + 1):
        state_up = step(state_up, params)
        state_lo = step(state_lo, params)
        xi_t = np.stack([state_up.amplitudes, state_lo.amplitudes], axis=2)
        matrices.append(xi_t)
    return WeightMatrixSeries(horizon=horizon, matrices=matrices)
