"""Quadrature engine and the cross-validation suites.

Every check here pits two independent routes against each other: closed-form
mass against quadrature, generating functions against partial series, residue
assembly against the theorem weight, and finite-time simulation against the
limit density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _sciint

from . import evolution, genfun, limits
from .errors import QuadratureError
from .model import CoinParameters, InitialState, make_initial_state

# Finite-t bins this close to the origin are contaminated by the Dirac mass C
# and are excluded from comparisons against the AC density.
ORIGIN_EXCLUSION = 0.05


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class ConvergenceEntry:
    t: int
    binned_mad: float
    cdf_sup: float
    mean_empirical: float
    mean_analytic: float
    second_moment_empirical: float
    second_moment_analytic: float


@dataclass(frozen=True)
class ConvergenceReport:
    entries: list[ConvergenceEntry]


def integrate_density(f, tol: float = 1e-10, budget: int = 10**6) -> QuadratureResult:
    """Integrate a density over (-1/sqrt 2, 1/sqrt 2).

    The substitution x = (1/sqrt 2) sin u maps the interval to
    (-pi/2, pi/2) and cancels the inverse-square-root endpoint behaviour of
    the Konno factor, leaving a bounded integrand for the adaptive rule.

    Raises
    ------
    QuadratureError
        If the error estimate exceeds tol within the evaluation budget.
    """
    if tol < 1e-12:
        raise ValueError("tol below 1e-12 is not resolvable in double precision")
    a = limits.SUPPORT_EDGE

    def integrand(u: float) -> float:
        return f(a * math.sin(u)) * a * math.cos(u)

    # 21 evaluations per interval for the default Gauss-Kronrod rule.
    limit = max(budget // 21, 1)
    value, abs_err, info = _sciint.quad(
        integrand, -math.pi / 2.0, math.pi / 2.0,
        epsabs=tol, epsrel=1e-13, limit=min(limit, 500), full_output=True,
    )[:3]
    if abs_err > tol:
        raise QuadratureError(
            f"quadrature error estimate {abs_err} exceeds tolerance {tol}"
        )
    return QuadratureResult(value=value, abs_error_estimate=abs_err,
                            evaluations=int(info["neval"]))


def mass_check(params: CoinParameters, init: InitialState) -> float:
    """Localization mass plus AC mass; contracted to equal 1 within 1e-6."""
    return limits.loc_mass(params, init) + limits.ac_mass(params, init)


def gf_series_check(
    params: CoinParameters,
    z: complex,
    horizon: int = 80,
    x_range: tuple[int, int] = (-4, 4),
) -> float:
    """Max deviation between closed-form Xi~_x(z) and the partial series.

    The contract bound is 2 |z|^{T+1} / (1 - |z|) from the entrywise bound
    ||Xi_t(x)|| <= 1, plus rounding.
    """
    series = evolution.weight_matrices(params, horizon)
    worst = 0.0
    for x in range(x_range[0], x_range[1] + 1):
        closed = genfun.xi0(z, params) if x == 0 else genfun.xi_x(z, x, params)
        partial = series.series_sum(x, z)
        worst = max(worst, float(np.max(np.abs(closed - partial))))
    return worst


def series_tail_bound(z: complex, horizon: int) -> float:
    return 2.0 * abs(z) ** (horizon + 1) / (1.0 - abs(z))


def residue_theorem_check(
    params: CoinParameters, init: InitialState, grid: np.ndarray
) -> float:
    """Max deviation between the residue assembly and the closed-form density."""
    worst = 0.0
    for x in np.asarray(grid, dtype=float):
        d = abs(
            genfun.assemble_density(x, params, init)
            - limits.limit_density(x, params, init)
        )
        worst = max(worst, float(d))
    return worst


def default_residue_grid() -> np.ndarray:
    """The symmetric grid {+/-0.01, ..., +/-0.69}."""
    pos = np.arange(1, 70) * 0.01
    return np.concatenate([-pos[::-1], pos])


def _analytic_cdf(params: CoinParameters, init: InitialState, n: int = 20001):
    """Mixed limit CDF C 1{x>=0} + int_-a^x g, interpolated on a dense grid."""
    a = limits.SUPPORT_EDGE
    us = np.linspace(-math.pi / 2.0, math.pi / 2.0, n)
    xs = a * np.sin(us)
    gs = np.array([limits.limit_density(x, params, init) for x in xs])
    integrand = gs * a * np.cos(us)
    ac = _sciint.cumulative_trapezoid(integrand, us, initial=0.0)
    c = limits.loc_mass(params, init)

    def cdf(x: float) -> float:
        base = float(np.interp(x, xs, ac, left=0.0, right=ac[-1]))
        return base + (c if x >= 0.0 else 0.0)

    return cdf


def convergence_report(
    params: CoinParameters,
    init: InitialState,
    ts: list[int],
    bin_width: float = 0.02,
) -> ConvergenceReport:
    """Finite-time deviations from the limit measure, for each requested t.

    Bins within ORIGIN_EXCLUSION of the origin are excluded from the mean
    absolute deviation and from the CDF sup-distance; the Dirac mass sits
    there at finite t.
    """
    if list(ts) != sorted(ts) or any(t < 100 for t in ts):
        raise ValueError("ts must be ascending and each at least 100")
    cdf = _analytic_cdf(params, init)
    mean_an = integrate_density(
        lambda x: x * limits.limit_density(x, params, init)
    ).value
    second_an = integrate_density(
        lambda x: x * x * limits.limit_density(x, params, init)
    ).value
    entries = []
    for t in ts:
        state = evolution.evolve(params, init, t)
        dist = evolution.distribution(state)
        centers, density = evolution.binned_density(dist, bin_width)
        keep = np.abs(centers) >= ORIGIN_EXCLUSION
        analytic = np.array(
            [limits.limit_density(c, params, init) for c in centers[keep]]
        )
        mad = float(np.mean(np.abs(density[keep] - analytic)))
        ratios, cum = evolution.empirical_cdf(dist)
        sel = np.abs(ratios) >= ORIGIN_EXCLUSION
        sup = float(
            np.max(np.abs(cum[sel] - np.array([cdf(r) for r in ratios[sel]])))
        )
        entries.append(
            ConvergenceEntry(
                t=t,
                binned_mad=mad,
                cdf_sup=sup,
                mean_empirical=evolution.empirical_moment(dist, 1),
                mean_analytic=mean_an,
                second_moment_empirical=evolution.empirical_moment(dist, 2),
                second_moment_analytic=second_an,
            )
        )
    return ConvergenceReport(entries=entries)


def seeded_tuples(n: int = 200, seed: int = 20240817) -> list[tuple[CoinParameters, InitialState]]:
    """Deterministic random parameter tuples for the property sweeps.

    sigma_+/- uniform in [0, 2 pi), a^2 uniform in [0, 1], phases uniform.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        sp, sm = rng.uniform(0.0, 2.0 * math.pi, size=2)
        a = math.sqrt(rng.uniform(0.0, 1.0))
        b = math.sqrt(max(1.0 - a * a, 0.0))
        phi1, phi2 = rng.uniform(0.0, 2.0 * math.pi, size=2)
        alpha = a * complex(math.cos(phi1), math.sin(phi1))
        beta = b * complex(math.cos(phi2), math.sin(phi2))
        out.append((CoinParameters(sp, sm), make_initial_state(alpha, beta)))
    return out
