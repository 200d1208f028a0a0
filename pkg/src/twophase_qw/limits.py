"""Closed-form weak-limit measure and time-averaged localization measure.

The rescaled position X_t/t converges to a mixture of a point mass C at the
origin and an absolutely continuous part w(x) f_K(x; 1/sqrt(2)) dx supported
on (-1/sqrt(2), 1/sqrt(2)).  This module evaluates both pieces exactly; the
only numerics is the quadrature behind :func:`ac_mass`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateError, DomainError
from .model import CoinParameters, InitialState, _mod_2pi

SUPPORT_EDGE = 1.0 / math.sqrt(2.0)
SQRT2 = math.sqrt(2.0)

# cos^2(2 sigma) below this is treated as an exact zero and the removable
# x^2 factor of the weight is cancelled analytically.
_S0_ZERO = 1e-24


@dataclass(frozen=True)
class WeightCoefficients:
    """Coefficient bundle of the rational weight w(x) for one sign of x.

    The denominator coefficients (s0, s1, s2) are side-independent; the
    numerator coefficients (t0..t3) carry the sign of x through gamma and
    the sgn(x) factors.
    """

    s0: float
    s1: float
    s2: float
    t0: float
    t1: float
    t2: float
    t3: float
    gamma_plus: float
    gamma_minus: float
    side: int


@dataclass(frozen=True)
class LimitMeasure:
    """Localization mass C plus the weight coefficients of the AC density."""

    C: float
    coeffs_pos: WeightCoefficients
    coeffs_neg: WeightCoefficients
    a_param: float = SUPPORT_EDGE


def konno_density(x: float, a: float) -> float:
    """Ballistic density sqrt(1-a^2) / (pi (1-x^2) sqrt(a^2-x^2)) on (-a, a).

    Returns 0 outside the open support.

    Raises
    ------
    DomainError
        If a is not in (0, 1).
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"scale parameter a={a} must lie in (0, 1)")
    if abs(x) >= a:
        return 0.0
    return math.sqrt(1.0 - a * a) / (math.pi * (1.0 - x * x) * math.sqrt(a * a - x * x))


def weight_coefficients(
    params: CoinParameters, init: InitialState, side: int
) -> WeightCoefficients:
    """Numerator/denominator coefficients of w(x) for sgn(x) = side."""
    if side not in (+1, -1):
        raise ValueError(f"side must be +1 or -1, got {side}")
    sigma = params.sigma
    cos_sq = math.cos(sigma) ** 2
    sin_sq = math.sin(sigma) ** 2
    cos2 = math.cos(2.0 * sigma)
    sin2 = math.sin(2.0 * sigma)
    a, b = init.a, init.b
    gamma_plus = _mod_2pi(init.phi12_tilde - params.sigma_minus)
    gamma_minus = _mod_2pi(-init.phi12_tilde + params.sigma_plus)
    gamma = gamma_plus if side > 0 else gamma_minus
    cross = SQRT2 * a * b * side
    s2 = 4.0 * cos_sq * cos_sq
    s1 = 4.0 * cos_sq * (1.0 + 2.0 * sin_sq)
    s0 = cos2 * cos2
    t3 = 4.0 * cos_sq * (b * b - a * a)
    t2 = 4.0 * (
        cos_sq * (1.0 + cross * math.cos(gamma)) + cross * math.sin(gamma) * sin2
    )
    t1 = 2.0 * (b * b - a * a)
    t0 = 2.0 * (1.0 + cross * math.cos(gamma) - cross * math.sin(gamma) * sin2)
    return WeightCoefficients(
        s0=s0, s1=s1, s2=s2, t0=t0, t1=t1, t2=t2, t3=t3,
        gamma_plus=gamma_plus, gamma_minus=gamma_minus, side=side,
    )


def weight(x: float, params: CoinParameters, init: InitialState) -> float:
    """Rational weight w(x) of the absolutely continuous part, side = sgn(x).

    At x = 0 the side is taken as +1.  When s0 vanishes (cos 2 sigma = 0)
    the common x^2 factor is cancelled analytically so that w(0) = t0/s1;
    otherwise w(0) = 0.

    Raises
    ------
    DomainError
        If |x| >= 1/sqrt(2).
    """
    if abs(x) >= SUPPORT_EDGE:
        raise DomainError(f"x={x} outside the open support (-1/sqrt2, 1/sqrt2)")
    side = +1 if x >= 0.0 else -1
    c = weight_coefficients(params, init, side)
    x2 = x * x
    num_cubic = ((c.t3 * x + c.t2) * x + c.t1) * x + c.t0
    if c.s0 < _S0_ZERO:
        return num_cubic / (c.s2 * x2 + c.s1)
    return x2 * num_cubic / ((c.s2 * x2 + c.s1) * x2 + c.s0)


def one_defect_weight(x: float, sigma: float, init: InitialState) -> float:
    """Weight of the one-defect walk (sigma_plus = sigma_minus = sigma).

    w(x) = 2x^2/(1+2x^2) * (1 +/- sqrt(2) Re(e^{-i sigma} alpha conj(beta))
    + (b^2 - a^2) x), with + for x >= 0 and - for x < 0.
    """
    if abs(x) >= SUPPORT_EDGE:
        raise DomainError(f"x={x} outside the open support (-1/sqrt2, 1/sqrt2)")
    sgn = 1.0 if x >= 0.0 else -1.0
    cross = (complex(math.cos(sigma), -math.sin(sigma)) * init.alpha * init.beta.conjugate()).real
    x2 = x * x
    return (2.0 * x2 / (1.0 + 2.0 * x2)) * (
        1.0 + sgn * SQRT2 * cross + (init.b**2 - init.a**2) * x
    )


def limit_density(x: float, params: CoinParameters, init: InitialState) -> float:
    """Density w(x) f_K(x; 1/sqrt(2)) of the AC part; 0 outside the support."""
    fk = konno_density(x, SUPPORT_EDGE)
    if fk == 0.0:
        return 0.0
    return weight(x, params, init) * fk


def ac_mass(params: CoinParameters, init: InitialState, tol: float = 1e-10) -> float:
    """Total mass of the absolutely continuous part, by adaptive quadrature.

    The substitution x = (1/sqrt 2) sin u removes the inverse-square-root
    endpoint singularities of f_K before integrating.
    """
    from .verify import integrate_density

    return integrate_density(lambda x: limit_density(x, params, init), tol).value


def nu_pm(x: int, sign: int, params: CoinParameters, init: InitialState) -> float:
    """One branch of the time-averaged limit measure at integer position x."""
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    s = math.sin(params.sigma)
    denom = 3.0 + sign * 2.0 * SQRT2 * s
    if denom == 0.0:
        raise DegenerateError("3 +/- 2 sqrt(2) sin(sigma) vanished")  # impossible for real sigma
    pref = ((1.0 + sign * SQRT2 * s) / denom) ** 2
    pref *= 1.0 + sign * 2.0 * init.a * init.b * math.sin(init.phi12_tilde - params.sigma_tilde)
    if x == 0:
        return pref
    return pref * (2.0 + sign * SQRT2 * s) * (1.0 / denom) ** abs(x)


def time_averaged_measure(x: int, params: CoinParameters, init: InitialState) -> float:
    """Time-averaged localization measure; depends on x only through |x|."""
    s = math.sin(params.sigma)
    total = 0.0
    if -1.0 / SQRT2 <= s <= 1.0:
        total += nu_pm(x, +1, params, init)
    if -1.0 <= s <= 1.0 / SQRT2:
        total += nu_pm(x, -1, params, init)
    return total


def loc_mass(params: CoinParameters, init: InitialState) -> float:
    """Localization mass C, summed in closed form over all integer positions.

    C = mu(0) + 2 sum_{y>=1} mu(y); the tail is a geometric series with
    ratio 1/(3 +/- 2 sqrt(2) sin sigma) <= 1, summed exactly.  Per branch
    the series telescopes to
    {1 +/- 2ab sin(phi12 - sigma_tilde)} (1 +/- sqrt(2) sin sigma) /
    (3 +/- 2 sqrt(2) sin sigma), which stays finite at the band boundary
    where the ratio reaches 1 and the prefactor vanishes.
    """
    s = math.sin(params.sigma)
    total = 0.0
    for sign, active in ((+1, -1.0 / SQRT2 <= s <= 1.0), (-1, -1.0 <= s <= 1.0 / SQRT2)):
        if not active:
            continue
        denom = 3.0 + sign * 2.0 * SQRT2 * s
        if denom == 0.0:
            raise DegenerateError("3 +/- 2 sqrt(2) sin(sigma) vanished")
        brace = 1.0 + sign * 2.0 * init.a * init.b * math.sin(
            init.phi12_tilde - params.sigma_tilde
        )
        total += brace * (1.0 + sign * SQRT2 * s) / denom
    return total


def limit_measure(params: CoinParameters, init: InitialState) -> LimitMeasure:
    """Bundle the localization mass with both weight-coefficient evaluations."""
    return LimitMeasure(
        C=loc_mass(params, init),
        coeffs_pos=weight_coefficients(params, init, +1),
        coeffs_neg=weight_coefficients(params, init, -1),
    )
