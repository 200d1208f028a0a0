"""Generating functions, branch selection, singular points, and residues.

This is the proof machinery realized numerically: the transfer quantities
f0^(+/-)(z) and lambda^(+/-)(z) solve quadratics in z; the admissible root
is the one whose lambda has modulus below 1 inside the unit disk.  Their
unit-circle singular points carry residues whose product assembles the
ballistic density independently of the closed-form weight.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, DegenerateError, DomainError
from .limits import SUPPORT_EDGE, konno_density
from .model import SQRT2, CoinParameters, InitialState, _mod_2pi

# Support points this close to +/- 1/sqrt(2) are rejected: f_K diverges and
# the sqrt(1 - 2x^2) factors of the residues lose all significance there.
EDGE_MARGIN = 1e-6


@dataclass(frozen=True)
class GFValue:
    """Transfer quantities at a complex point z under the admissible branch."""

    z: complex
    f_plus: complex
    f_minus: complex
    lambda_plus: complex
    lambda_minus: complex
    lambda0: complex  # 1 + f_plus * f_minus


@dataclass(frozen=True)
class SingularPoint:
    """Unit-circle singular point theta(k) of one branch, with its slope."""

    k: float
    branch: int  # +1 or -1
    theta: float
    x_slope: float  # -d(theta)/dk
    s: int  # sgn(sin k * cos k)


def _select_root(z: complex, phase: complex, lam_of: "callable") -> tuple[complex, complex]:
    """Pick the quadratic root whose lambda lies strictly inside the unit disk."""
    root = cmath.sqrt(1.0 + z**4)
    candidates = [phase * ((1.0 + z * z) + root) / SQRT2,
                  phase * ((1.0 + z * z) - root) / SQRT2]
    admissible = []
    for f in candidates:
        lam = lam_of(f)
        if lam == lam and abs(lam) < 1.0:  # NaN-safe
            admissible.append((f, lam))
    if len(admissible) != 1:
        raise BranchError(
            f"{len(admissible)} admissible roots at z={z!r}; expected exactly one"
        )
    return admissible[0]


def gf_at(z: complex, params: CoinParameters) -> GFValue:
    """Evaluate (f0^+, f0^-, lambda^+, lambda^-, Lambda0) at |z| < 1.

    Raises
    ------
    DomainError
        If |z| >= 1 - 1e-9.
    BranchError
        If root selection by |lambda| < 1 is not unique.
    DegenerateError
        If Lambda0 = 1 + f+ f- vanishes (localization resonance).
    """
    z = complex(z)
    if abs(z) >= 1.0 - 1e-9:
        raise DomainError(f"|z|={abs(z)} must be below 1 - 1e-9")
    ep = cmath.exp(1j * params.sigma_plus)
    em = cmath.exp(1j * params.sigma_minus)

    def lam_plus(f: complex) -> complex:
        den = f / ep - SQRT2
        return z / den if den != 0.0 else complex("nan")

    def lam_minus(f: complex) -> complex:
        den = SQRT2 - em * f
        return z / den if den != 0.0 else complex("nan")

    f_plus, l_plus = _select_root(z, ep, lam_plus)
    f_minus, l_minus = _select_root(z, em.conjugate(), lam_minus)
    lambda0 = 1.0 + f_plus * f_minus
    if abs(lambda0) < 1e-12:
        raise DegenerateError(f"Lambda0 vanished at z={z!r} (pole of Xi0)")
    return GFValue(z=z, f_plus=f_plus, f_minus=f_minus,
                   lambda_plus=l_plus, lambda_minus=l_minus, lambda0=lambda0)


def xi0(z: complex, params: CoinParameters) -> np.ndarray:
    """Closed-form generating function of the origin weights, sum_t Xi_t(0) z^t."""
    gv = gf_at(z, params)
    return np.array(
        [[1.0, -gv.f_plus], [gv.f_minus, 1.0]], dtype=np.complex128
    ) / gv.lambda0


def xi_x(z: complex, x: int, params: CoinParameters) -> np.ndarray:
    """Closed-form generating function sum_t Xi_t(x) z^t for x != 0."""
    if x == 0:
        raise ValueError("use xi0 for x = 0")
    gv = gf_at(z, params)
    x0 = np.array(
        [[1.0, -gv.f_plus], [gv.f_minus, 1.0]], dtype=np.complex128
    ) / gv.lambda0
    if x >= 1:
        col = np.array([gv.lambda_plus * gv.f_plus, z], dtype=np.complex128)
        row = np.array([0.0, -1.0], dtype=np.complex128)
        return gv.lambda_plus ** (x - 1) * np.outer(col, row) @ x0
    col = np.array([z, gv.lambda_minus * gv.f_minus], dtype=np.complex128)
    row = np.array([1.0, 0.0], dtype=np.complex128)
    return gv.lambda_minus ** (abs(x) - 1) * np.outer(col, row) @ x0


def unit_circle_f0(theta: float, sign: int, params: CoinParameters) -> complex:
    """Boundary value of f0^(sign) at z = e^{i theta} on the ballistic band.

    f0^(+/-)(e^{i theta}) = sgn(cos theta) e^{i(theta +/- sigma_pm)}
    (sqrt(2)|cos theta| - sqrt(2 cos^2 theta - 1)), the branch reached as a
    radial limit of the |lambda| < 1 selection from inside the disk.

    Raises
    ------
    DomainError
        If |sin theta| > 1/sqrt(2) (outside the band) or cos theta = 0.
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    c = math.cos(theta)
    s = math.sin(theta)
    if abs(s) > 1.0 / SQRT2:
        raise DomainError(f"|sin theta| = {abs(s)} exceeds 1/sqrt(2)")
    if c == 0.0:
        raise DomainError("cos theta = 0 is outside the admissible band")
    modulus = SQRT2 * abs(c) - math.sqrt(max(2.0 * c * c - 1.0, 0.0))
    arg = theta + params.sigma_plus if sign > 0 else theta - params.sigma_minus
    return math.copysign(1.0, c) * cmath.exp(1j * arg) * modulus


def singular_points(k: float, params: CoinParameters) -> tuple[SingularPoint, SingularPoint]:
    """Both branch singular points theta^(+/-)(k) for a momentum k.

    The closed solutions: x_+ = |cos k| / sqrt(1 + cos^2 k), x_- = -x_+;
    cos theta^(+) = -sgn(cos k)/sqrt(2(1-x^2)),
    sin theta^(+/-) = sgn(sin k) sqrt((1-2x^2)/(2(1-x^2))), with the cosine
    sign mirrored on the - branch.

    Raises
    ------
    DegenerateError
        If sin k cos k = 0 (k a multiple of pi/2).
    """
    ck = math.cos(k)
    sk = math.sin(k)
    if abs(sk * ck) < 1e-15:
        raise DegenerateError(f"k={k} is a degenerate momentum (sin k cos k = 0)")
    sgn_c = 1.0 if ck > 0 else -1.0
    sgn_s = 1.0 if sk > 0 else -1.0
    s = int(sgn_c * sgn_s)
    x_plus = abs(ck) / math.sqrt(1.0 + ck * ck)
    points = []
    for branch, x in ((+1, x_plus), (-1, -x_plus)):
        one_m = 1.0 - x * x
        cos_t = -branch * sgn_c / math.sqrt(2.0 * one_m)
        sin_t = sgn_s * math.sqrt((1.0 - 2.0 * x * x) / (2.0 * one_m))
        theta = math.atan2(sin_t, cos_t)
        points.append(SingularPoint(k=k, branch=branch, theta=theta, x_slope=x, s=s))
    return points[0], points[1]


def _gammas(params: CoinParameters, init: InitialState) -> tuple[float, float]:
    gamma_plus = _mod_2pi(init.phi12_tilde - params.sigma_minus)
    gamma_minus = _mod_2pi(-init.phi12_tilde + params.sigma_plus)
    return gamma_plus, gamma_minus


def residue_components(
    x: float, s: int, params: CoinParameters, init: InitialState
) -> tuple[float, float, float, float]:
    """The four residue factors at rescaled position x for quadrant sign s.

    r1: squared residue of the geometric pole, r2: 1/|Lambda0|^2,
    r3: the initial-state overlap, r4: the squared spinor norm.  The branch
    is + for x > 0 and - for x < 0.

    Raises
    ------
    DomainError
        If x is outside the open support or within 1e-6 of its endpoints.
    """
    if s not in (+1, -1):
        raise ValueError(f"s must be +1 or -1, got {s}")
    if x == 0.0 or abs(x) >= SUPPORT_EDGE - EDGE_MARGIN:
        raise DomainError(f"x={x} outside the open punctured support")
    sigma = params.sigma
    cos2 = math.cos(2.0 * sigma)
    sin2 = math.sin(2.0 * sigma)
    root = math.sqrt(1.0 - 2.0 * x * x)
    a, b = init.a, init.b
    gamma_plus, gamma_minus = _gammas(params, init)
    r1 = x * x
    if x > 0.0:
        r2 = (1.0 + x) ** 2 / (
            2.0 * (1.0 + x * x * (1.0 + cos2) + s * root * sin2)
        )
        r3 = (
            a * a * (1.0 - x) / (1.0 + x)
            + b * b
            + (SQRT2 * a * b / (1.0 + x))
            * (math.cos(gamma_plus) + s * root * math.sin(gamma_plus))
        )
        r4 = 2.0 / (1.0 + x)
    else:
        r2 = (1.0 - x) ** 2 / (
            2.0 * (1.0 + x * x * (1.0 + cos2) - s * root * sin2)
        )
        r3 = (
            a * a
            + b * b * (1.0 + x) / (1.0 - x)
            - (SQRT2 * a * b / (1.0 - x))
            * (math.cos(gamma_minus) - s * root * math.sin(gamma_minus))
        )
        r4 = 2.0 / (1.0 - x)
    return r1, r2, r3, r4


def assemble_density(x: float, params: CoinParameters, init: InitialState) -> float:
    """Ballistic density g(x) assembled from the residue factors.

    Summing r1 r2 r3 r4 over the quadrant sign s = +/-1 (at the branch
    matching sgn(x)) reproduces the closed-form weight; multiplying by
    f_K(x; 1/sqrt 2) absorbs the dk -> dx change of variables, with the
    four k-quadrants pairing off against the 1/(2 pi) measure.
    """
    total = 0.0
    for s in (+1, -1):
        r1, r2, r3, r4 = residue_components(x, s, params, init)
        total += r1 * r2 * r3 * r4
    return total * konno_density(x, SUPPORT_EDGE)
