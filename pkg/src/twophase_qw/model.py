"""Two-phase coin family, left/right propagator split, and initial states.

The walk uses one coin per sign region: ``U_plus`` for x >= 1, ``U_minus``
for x <= -1, and the fixed defect coin diag(1, -1) at the origin.  Off the
origin the coins carry a 1/sqrt(2) prefactor and the phases
``exp(+/- i sigma)`` on the off-diagonal.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ZeroStateError

SQRT2 = math.sqrt(2.0)
TWO_PI = 2.0 * math.pi


def _mod_2pi(angle: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return a


@dataclass(frozen=True)
class CoinParameters:
    """The angle pair (sigma_plus, sigma_minus) defining the two-phase walk.

    Angles are reduced to [0, 2*pi) on construction.  The derived half-sum
    and half-difference are recomputed from the reduced values, never stored
    independently.
    """

    sigma_plus: float
    sigma_minus: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma_plus", _mod_2pi(self.sigma_plus))
        object.__setattr__(self, "sigma_minus", _mod_2pi(self.sigma_minus))

    @property
    def sigma(self) -> float:
        """Half-difference (sigma_plus - sigma_minus) / 2."""
        return 0.5 * (self.sigma_plus - self.sigma_minus)

    @property
    def sigma_tilde(self) -> float:
        """Half-sum (sigma_plus + sigma_minus) / 2."""
        return 0.5 * (self.sigma_plus + self.sigma_minus)


@dataclass(frozen=True)
class InitialState:
    """Qubit amplitudes (alpha, beta) with their polar decomposition.

    Construct through :func:`make_initial_state`, which renormalizes and
    fills in the polar fields consistently.
    """

    alpha: complex
    beta: complex
    a: float
    b: float
    phi1: float
    phi2: float
    phi12_tilde: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi12_tilde", self.phi1 - self.phi2)


def make_initial_state(alpha: complex, beta: complex) -> InitialState:
    """Build a validated initial coin state from (possibly unnormalized) amplitudes.

    The squared norm must be within 1e-9 of 1; the stored amplitudes are
    renormalized exactly.

    Raises
    ------
    ZeroStateError
        If |alpha|^2 + |beta|^2 < 1e-12.
    ValueError
        If the squared norm deviates from 1 by more than 1e-9.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if norm_sq < 1e-12:
        raise ZeroStateError("initial coin state has zero norm")
    if abs(norm_sq - 1.0) > 1e-9:
        raise ValueError(f"initial coin state norm^2 = {norm_sq!r} is not within 1e-9 of 1")
    norm = math.sqrt(norm_sq)
    alpha /= norm
    beta /= norm
    a = abs(alpha)
    b = abs(beta)
    phi1 = cmath.phase(alpha) if a > 0.0 else 0.0
    phi2 = cmath.phase(beta) if b > 0.0 else 0.0
    return InitialState(alpha=alpha, beta=beta, a=a, b=b, phi1=phi1, phi2=phi2)


def coin_at(params: CoinParameters, x: int) -> np.ndarray:
    """Return the 2x2 unitary coin acting at position x.

    diag(1, -1) at the origin; the sigma_plus coin for x >= 1 and the
    sigma_minus coin for x <= -1, both with the 1/sqrt(2) prefactor.
    """
    if x == 0:
        return np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
    sigma = params.sigma_plus if x >= 1 else params.sigma_minus
    phase = cmath.exp(1j * sigma)
    return (
        np.array([[1.0, phase], [phase.conjugate(), -1.0]], dtype=np.complex128) / SQRT2
    )


def propagators_at(params: CoinParameters, x: int) -> tuple[np.ndarray, np.ndarray]:
    """Split the coin at x into its left mover P (top row) and right mover Q (bottom row).

    P + Q reproduces :func:`coin_at` entrywise with identical floats.
    """
    u = coin_at(params, x)
    p = u.copy()
    p[1, :] = 0.0
    q = u.copy()
    q[0, :] = 0.0
    return p, q
