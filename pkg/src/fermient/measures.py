"""Correlation measure, reduced density matrix and entropies.

Everything here is driven by the single local-unitary invariant

    eta = 8 |P01 P23 - P02 P13 + P03 P12| = 8 |E.B|,   0 <= eta <= 1.

The one-particle density matrix ``rho = 2 P P^dag`` has the doubly
degenerate eigenvalues ``lambda_pm = (1 +- sqrt(1 - eta^2)) / 4``, hence all
entropies and the Fubini-Study distance to the Klein quadric are elementary
functions of eta.  Entropies use base-2 logarithms.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyFailure, OutOfRange
from .linalg import (
    IDENTITY2,
    MAGIC_U,
    dagger,
    hermitian_eigensystem,
    kron,
    max_abs,
    sigma_dot,
)
from .state import FermionState, ab_vectors, norm_functional, to_fields, to_magic

__all__ = [
    "ETA_CLAMP_TOL",
    "checked_eta",
    "MagicData",
    "Spectrum",
    "pluecker_form",
    "eta",
    "density_matrix",
    "entanglement_gap",
    "state_weights",
    "spectrum",
    "lambda_matrix",
    "spectrum_closed_form",
    "slater_weights",
    "von_neumann",
    "von_neumann_from_weights",
    "renyi_from_weights",
    "geodesic_from_weights",
    "renyi",
    "geodesic_distance",
    "pauli_check",
]

ETA_CLAMP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MagicData:
    p_magic: np.ndarray
    x: np.ndarray
    y: np.ndarray
    lambda_matrix: np.ndarray


@dataclass(frozen=True)
class Spectrum:
    """The two distinct eigenvalues of rho, each with multiplicity two."""

    lambda_plus: float
    lambda_minus: float

    def eigenvalues(self) -> np.ndarray:
        """All four eigenvalues in ascending order."""
        lm, lp = self.lambda_minus, self.lambda_plus
        return np.array([lm, lm, lp, lp])


def checked_eta(value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < -ETA_CLAMP_TOL or value > 1.0 + ETA_CLAMP_TOL:
        raise OutOfRange(f"eta = {value!r} is outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def pluecker_form(p) -> complex:
    """``P01 P23 - P02 P13 + P03 P12`` for an antisymmetric 4x4 matrix."""
    p = np.asarray(p)
    return complex(p[0, 1] * p[2, 3] - p[0, 2] * p[1, 3] + p[0, 3] * p[1, 2])


def eta(s: FermionState) -> float:
    """Correlation measure ``8 |P01 P23 - P02 P13 + P03 P12|``.

    The value is divided by ``2 Tr(P P^dag)`` (one up to validation
    tolerance) so that rounding in the normalization does not leak into it.

    Raises:
        OutOfRange: the value exceeds ``1 + 1e-9``, which only happens for
            corrupted amplitudes.
    """
    return checked_eta(8.0 * abs(pluecker_form(s.matrix)) / norm_functional(s.matrix))


def entanglement_gap(s: FermionState) -> float:
    """``sqrt(1 - eta^2)`` evaluated without cancellation.

    Uses ``(1 - eta^2) N^2 = 16 ((|E|^2 - |B|^2)^2 + 4 |conj(E) x B|^2)`` with
    ``N = 4 (|E|^2 + |B|^2)``, a sum of squares that stays accurate where
    ``1 - eta^2`` itself would be dominated by rounding (eta close to 1).
    """
    f = to_fields(s)
    ne = float(np.vdot(f.E, f.E).real)
    nb = float(np.vdot(f.B, f.B).real)
    c = _cross(np.conj(f.E), f.B)
    total = (ne - nb) ** 2 + 4.0 * float(np.vdot(c, c).real)
    return min(1.0, math.sqrt(total) / (ne + nb))


def state_weights(s: FermionState) -> tuple[float, float]:
    """``(x, 1 - x)`` for a state, using :func:`entanglement_gap`."""
    e = eta(s)
    r = entanglement_gap(s)
    return 0.5 * (1.0 + r), e * e / (2.0 * (1.0 + r))


def spectrum(s: FermionState) -> Spectrum:
    """Closed-form eigenvalues of rho computed from the state itself."""
    x, y = state_weights(s)
    return Spectrum(lambda_plus=0.5 * x, lambda_minus=0.5 * y)


def density_matrix(s: FermionState) -> np.ndarray:
    p = s.matrix
    rho = 2.0 * p @ dagger(p)
    return 0.5 * (rho + dagger(rho))


def _cross(u, v) -> np.ndarray:
    return np.array(
        [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    )


def lambda_matrix(s: FermionState) -> MagicData:
    """Magic-frame data with ``U rho U^dag = (1 + Lambda) / 4``.

    ``Lambda = 2 (I x x.conj(sigma) + y.sigma x I + b.sigma x conj(a.sigma)
    + conj(b).sigma x a.conj(sigma))`` with the real vectors
    ``x = -i a x conj(a)`` and ``y = i b x conj(b)``.

    Raises:
        ConsistencyFailure: the identity above, or reality of x and y, fails
            by more than 1e-10 (resp. 1e-12).
    """
    ab = ab_vectors(s)
    a, b = ab.a, ab.b
    x_c = -1j * _cross(a, np.conj(a))
    y_c = 1j * _cross(b, np.conj(b))
    if max(max_abs(x_c.imag), max_abs(y_c.imag)) > 1e-12:
        raise ConsistencyFailure("x or y has an imaginary part")
    x, y = x_c.real, y_c.real
    lam = 2.0 * (
        kron(IDENTITY2, sigma_dot(x, conjugate_sigma=True))
        + kron(sigma_dot(y), IDENTITY2)
        + kron(sigma_dot(b), np.conj(sigma_dot(a)))
        + kron(sigma_dot(np.conj(b)), sigma_dot(a, conjugate_sigma=True))
    )
    if max_abs(lam - dagger(lam)) > 1e-12:
        raise ConsistencyFailure("Lambda is not Hermitian")
    lam = 0.5 * (lam + dagger(lam))
    rho_magic = MAGIC_U @ density_matrix(s) @ dagger(MAGIC_U)
    defect = max_abs(rho_magic - 0.25 * (np.eye(4) + lam))
    if defect > 1e-10:
        raise ConsistencyFailure(f"U rho U^dag != (1 + Lambda)/4 (defect {defect:.3e})")
    return MagicData(to_magic(s), x, y, lam)


def slater_weights(eta_value: float) -> tuple[float, float]:
    """Return ``(x, 1 - x)`` with ``x = (1 + sqrt(1 - eta^2)) / 2``.

    ``1 - x`` is evaluated as ``eta^2 / (2 (1 + sqrt(1 - eta^2)))`` so it keeps
    full relative precision for small eta.
    """
    e = checked_eta(eta_value)
    r = math.sqrt(max(0.0, 1.0 - e * e))
    return 0.5 * (1.0 + r), e * e / (2.0 * (1.0 + r))


def spectrum_closed_form(eta_value: float) -> Spectrum:
    x, y = slater_weights(eta_value)
    return Spectrum(lambda_plus=0.5 * x, lambda_minus=0.5 * y)


def _xlog2x(p: float) -> float:
    return 0.0 if p == 0.0 else p * math.log2(p)


def von_neumann_from_weights(x: float, y: float) -> float:
    return 1.0 - _xlog2x(x) - _xlog2x(y)


def renyi_from_weights(x: float, y: float, alpha: float) -> float:
    if not alpha > 1.0:
        raise OutOfRange(f"Renyi order must exceed 1, got {alpha!r}")
    return 1.0 + math.log2(x**alpha + y**alpha) / (1.0 - alpha)


def geodesic_from_weights(x: float, y: float) -> float:
    return 2.0 * math.atan2(math.sqrt(y), math.sqrt(x))


def von_neumann(eta_value: float) -> float:
    """``S_1 = 1 - x log2 x - (1-x) log2(1-x)``, ranging over [1, 2]."""
    return von_neumann_from_weights(*slater_weights(eta_value))


def _check_order(alpha) -> int:
    if isinstance(alpha, bool) or not isinstance(alpha, numbers.Integral) or alpha < 2:
        raise OutOfRange(f"Renyi order must be an integer >= 2, got {alpha!r}")
    return int(alpha)


def renyi(eta_value: float, alpha: int) -> float:
    """Renyi entropy of integer order ``alpha >= 2``.

    Real orders ``alpha > 1`` are available through :func:`renyi_from_weights`.
    """
    return renyi_from_weights(*slater_weights(eta_value), _check_order(alpha))


def geodesic_distance(eta_value: float) -> float:
    """Fubini-Study distance s to the Klein quadric, ``cos^2(s/2) = x``.

    Evaluated as ``2 atan2(sqrt(1-x), sqrt(x))``, which returns exactly 0
    and pi/2 at the endpoints.
    """
    return geodesic_from_weights(*slater_weights(eta_value))


def pauli_check(rho, n_particles: int = 2) -> bool:
    """True iff every eigenvalue of rho lies in ``[0, 1/N]`` up to 1e-10."""
    values = hermitian_eigensystem(rho).values
    return bool(np.all(values >= -1e-10) and np.all(values <= 1.0 / n_particles + 1e-10))
