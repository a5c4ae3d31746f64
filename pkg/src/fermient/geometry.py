"""Duality, spin flip and the Klein quadric of separable states.

Index conventions are fixed once here: ``eps_{0123} = +1`` and indices are
raised with ``g = diag(1, -1, -1, -1)``.  With these, the dual swaps the
field vectors as ``*E = -B``, ``*B = E``, so ``a = E + iB`` is self-dual
(``*a = i a``) and ``b = E - iB`` anti-self-dual (``*b = -i b``).

Separable bivectors ``u v^T - v u^T`` are exactly the zeros of the Pluecker
form ``P01 P23 - P02 P13 + P03 P12``.  In the coordinates
``z = (a1, a2, a3, i b1, i b2, i b3)`` the same locus is the Klein quadric
``sum z_j^2 = 0``; expanding the definitions gives
``sum z_j^2 = 4i E.B = -4i (P01 P23 - P02 P13 + P03 P12)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (
    EPSILON,
    INFELD,
    LEVI_CIVITA4,
    MAGIC_U,
    METRIC,
    PAULI,
    dagger,
    kron,
    sigma_dot,
)
from .measures import checked_eta, pluecker_form
from .state import FermionState, ab_vectors, to_fields, to_magic

__all__ = [
    "QUADRIC_PLUECKER_FACTOR",
    "QUADRIC_TOL",
    "QuadricCoords",
    "SpinorForm",
    "MaximalPhase",
    "raise_indices",
    "dual",
    "dual_magic",
    "eta_invariant",
    "spin_flip",
    "spin_flip_residual",
    "maximal_phase",
    "pluecker_residual",
    "quadric_coords",
    "on_quadric",
    "selfdual_split",
    "vector_to_spinor",
    "spinor_metric",
]

# sum z_j^2 == QUADRIC_PLUECKER_FACTOR * pluecker_residual(s)
QUADRIC_PLUECKER_FACTOR = -4j
QUADRIC_TOL = 1e-10

_SIGMA2_SIGMA2 = kron(PAULI[1], PAULI[1])


def _matrix(p) -> np.ndarray:
    if isinstance(p, FermionState):
        return p.matrix
    return np.asarray(p, dtype=complex)


def raise_indices(p) -> np.ndarray:
    """``g P g``: P with both indices raised."""
    return METRIC @ _matrix(p) @ METRIC


def dual(p) -> np.ndarray:
    """``*P_{mu nu} = (1/2) eps_{mu nu kappa rho} P^{kappa rho}``.

    Accepts a :class:`FermionState` or any 4x4 array; the map is linear and
    satisfies ``**P = -P``.
    """
    return 0.5 * np.einsum("mnkr,kr->mn", LEVI_CIVITA4, raise_indices(p))


def dual_magic(p) -> np.ndarray:
    """The dual expressed in the magic frame, ``U (*P) U^T``."""
    return MAGIC_U @ dual(p) @ MAGIC_U.T


def eta_invariant(s: FermionState) -> float:
    """eta from the trace contraction ``2 |Tr(*P g P g)|``."""
    p = _matrix(s)
    return checked_eta(2.0 * abs(np.trace(dual(p) @ raise_indices(p))))


def spin_flip(p) -> np.ndarray:
    """Wootters spin flip ``(sigma2 x sigma2) conj(P) (sigma2 x sigma2)``."""
    return _SIGMA2_SIGMA2 @ np.conj(np.asarray(p, dtype=complex)) @ _SIGMA2_SIGMA2


def spin_flip_residual(s: FermionState, theta) -> np.ndarray | float:
    """``||*P' - exp(i theta) ~P'||_F`` in the magic frame.

    Vanishes for some theta exactly when eta = 1.  ``theta`` may be an array,
    in which case one residual per angle is returned.
    """
    d = dual_magic(s)
    f = spin_flip(to_magic(s))
    th = np.asarray(theta, dtype=float)
    diff = d[None] - np.exp(1j * th.reshape(-1))[:, None, None] * f[None]
    res = np.sqrt(np.sum(np.abs(diff) ** 2, axis=(1, 2)))
    return float(res[0]) if th.ndim == 0 else res.reshape(th.shape)


class MaximalPhase(NamedTuple):
    theta: float | None
    """Phase with ``E = exp(i theta) conj(B)``, or None if no such phase exists."""
    indeterminate: bool = False
    """Set when B vanishes or ``E.B`` is below 1e-14, so no phase can be read off."""


def maximal_phase(s: FermionState, tol: float = 1e-8) -> MaximalPhase:
    """Detect maximal entanglement through ``E = exp(i theta) conj(B)``.

    The least-squares phase is ``theta = arg(sum_j E_j B_j)``.  It is returned
    when ``||E - exp(i theta) conj(B)|| < tol``.
    """
    f = to_fields(s)
    if not np.any(f.B):
        return MaximalPhase(None, True)
    overlap = complex(np.sum(f.E * f.B))
    if abs(overlap) < 1e-14:
        return MaximalPhase(None, True)
    theta = math.atan2(overlap.imag, overlap.real) % (2.0 * math.pi)
    residual = float(np.linalg.norm(f.E - np.exp(1j * theta) * np.conj(f.B)))
    return MaximalPhase(theta if residual < tol else None, False)


def pluecker_residual(s: FermionState) -> complex:
    return pluecker_form(_matrix(s))


@dataclass(frozen=True, eq=False)
class QuadricCoords:
    z: np.ndarray

    def quadratic_form(self) -> complex:
        """``sum_j z_j^2`` (no complex conjugation)."""
        return complex(np.sum(self.z * self.z))


def quadric_coords(s: FermionState) -> QuadricCoords:
    ab = ab_vectors(s)
    return QuadricCoords(np.concatenate([ab.a, 1j * ab.b]))


def on_quadric(s: FermionState, tol: float = QUADRIC_TOL) -> bool:
    """Klein-quadric membership, ``|sum z_j^2| < tol``."""
    return abs(quadric_coords(s).quadratic_form()) < tol


@dataclass(frozen=True, eq=False)
class SpinorForm:
    """Symmetric spinors with ``P' = eps x psi + phi x eps`` in the magic frame."""

    psi: np.ndarray
    phi: np.ndarray

    def magic_matrix(self) -> np.ndarray:
        return kron(EPSILON, self.psi) + kron(self.phi, EPSILON)

    def self_dual_part(self) -> np.ndarray:
        """The ``eps x psi`` term pulled back to the original mode basis."""
        return dagger(MAGIC_U) @ kron(EPSILON, self.psi) @ np.conj(MAGIC_U)

    def anti_self_dual_part(self) -> np.ndarray:
        return dagger(MAGIC_U) @ kron(self.phi, EPSILON) @ np.conj(MAGIC_U)


def selfdual_split(s: FermionState) -> SpinorForm:
    """``psi = eps (a.sigma) / 2`` and ``phi = eps (b.conj(sigma)) / 2``."""
    ab = ab_vectors(s)
    psi = 0.5 * EPSILON @ sigma_dot(ab.a)
    phi = 0.5 * EPSILON @ sigma_dot(ab.b, conjugate_sigma=True)
    return SpinorForm(psi, phi)


def vector_to_spinor(a) -> np.ndarray:
    """Convert a 4-vector to ``(a_00', a_01', a_10', a_11')`` via the Infeld symbols."""
    a = np.asarray(a, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for mu in range(4):
        out = out + INFELD[mu] * a[mu]
    return out.reshape(4)


def spinor_metric() -> np.ndarray:
    """``sigma^mu_{AA'} sigma^nu_{BB'} g_{mu nu}`` indexed by ``(2A + A', 2B + B')``."""
    m = np.column_stack([INFELD[mu].reshape(4) for mu in range(4)])
    return m @ METRIC @ m.T
