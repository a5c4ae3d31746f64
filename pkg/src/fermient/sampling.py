"""Seeded generators of random two-fermion states.

Every function takes an explicit ``rng`` (an integer seed or a
:class:`numpy.random.Generator`, see :func:`fermient.linalg.make_rng`).
"""

from __future__ import annotations

import math

import numpy as np

from .decomposition import canonical_matrix
from .linalg import make_rng, random_unitary
from .measures import checked_eta, spectrum_closed_form
from .state import FermionState, from_fields, from_matrix, from_pluecker, FieldPair

__all__ = [
    "random_state",
    "random_state_with_eta",
    "random_rank1_state",
    "random_maximal_state",
]


def _complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_state(rng) -> FermionState:
    """Six i.i.d. complex Gaussian amplitudes, normalized."""
    rng = make_rng(rng)
    return from_pluecker(*_complex_normal(rng, 6), normalize=True)


def random_state_with_eta(eta_value: float, rng) -> FermionState:
    """Canonical form ``R(r1, r2)`` for the requested eta, conjugated by a Haar U(4).

    Raises:
        OutOfRange: ``eta_value`` is outside [0, 1].
    """
    e = checked_eta(eta_value)
    rng = make_rng(rng)
    sp = spectrum_closed_form(e)
    r = canonical_matrix(math.sqrt(sp.lambda_plus / 2.0), math.sqrt(sp.lambda_minus / 2.0))
    u = random_unitary(4, rng)
    return from_matrix(u @ r @ u.T)


def random_rank1_state(rng) -> FermionState:
    """Normalized separable bivector ``u v^T - v u^T``."""
    rng = make_rng(rng)
    u = _complex_normal(rng, 4)
    v = _complex_normal(rng, 4)
    return from_matrix(np.outer(u, v) - np.outer(v, u), normalize=True)


def random_maximal_state(rng, theta: float | None = None) -> tuple[FermionState, float]:
    """State with ``E = exp(i theta) conj(B)`` (hence eta = 1) and its theta.

    ``theta`` is drawn uniformly from [0, 2 pi) unless given.
    """
    rng = make_rng(rng)
    if theta is None:
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
    b = _complex_normal(rng, 3)
    e = np.exp(1j * theta) * np.conj(b)
    return from_fields(FieldPair(e, b), normalize=True), theta
