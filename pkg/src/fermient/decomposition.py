"""Slater canonical form with real nonnegative coefficients.

For every complex antisymmetric 4x4 matrix P there is a unitary V with

    V P V^T = R = [[0, r1, 0, 0], [-r1, 0, 0, 0], [0, 0, 0, r2], [0, 0, -r2, 0]],

``r1 >= r2 >= 0``.  Writing ``W = V^dag`` the columns of W are eigenvectors of
``P P^dag`` with eigenvalues ``r_i^2``, paired by ``P conj(w_{2i+1}) = r_i w_{2i}``.
The construction below picks one eigenvector per block and generates its
partner through that pairing, so the block entries come out real and
nonnegative without any phase search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyFailure, MaximallyEntangled
from .linalg import MAGIC_U, dagger, frobenius_distance, hermitian_eigensystem
from .measures import density_matrix, entanglement_gap, eta, lambda_matrix, spectrum
from .state import FermionState

__all__ = [
    "RANK_TOL",
    "ProjectorPair",
    "EigenBasis",
    "CanonicalForm",
    "canonical_matrix",
    "projectors",
    "rho_eigenvectors",
    "slater_decompose",
    "slater_rank",
]

RANK_TOL = 1e-8
_PROJECTOR_ETA_MARGIN = 1e-6
_MIN_COLUMN_NORM = 1e-8


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    """Rank-two spectral projectors of Lambda in the magic frame."""

    pi_plus: np.ndarray
    pi_minus: np.ndarray
    r: float


@dataclass(frozen=True, eq=False)
class EigenBasis:
    """Orthonormal eigenvectors of rho in the original mode basis."""

    vectors: np.ndarray
    """Columns ``v_0 .. v_3``; the first two span the ``lambda_+`` eigenspace."""
    eigenvalues: np.ndarray
    path: str
    """``"projector"`` or ``"oracle"`` (the Jacobi eigensolver fallback)."""


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    V: np.ndarray
    r1: float
    r2: float
    R: np.ndarray
    residual: float
    """``||V P V^T - R||_F`` for the input state."""

    def slater_coefficients(self) -> tuple[float, float]:
        """Amplitudes of the two Slater determinants, ``(2 r1, 2 r2)``."""
        return 2.0 * self.r1, 2.0 * self.r2


def canonical_matrix(r1: float, r2: float) -> np.ndarray:
    r = np.zeros((4, 4))
    r[0, 1], r[1, 0] = r1, -r1
    r[2, 3], r[3, 2] = r2, -r2
    return r


def projectors(s: FermionState) -> ProjectorPair:
    """Return ``Pi_pm = (1 +- Lambda / r) / 2`` with ``r = sqrt(1 - eta^2)``.

    Raises:
        MaximallyEntangled: ``eta >= 1 - 1e-6``, where ``Lambda / r`` is singular.
    """
    e = eta(s)
    if e >= 1.0 - _PROJECTOR_ETA_MARGIN:
        raise MaximallyEntangled(f"eta = {e:.12g}: projectors undefined")
    r = entanglement_gap(s)
    lam = lambda_matrix(s).lambda_matrix
    one = np.eye(4)
    return ProjectorPair(0.5 * (one + lam / r), 0.5 * (one - lam / r), r)


def _normalized_residual(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    # Two passes of modified Gram-Schmidt against an orthonormal list.
    w = np.array(v, dtype=complex)
    for _ in range(2):
        for u in basis:
            w = w - (np.conj(u) @ w) * u
    return w


def _projector_basis(s: FermionState) -> np.ndarray | None:
    pair = projectors(s)
    cols = []
    for pi, (i, j) in ((pair.pi_plus, (0, 1)), (pair.pi_minus, (2, 3))):
        block: list[np.ndarray] = []
        for k in (i, j):
            w = _normalized_residual(pi @ MAGIC_U[:, k], block)
            n = np.linalg.norm(w)
            if n < _MIN_COLUMN_NORM:
                return None
            block.append(w / n)
        cols.extend(block)
    return dagger(MAGIC_U) @ np.column_stack(cols)


def rho_eigenvectors(s: FermionState, method: str = "auto") -> EigenBasis:
    """Eigenvectors of rho from the magic-frame projectors.

    ``v_mu`` is ``Pi_pm`` applied to column ``mu`` of the magic unitary,
    orthonormalized within its pair and mapped back by ``U^dag``.  With
    ``method="auto"`` the Jacobi eigensolver is used instead when eta is
    within 1e-6 of 0 or 1 or a projected column is shorter than 1e-8; the
    returned ``path`` says which route produced the vectors.
    """
    if method not in ("auto", "projector", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    sp = spectrum(s)
    tags = np.array([sp.lambda_plus] * 2 + [sp.lambda_minus] * 2)

    e = eta(s)
    use_projector = method == "projector" or (
        method == "auto" and _PROJECTOR_ETA_MARGIN < e < 1.0 - _PROJECTOR_ETA_MARGIN
    )
    if use_projector:
        vecs = _projector_basis(s)
        if vecs is not None:
            return EigenBasis(vecs, tags, "projector")
        if method == "projector":
            raise ConsistencyFailure("projected column vanished")

    es = hermitian_eigensystem(density_matrix(s))
    vecs = es.vectors[:, [2, 3, 0, 1]]
    return EigenBasis(vecs, tags, "oracle")


def _best_complement(candidates, basis: list[np.ndarray]) -> np.ndarray:
    best, best_norm = None, -1.0
    for c in candidates:
        w = _normalized_residual(c, basis)
        n = float(np.linalg.norm(w))
        if n > best_norm + 1e-12:
            best, best_norm = w, n
    return best / best_norm


def slater_decompose(s: FermionState) -> CanonicalForm:
    """Real canonical form ``R = V P V^T`` with ``r1 >= r2 >= 0``.

    Diagonalizes ``rho = 2 P P^dag``, takes the top eigenvector ``w1`` and its
    partner ``w0 = P conj(w1) / r1``, then completes the second block from the
    orthogonal complement and fixes the phase of its first vector so that
    ``r2`` is real and nonnegative.
    """
    p = s.matrix
    es = hermitian_eigensystem(density_matrix(s))

    w1 = es.vectors[:, 3]
    pw = p @ np.conj(w1)
    r1 = float(np.linalg.norm(pw))
    w0 = _normalized_residual(pw / r1, [w1])
    w0 = w0 / np.linalg.norm(w0)

    w3 = _best_complement([es.vectors[:, k] for k in range(3)], [w0, w1])
    w2 = _best_complement(list(np.eye(4, dtype=complex)), [w0, w1, w3])
    c = complex(np.conj(w2) @ p @ np.conj(w3))
    r2 = abs(c)
    if r2 > 0.0:
        w2 = w2 * (c / r2)
    if r2 < 1e-15:
        r2 = 0.0

    cols = [w0, w1, w2, w3]
    if r2 > r1:
        cols = [w2, w3, w0, w1]
        r1, r2 = r2, r1
    v = dagger(np.column_stack(cols))
    r = canonical_matrix(r1, r2)
    return CanonicalForm(v, r1, r2, r, frobenius_distance(v @ p @ v.T, r))


def slater_rank(s: FermionState, tol: float = RANK_TOL) -> int:
    """Number of Slater determinants in the canonical expansion (1 or 2).

    The decision uses ``r2 < tol``.  Because ``r2 ~ eta / 4`` for small eta,
    it is cross-checked against the closed-form coefficient from eta.

    Raises:
        ConsistencyFailure: the measured ``r2`` and the one implied by eta
            differ by more than 1e-9.
    """
    if not tol > 0:
        raise ValueError("rank tolerance must be positive")
    cf = slater_decompose(s)
    expected = float(np.sqrt(spectrum(s).lambda_minus / 2.0))
    if abs(cf.r2 - expected) > 1e-9:
        raise ConsistencyFailure(f"r2 = {cf.r2:.3e} but eta implies {expected:.3e}")
    return 1 if cf.r2 < tol else 2
