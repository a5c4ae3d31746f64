"""Two-fermion pure states with four single-particle modes.

A state is stored as the full antisymmetric 4x4 amplitude matrix ``P`` with
``|Psi> = sum_{mu,nu} P[mu,nu] c^dag_mu c^dag_nu |0>``, so normalization reads
``2 Tr(P P^dag) = 1``.  The six independent amplitudes are also exposed as an
electric/magnetic pair of complex 3-vectors::

    P[0, j] = E_j,    P[j, k] = -eps_{jkl} B_l        (j, k, l = 1..3)

and through ``a = E + iB``, ``b = E - iB``, which diagonalize the action of
the magic unitary :data:`fermient.linalg.MAGIC_U`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite, NotAntisymmetric, NotNormalized, NotUnitary, ZeroState
from .linalg import (
    EPSILON,
    IDENTITY2,
    MAGIC_U,
    dagger,
    is_unitary,
    kron,
    max_abs,
    sigma_dot,
)

__all__ = [
    "ANTISYMMETRY_TOL",
    "NORMALIZATION_TOL",
    "PLUECKER_INDICES",
    "FermionState",
    "FieldPair",
    "ABVectors",
    "norm_functional",
    "from_matrix",
    "from_pluecker",
    "fields_of_matrix",
    "matrix_of_fields",
    "to_fields",
    "from_fields",
    "ab_vectors",
    "local_unitary",
    "to_magic",
    "from_magic",
    "magic_closed_form",
    "SLATER_STATE",
    "MAX_STATE",
    "ETA06_STATE",
]

ANTISYMMETRY_TOL = 1e-12
NORMALIZATION_TOL = 1e-10

# Order of the six upper-triangle amplitudes used by from_pluecker and files.
PLUECKER_INDICES = ((0, 1), (0, 2), (0, 3), (2, 3), (1, 3), (1, 2))


def norm_functional(p) -> float:
    """Return ``2 Tr(P P^dag)``, which equals one for a normalized state."""
    p = np.asarray(p)
    return float(2.0 * np.sum(np.abs(p) ** 2))


def _antisymmetrized(p) -> np.ndarray:
    p = np.array(p, dtype=complex)
    if p.shape != (4, 4):
        raise NotAntisymmetric(f"amplitude matrix must be 4x4, got {p.shape}")
    if not np.all(np.isfinite(p)):
        raise NonFinite("amplitude matrix has non-finite entries")
    dev = max_abs(p + p.T)
    if dev >= ANTISYMMETRY_TOL:
        raise NotAntisymmetric(f"max|P + P^T| = {dev:.3e}")
    return 0.5 * (p - p.T)


@dataclass(frozen=True, eq=False)
class FermionState:
    """Normalized antisymmetric amplitude matrix of a two-fermion state.

    Construction symmetrizes ``P <- (P - P^T)/2`` when the antisymmetry
    defect is below 1e-12 and rejects larger defects.  The stored array is
    read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        p = _antisymmetrized(self.matrix)
        dev = abs(norm_functional(p) - 1.0)
        if dev >= NORMALIZATION_TOL:
            raise NotNormalized(f"|2 Tr(P P^dag) - 1| = {dev:.3e}")
        p.setflags(write=False)
        object.__setattr__(self, "matrix", p)

    def pluecker(self) -> tuple[complex, ...]:
        """The six amplitudes ``(P01, P02, P03, P23, P13, P12)``."""
        return tuple(complex(self.matrix[i, j]) for i, j in PLUECKER_INDICES)

    def __eq__(self, other):
        if not isinstance(other, FermionState):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        amps = ", ".join(f"{z:.6g}" for z in self.pluecker())
        return f"FermionState(P01..P12 = [{amps}])"


@dataclass(frozen=True, eq=False)
class FieldPair:
    E: np.ndarray
    B: np.ndarray


@dataclass(frozen=True, eq=False)
class ABVectors:
    a: np.ndarray
    b: np.ndarray


def from_matrix(p, normalize: bool = False, tol: float = NORMALIZATION_TOL) -> FermionState:
    """Build a state from a 4x4 amplitude matrix, optionally rescaling it.

    Without ``normalize`` the input must satisfy ``|2 Tr(P P^dag) - 1| < tol``;
    a ``tol`` looser than the default accepts the input and rescales it.

    Raises:
        ZeroState: ``normalize`` is set but every amplitude vanishes.
        NotNormalized: ``normalize`` is not set and the normalization is off
            by ``tol`` or more.
        NotAntisymmetric: the antisymmetry defect is at least 1e-12.
    """
    p = _antisymmetrized(p)
    n = norm_functional(p)
    if normalize:
        if n == 0.0:
            raise ZeroState("cannot normalize the zero amplitude matrix")
        p = p / np.sqrt(n)
    else:
        dev = abs(n - 1.0)
        if dev >= tol:
            raise NotNormalized(f"|2 Tr(P P^dag) - 1| = {dev:.3e}")
        if dev >= NORMALIZATION_TOL:
            p = p / np.sqrt(n)
    return FermionState(p)


def from_pluecker(p01, p02, p03, p23, p13, p12, normalize: bool = False) -> FermionState:
    p = np.zeros((4, 4), dtype=complex)
    for (i, j), z in zip(PLUECKER_INDICES, (p01, p02, p03, p23, p13, p12)):
        p[i, j] = z
        p[j, i] = -z
    return from_matrix(p, normalize=normalize)


def matrix_of_fields(E, B) -> np.ndarray:
    """Antisymmetric 4x4 matrix with ``P[0, j] = E_j`` and ``P[j, k] = -eps_{jkl} B_l``."""
    e = np.asarray(E, dtype=complex)
    b = np.asarray(B, dtype=complex)
    if e.shape != (3,) or b.shape != (3,):
        raise NotAntisymmetric("E and B must be complex 3-vectors")
    p = np.zeros((4, 4), dtype=complex)
    p[0, 1:] = e
    p[1:, 0] = -e
    p[1, 2], p[2, 1] = -b[2], b[2]
    p[1, 3], p[3, 1] = b[1], -b[1]
    p[2, 3], p[3, 2] = -b[0], b[0]
    return p


def fields_of_matrix(p) -> FieldPair:
    """Read (E, B) off any antisymmetric 4x4 matrix, normalized or not."""
    p = np.asarray(p, dtype=complex)
    E = p[0, 1:].copy()
    B = np.array([-p[2, 3], p[1, 3], -p[1, 2]])
    return FieldPair(E, B)


def to_fields(s: FermionState) -> FieldPair:
    return fields_of_matrix(s.matrix)


def from_fields(f: FieldPair, normalize: bool = False) -> FermionState:
    return from_matrix(matrix_of_fields(f.E, f.B), normalize=normalize)


def ab_vectors(s: FermionState) -> ABVectors:
    f = to_fields(s)
    return ABVectors(f.E + 1j * f.B, f.E - 1j * f.B)


def local_unitary(s: FermionState, u) -> FermionState:
    """Apply the single-particle unitary: ``P -> U P U^T``.

    Raises:
        NotUnitary: if ``max|U^dag U - I| >= 1e-10``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4) or not is_unitary(u, 1e-10):
        raise NotUnitary("local transformation must be a 4x4 unitary")
    return from_matrix(u @ s.matrix @ u.T)


def to_magic(s: FermionState) -> np.ndarray:
    """Amplitude matrix in the magic frame, ``U P U^T``."""
    return MAGIC_U @ s.matrix @ MAGIC_U.T


def from_magic(p_magic, normalize: bool = False) -> FermionState:
    """Inverse of :func:`to_magic`: ``P = U^dag P' conj(U)``."""
    p_magic = np.asarray(p_magic, dtype=complex)
    return from_matrix(dagger(MAGIC_U) @ p_magic @ np.conj(MAGIC_U), normalize=normalize)


def magic_closed_form(a, b) -> np.ndarray:
    """``(1/2) (eps x eps) (I x a.sigma + b.conj(sigma) x I)`` for given a, b."""
    return 0.5 * kron(EPSILON, EPSILON) @ (
        kron(IDENTITY2, sigma_dot(a)) + kron(sigma_dot(b, conjugate_sigma=True), IDENTITY2)
    )


SLATER_STATE = from_pluecker(0.5, 0, 0, 0, 0, 0)
MAX_STATE = from_pluecker(1, 0, 0, 1, 0, 0, normalize=True)
ETA06_STATE = from_pluecker(np.sqrt(0.9) / 2, 0, 0, -np.sqrt(0.1) / 2, 0, 0)
