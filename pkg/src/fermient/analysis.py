"""One-call entanglement summary of a state."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import RANK_TOL, slater_rank
from .errors import OracleMismatch
from .geometry import QUADRIC_TOL, on_quadric
from .linalg import hermitian_eigensystem
from .measures import (
    Spectrum,
    _check_order,
    density_matrix,
    eta,
    geodesic_from_weights,
    renyi_from_weights,
    state_weights,
    von_neumann_from_weights,
)
from .state import FermionState

__all__ = ["ORACLE_TOL", "EntanglementReport", "analyze"]

ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class EntanglementReport:
    eta: float
    spectrum: Spectrum
    von_neumann: float
    renyi: dict[int, float] = field(default_factory=dict)
    geodesic: float = 0.0
    slater_rank: int = 1
    on_quadric: bool = True
    oracle_error: float = 0.0
    """Largest deviation between closed-form and Jacobi eigenvalues of rho."""


def analyze(
    s: FermionState,
    alphas=(2,),
    *,
    rank_tol: float = RANK_TOL,
    quadric_tol: float = QUADRIC_TOL,
    oracle_tol: float = ORACLE_TOL,
) -> EntanglementReport:
    """Compute every entanglement quantity of ``s``.

    All quantities come from the closed-form weights ``x = 2 lambda_+`` and
    ``1 - x = 2 lambda_-``, evaluated by :func:`fermient.measures.state_weights`.
    The closed-form spectrum is compared against the Jacobi eigenvalues of
    ``rho`` before anything is returned.

    Raises:
        OracleMismatch: the two spectra differ by ``oracle_tol`` or more.
    """
    e = eta(s)
    x, y = state_weights(s)
    sp = Spectrum(lambda_plus=0.5 * x, lambda_minus=0.5 * y)
    oracle = hermitian_eigensystem(density_matrix(s)).values
    err = float(np.max(np.abs(oracle - sp.eigenvalues())))
    if not err < oracle_tol:
        raise OracleMismatch(f"closed-form spectrum off by {err:.3e}")
    return EntanglementReport(
        eta=e,
        spectrum=sp,
        von_neumann=von_neumann_from_weights(x, y),
        renyi={a: renyi_from_weights(x, y, a) for a in sorted({_check_order(a) for a in alphas})},
        geodesic=geodesic_from_weights(x, y),
        slater_rank=slater_rank(s, rank_tol),
        on_quadric=on_quadric(s, quadric_tol),
        oracle_error=err,
    )
