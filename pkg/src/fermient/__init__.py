"""Entanglement analysis of two fermions in four single-particle modes."""

__version__ = "0.1.0"

from . import (
    analysis,
    checks,
    decomposition,
    errors,
    geometry,
    linalg,
    measures,
    sampling,
    state,
    stateio,
)
from .analysis import EntanglementReport, analyze
from .decomposition import (
    CanonicalForm,
    ProjectorPair,
    projectors,
    rho_eigenvectors,
    slater_decompose,
    slater_rank,
)
from .geometry import (
    dual,
    eta_invariant,
    maximal_phase,
    on_quadric,
    pluecker_residual,
    quadric_coords,
    raise_indices,
    selfdual_split,
    spin_flip,
    vector_to_spinor,
)
from .measures import (
    density_matrix,
    eta,
    geodesic_distance,
    lambda_matrix,
    pauli_check,
    renyi,
    spectrum_closed_form,
    von_neumann,
)
from .state import (
    ETA06_STATE,
    MAX_STATE,
    SLATER_STATE,
    FermionState,
    ab_vectors,
    from_fields,
    from_matrix,
    from_pluecker,
    local_unitary,
    to_fields,
    to_magic,
)

__all__ = [
    "__version__",
    "analysis",
    "checks",
    "decomposition",
    "errors",
    "geometry",
    "linalg",
    "measures",
    "sampling",
    "state",
    "stateio",
    "EntanglementReport",
    "analyze",
    "CanonicalForm",
    "ProjectorPair",
    "projectors",
    "rho_eigenvectors",
    "slater_decompose",
    "slater_rank",
    "dual",
    "eta_invariant",
    "maximal_phase",
    "on_quadric",
    "pluecker_residual",
    "quadric_coords",
    "raise_indices",
    "selfdual_split",
    "spin_flip",
    "vector_to_spinor",
    "density_matrix",
    "eta",
    "geodesic_distance",
    "lambda_matrix",
    "pauli_check",
    "renyi",
    "spectrum_closed_form",
    "von_neumann",
    "ETA06_STATE",
    "MAX_STATE",
    "SLATER_STATE",
    "FermionState",
    "ab_vectors",
    "from_fields",
    "from_matrix",
    "from_pluecker",
    "local_unitary",
    "to_fields",
    "to_magic",
]
