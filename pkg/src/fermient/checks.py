"""Per-state verification suite and machine-readable reports."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import ORACLE_TOL, EntanglementReport, analyze
from .decomposition import RANK_TOL, CanonicalForm, slater_decompose
from .errors import ConsistencyFailure
from .geometry import eta_invariant
from .linalg import MAGIC_U, dagger, frobenius_distance, hermitian_eigensystem, max_abs
from .measures import (
    checked_eta,
    density_matrix,
    eta,
    lambda_matrix,
    pauli_check,
    spectrum,
    state_weights,
    renyi_from_weights,
    von_neumann_from_weights,
)
from .state import NORMALIZATION_TOL, FermionState
from .stateio import REPORT_FORMAT, encode_matrix

__all__ = [
    "RECONSTRUCTION_TOL",
    "CHECK_TOL",
    "Tolerances",
    "Check",
    "run_checks",
    "build_report",
    "verify_report",
]

RECONSTRUCTION_TOL = 1e-9
CHECK_TOL = 1e-9


@dataclass(frozen=True)
class Tolerances:
    validation: float = NORMALIZATION_TOL
    reconstruction: float = RECONSTRUCTION_TOL
    rank: float = RANK_TOL
    check: float = CHECK_TOL

    def as_dict(self) -> dict:
        return {
            "validation": self.validation,
            "reconstruction": self.reconstruction,
            "rank": self.rank,
            "check": self.check,
            "oracle": ORACLE_TOL,
        }


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    tol: float

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "value": self.value, "tol": self.tol}


def _upper(name: str, value: float, tol: float) -> Check:
    return Check(name, bool(value < tol), float(value), tol)


def run_checks(
    s: FermionState,
    tolerances: Tolerances = Tolerances(),
    metadata: dict | None = None,
    canonical: CanonicalForm | None = None,
) -> list[Check]:
    """Run the invariant suite on one state.

    Each entry of the result names one invariant (for example
    ``lambda_squared`` or ``reconstruction``) with its measured value and
    bound.  A ``metadata_eta`` entry is added when the file recorded an eta.

    Raises:
        OutOfRange: the recorded metadata eta lies outside [0, 1].
    """
    tol = tolerances.check
    e = eta(s)
    sp = spectrum(s)
    rho = density_matrix(s)
    out = []

    try:
        lam = lambda_matrix(s).lambda_matrix
    except ConsistencyFailure:
        out.append(Check("magic_identity", False, math.inf, tol))
    else:
        out.append(_upper("magic_identity", max_abs(MAGIC_U @ rho @ dagger(MAGIC_U) - 0.25 * (np.eye(4) + lam)), tol))
        out.append(_upper("lambda_squared", max_abs(lam @ lam - (1.0 - e * e) * np.eye(4)), tol))

    out.append(_upper("eta_two_path", abs(e - eta_invariant(s)), tol))
    oracle = hermitian_eigensystem(rho).values
    out.append(_upper("oracle_spectrum", float(np.max(np.abs(oracle - sp.eigenvalues()))), tol))

    cf = canonical if canonical is not None else slater_decompose(s)
    out.append(_upper("reconstruction", cf.residual, tolerances.reconstruction))
    coeff = abs(cf.r1 - math.sqrt(sp.lambda_plus / 2)) + abs(cf.r2 - math.sqrt(sp.lambda_minus / 2))
    out.append(_upper("coefficients", coeff, tolerances.reconstruction))

    out.append(Check("pauli_bound", pauli_check(rho, 2), float(oracle.max()), 0.5))

    x, y = state_weights(s)
    s1 = von_neumann_from_weights(x, y)
    s2 = renyi_from_weights(x, y, 2)
    ordered = 1.0 - 1e-12 <= s2 <= s1 <= 2.0 + 1e-12
    out.append(Check("entropy_ordering", ordered, s1 - s2, 0.0))

    if metadata and "eta" in metadata:
        recorded = checked_eta(metadata["eta"])
        out.append(_upper("metadata_eta", abs(recorded - e), tol))
    return out


def _analysis_dict(r: EntanglementReport) -> dict:
    return {
        "eta": r.eta,
        "lambda_plus": r.spectrum.lambda_plus,
        "lambda_minus": r.spectrum.lambda_minus,
        "von_neumann": r.von_neumann,
        "renyi": {str(a): v for a, v in r.renyi.items()},
        "geodesic": r.geodesic,
        "slater_rank": r.slater_rank,
        "on_quadric": r.on_quadric,
    }


def build_report(
    s: FermionState,
    *,
    alphas=(2,),
    tolerances: Tolerances = Tolerances(),
    input_name: str | None = None,
    input_digest: str = "",
    include_analysis: bool = True,
    metadata: dict | None = None,
) -> dict:
    """Assemble a ``fermi-report-v1`` document for one state.

    Raises:
        OracleMismatch: propagated from :func:`fermient.analysis.analyze`.
    """
    cf = slater_decompose(s)
    doc: dict = {
        "format": REPORT_FORMAT,
        "tool_version": __version__,
        "input_digest": input_digest,
        "tolerances": tolerances.as_dict(),
    }
    if input_name is not None:
        doc["input"] = input_name
    if include_analysis:
        doc["analysis"] = _analysis_dict(analyze(s, alphas, rank_tol=tolerances.rank))
    doc["canonical_form"] = {
        "V": encode_matrix(cf.V),
        "r1": cf.r1,
        "r2": cf.r2,
        "residual": cf.residual,
    }
    checks = run_checks(s, tolerances, metadata, canonical=cf)
    doc["checks"] = [c.as_dict() for c in checks]
    doc["passed"] = all(c.passed for c in checks)
    return doc


def verify_report(report: dict, s: FermionState) -> list[str]:
    """Recompute a parsed report against its input state.

    Returns a list of human-readable discrepancies (empty when the report
    reproduces within its recorded tolerances).  The unitary V is not unique,
    so it is verified through unitarity and reconstruction instead of by
    entrywise comparison.
    """
    tol = report["tolerances"]
    problems = []
    if "analysis" in report:
        a = report["analysis"]
        alphas = [int(k) for k in a["renyi"]]
        fresh = _analysis_dict(analyze(s, alphas or (2,), rank_tol=tol["rank"]))
        for key in ("eta", "lambda_plus", "lambda_minus", "von_neumann", "geodesic"):
            if not abs(fresh[key] - a[key]) < tol["check"]:
                problems.append(f"analysis.{key}: {a[key]!r} vs {fresh[key]!r}")
        for k, v in a["renyi"].items():
            if not abs(fresh["renyi"][k] - v) < tol["check"]:
                problems.append(f"analysis.renyi.{k}: {v!r} vs {fresh['renyi'][k]!r}")
        for key in ("slater_rank", "on_quadric"):
            if fresh[key] != a[key]:
                problems.append(f"analysis.{key}: {a[key]!r} vs {fresh[key]!r}")
    if "canonical_form" in report:
        cf = report["canonical_form"]
        v = np.asarray(cf["V"])
        rt = tol["reconstruction"]
        if max_abs(dagger(v) @ v - np.eye(4)) >= rt:
            problems.append("canonical_form.V is not unitary")
        r = np.zeros((4, 4))
        r[0, 1], r[1, 0], r[2, 3], r[3, 2] = cf["r1"], -cf["r1"], cf["r2"], -cf["r2"]
        if not frobenius_distance(v @ s.matrix @ v.T, r) < rt:
            problems.append("canonical_form does not reconstruct the input")
        fresh = slater_decompose(s)
        for key in ("r1", "r2"):
            if not abs(getattr(fresh, key) - cf[key]) < rt:
                problems.append(f"canonical_form.{key}: {cf[key]!r} vs {getattr(fresh, key)!r}")
    checks = run_checks(s, Tolerances(tol["validation"], tol["reconstruction"], tol["rank"], tol["check"]))
    if all(c.passed for c in checks) != report["passed"]:
        problems.append("overall pass flag does not reproduce")
    return problems
