"""JSON state files (``fermi-state-v1``) and analysis reports (``fermi-report-v1``).

Complex numbers are ``[re, im]`` pairs.  Floats are written with Python's
shortest round-trip repr, so write -> read -> write is byte-stable.  Any
schema violation raises :class:`ParseError`, including unknown keys and
NaN/Infinity literals.

State file layout::

    {
      "format": "fermi-state-v1",
      "representation": "pluecker" | "matrix" | "fields",
      "pluecker": [[re, im] x 6],             # P01, P02, P03, P23, P13, P12
      "matrix":   [[[re, im] x 4] x 4],
      "fields":   {"E": [[re, im] x 3], "B": [[re, im] x 3]},
      "normalize": false,                      # optional
      "metadata": {"mode": ..., "seed": ..., "index": ..., "eta": ...}  # optional
    }

exactly one payload key is present and it matches ``representation``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ParseError
from .state import (
    NORMALIZATION_TOL,
    PLUECKER_INDICES,
    FermionState,
    fields_of_matrix,
    from_matrix,
    matrix_of_fields,
)

__all__ = [
    "STATE_FORMAT",
    "REPORT_FORMAT",
    "REPRESENTATIONS",
    "StateFile",
    "parse_state",
    "loads_state",
    "read_state_file",
    "write_state_file",
    "dumps",
    "digest",
    "encode_matrix",
    "decode_matrix",
    "parse_report",
]

STATE_FORMAT = "fermi-state-v1"
REPORT_FORMAT = "fermi-report-v1"
REPRESENTATIONS = ("pluecker", "matrix", "fields")
_METADATA_KEYS = {"mode": str, "seed": int, "index": int, "eta": float}


def _reject_constant(name):
    raise ParseError(f"non-finite literal {name} is not allowed")


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _decode_complex(pair, where: str) -> complex:
    if not (isinstance(pair, list) and len(pair) == 2 and all(_is_number(x) for x in pair)):
        raise ParseError(f"{where}: expected an [re, im] pair of numbers, got {pair!r}")
    re, im = float(pair[0]), float(pair[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError(f"{where}: non-finite component")
    return complex(re, im)


def _encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _decode_vector(items, n: int, where: str) -> np.ndarray:
    if not (isinstance(items, list) and len(items) == n):
        raise ParseError(f"{where}: expected a list of {n} complex pairs")
    return np.array([_decode_complex(p, f"{where}[{k}]") for k, p in enumerate(items)])


def encode_matrix(m) -> list:
    m = np.asarray(m)
    return [[_encode_complex(z) for z in row] for row in m]


def decode_matrix(rows, shape: tuple[int, int], where: str) -> np.ndarray:
    if not (isinstance(rows, list) and len(rows) == shape[0]):
        raise ParseError(f"{where}: expected {shape[0]} rows")
    return np.array(
        [_decode_vector(row, shape[1], f"{where}[{i}]") for i, row in enumerate(rows)]
    )


def _check_keys(obj, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{where}: missing field(s) {sorted(missing)}")


@dataclass(frozen=True, eq=False)
class StateFile:
    """Parsed state file.

    ``matrix`` holds the amplitudes exactly as read (not yet validated or
    normalized); :meth:`state` turns them into a :class:`FermionState`.
    """

    representation: str
    matrix: np.ndarray
    normalize: bool | None = None
    metadata: dict = field(default_factory=dict)

    def state(self, tol: float = NORMALIZATION_TOL) -> FermionState:
        return from_matrix(self.matrix, normalize=bool(self.normalize), tol=tol)

    @classmethod
    def from_state(cls, s: FermionState, representation: str = "pluecker", metadata=None):
        if representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {representation!r}")
        return cls(representation, np.array(s.matrix), None, dict(metadata or {}))

    def to_document(self) -> dict:
        doc: dict[str, Any] = {"format": STATE_FORMAT, "representation": self.representation}
        m = self.matrix
        if self.representation == "pluecker":
            doc["pluecker"] = [_encode_complex(m[i, j]) for i, j in PLUECKER_INDICES]
        elif self.representation == "matrix":
            doc["matrix"] = encode_matrix(m)
        else:
            f = fields_of_matrix(m)
            doc["fields"] = {
                "E": [_encode_complex(z) for z in f.E],
                "B": [_encode_complex(z) for z in f.B],
            }
        if self.normalize is not None:
            doc["normalize"] = self.normalize
        if self.metadata:
            doc["metadata"] = dict(self.metadata)
        return doc

    def dumps(self) -> str:
        return dumps(self.to_document())


def _parse_metadata(meta) -> dict:
    _check_keys(meta, set(_METADATA_KEYS), set(), "metadata")
    out = {}
    for key, value in meta.items():
        kind = _METADATA_KEYS[key]
        ok = _is_number(value) if kind is float else isinstance(value, kind) and not isinstance(value, bool)
        if not ok:
            raise ParseError(f"metadata.{key}: expected {kind.__name__}, got {value!r}")
        out[key] = float(value) if kind is float else value
    return out


def parse_state(doc) -> StateFile:
    _check_keys(
        doc,
        {"format", "representation", "normalize", "metadata", *REPRESENTATIONS},
        {"format", "representation"},
        "state file",
    )
    if doc["format"] != STATE_FORMAT:
        raise ParseError(f"unsupported format tag {doc['format']!r}")
    rep = doc["representation"]
    if rep not in REPRESENTATIONS:
        raise ParseError(f"unknown representation {rep!r}")
    payloads = [k for k in REPRESENTATIONS if k in doc]
    if payloads != [rep]:
        raise ParseError(f"representation {rep!r} requires exactly one {rep!r} payload, found {payloads}")

    if rep == "pluecker":
        amps = _decode_vector(doc["pluecker"], 6, "pluecker")
        m = np.zeros((4, 4), dtype=complex)
        for (i, j), z in zip(PLUECKER_INDICES, amps):
            m[i, j], m[j, i] = z, -z
    elif rep == "matrix":
        m = decode_matrix(doc["matrix"], (4, 4), "matrix")
    else:
        _check_keys(doc["fields"], {"E", "B"}, {"E", "B"}, "fields")
        m = matrix_of_fields(
            _decode_vector(doc["fields"]["E"], 3, "fields.E"),
            _decode_vector(doc["fields"]["B"], 3, "fields.B"),
        )

    normalize = doc.get("normalize")
    if normalize is not None and not isinstance(normalize, bool):
        raise ParseError("normalize must be a boolean")
    metadata = _parse_metadata(doc["metadata"]) if "metadata" in doc else {}
    return StateFile(rep, m, normalize, metadata)


def loads_state(text: str) -> StateFile:
    return parse_state(_loads(text))


def read_state_file(path) -> StateFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_state(text)


def write_state_file(path, sf: StateFile) -> None:
    Path(path).write_text(sf.dumps(), encoding="utf-8")


_REPORT_KEYS = {
    "format", "tool_version", "input", "input_digest", "tolerances",
    "analysis", "canonical_form", "checks", "passed",
}
_ANALYSIS_KEYS = {
    "eta", "lambda_plus", "lambda_minus", "von_neumann", "renyi",
    "geodesic", "slater_rank", "on_quadric",
}
_CANONICAL_KEYS = {"V", "r1", "r2", "residual"}
_CHECK_KEYS = {"name", "passed", "value", "tol"}


def parse_report(doc) -> dict:
    """Validate the structure of a report document and return it.

    ``canonical_form["V"]`` is decoded into a complex array; the rest is
    returned as plain JSON values.
    """
    if isinstance(doc, str):
        doc = _loads(doc)
    _check_keys(doc, _REPORT_KEYS, {"format", "tool_version", "input_digest", "tolerances", "checks", "passed"}, "report")
    if doc["format"] != REPORT_FORMAT:
        raise ParseError(f"unsupported report format {doc['format']!r}")
    out = dict(doc)
    if "analysis" in doc:
        _check_keys(doc["analysis"], _ANALYSIS_KEYS, _ANALYSIS_KEYS, "analysis")
    if "canonical_form" in doc:
        cf = doc["canonical_form"]
        _check_keys(cf, _CANONICAL_KEYS, _CANONICAL_KEYS, "canonical_form")
        out["canonical_form"] = dict(cf, V=decode_matrix(cf["V"], (4, 4), "canonical_form.V"))
    if not isinstance(doc["checks"], list):
        raise ParseError("checks must be a list")
    for k, c in enumerate(doc["checks"]):
        _check_keys(c, _CHECK_KEYS, _CHECK_KEYS, f"checks[{k}]")
    return out
