"""Small fixed-size complex linear algebra.

Constants of the two-spinor / Minkowski bookkeeping, the Kronecker product,
a cyclic complex Jacobi eigensolver used as the brute-force oracle for every
closed-form spectrum in the package, and a Haar sampler for U(n).

All constant arrays are read-only.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from .errors import NotHermitian, ShapeMismatch

__all__ = [
    "IDENTITY2",
    "PAULI",
    "EPSILON",
    "METRIC",
    "MAGIC_U",
    "LEVI_CIVITA4",
    "INFELD",
    "Eigensystem",
    "dagger",
    "sigma_dot",
    "kron",
    "hermitian_eigensystem",
    "make_rng",
    "random_unitary",
    "frobenius_distance",
    "max_abs",
    "is_unitary",
]


def _frozen(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


_SQRT_HALF = 1.0 / np.sqrt(2.0)

IDENTITY2 = _frozen(np.eye(2, dtype=complex))
PAULI = (
    _frozen(np.array([[0, 1], [1, 0]], dtype=complex)),
    _frozen(np.array([[0, -1j], [1j, 0]], dtype=complex)),
    _frozen(np.array([[1, 0], [0, -1]], dtype=complex)),
)
# epsilon = i sigma_2
EPSILON = _frozen(np.array([[0, 1], [-1, 0]], dtype=complex))
METRIC = _frozen(np.diag([1.0, -1.0, -1.0, -1.0]))
MAGIC_U = _frozen(
    np.array(
        [
            [1, 0, 0, 1],
            [0, 1, -1j, 0],
            [0, 1, 1j, 0],
            [1, 0, 0, -1],
        ],
        dtype=complex,
    )
    * _SQRT_HALF
)
# Infeld-van der Waerden symbols sigma^mu_{AB'}, mu = 0..3
INFELD = (
    _frozen(np.array([[1, 0], [0, 1]], dtype=complex) * _SQRT_HALF),
    _frozen(np.array([[0, 1], [1, 0]], dtype=complex) * _SQRT_HALF),
    _frozen(np.array([[0, -1j], [1j, 0]], dtype=complex) * _SQRT_HALF),
    _frozen(np.array([[1, 0], [0, -1]], dtype=complex) * _SQRT_HALF),
)


def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


LEVI_CIVITA4 = _frozen(_levi_civita(4))


class Eigensystem(NamedTuple):
    values: np.ndarray
    """Real eigenvalues in ascending order."""
    vectors: np.ndarray
    """Orthonormal eigenvectors as columns, ``vectors[:, k]`` belongs to ``values[k]``."""


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def sigma_dot(v, conjugate_sigma: bool = False) -> np.ndarray:
    """Return ``v_1 sigma_1 + v_2 sigma_2 + v_3 sigma_3`` for a complex 3-vector.

    With ``conjugate_sigma`` the complex-conjugated Pauli matrices are used,
    i.e. the vector is contracted with ``(sigma_1, -sigma_2, sigma_3)``.
    """
    v = np.asarray(v, dtype=complex)
    out = np.zeros((2, 2), dtype=complex)
    for vj, s in zip(v, PAULI):
        out = out + vj * (np.conj(s) if conjugate_sigma else s)
    return out


def kron(a, b) -> np.ndarray:
    """Kronecker product with the first factor as the major index.

    ``kron(a, b)[2*i + k, 2*j + l] == a[i, j] * b[k, l]`` for 2x2 factors.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def frobenius_distance(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return max_abs(dagger(u) @ u - np.eye(u.shape[0])) < tol


def _jacobi_pair(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    app, aqq = abs(a[p, p].real), abs(a[q, q].real)
    if mag == 0.0 or (app + 1e3 * mag == app and aqq + 1e3 * mag == aqq):
        a[p, q] = a[q, p] = 0.0
        return
    # componentwise division stays finite for subnormal entries
    phase = complex(apq.real / mag, apq.imag / mag)
    diff = a[q, q].real - a[p, p].real
    if 2.0 * mag < 1e-150 * abs(diff):
        # theta = diff / (2 mag) would overflow; t tends to 1 / (2 theta)
        t = mag / diff
    else:
        theta = diff / (2.0 * mag)
        t = math.copysign(1.0 / (abs(theta) + math.hypot(theta, 1.0)), theta)
    c = 1.0 / math.hypot(t, 1.0)
    s = t * c
    # Removes the phase of a[p, q] first, then applies a real Givens rotation.
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = dagger(j) @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ j


def _pivot(vec: np.ndarray) -> int:
    mags = np.abs(vec)
    return int(np.argmax(mags >= mags.max() - 1e-12))


def _canonical_phase(vec: np.ndarray) -> np.ndarray:
    k = _pivot(vec)
    return vec * (np.conj(vec[k]) / abs(vec[k]))


def _mgs(cols: np.ndarray) -> np.ndarray:
    out = np.array(cols, dtype=complex)
    for k in range(out.shape[1]):
        for j in range(k):
            out[:, k] -= (np.conj(out[:, j]) @ out[:, k]) * out[:, j]
        out[:, k] /= np.linalg.norm(out[:, k])
    return out


def hermitian_eigensystem(
    h,
    *,
    tol: float = 1e-13,
    max_sweeps: int = 100,
    cluster_tol: float = 1e-12,
) -> Eigensystem:
    """Diagonalize a small Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||H||_F)`` or after ``max_sweeps`` sweeps.

    Output is deterministic: each eigenvector is rotated so that its first
    component of largest modulus is real and positive, and eigenvectors
    within a cluster of eigenvalues closer than ``cluster_tol`` are
    re-orthonormalized by modified Gram-Schmidt and ordered by the index
    of that pivot component.

    Raises:
        NotHermitian: if ``max|H - H^dagger| >= 1e-10`` or H is not square.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitian("matrix has non-finite entries")
    if max_abs(a - dagger(a)) >= 1e-10:
        raise NotHermitian(f"max|H - H^dagger| = {max_abs(a - dagger(a)):.3e}")
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)

    for _ in range(max_sweeps):
        if np.sqrt(np.sum(np.abs(a[offdiag]) ** 2)) < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_pair(a, v, p, q)

    values = np.real(np.diag(a)).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    v = v[:, order]

    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] < cluster_tol * scale:
            stop += 1
        block = v[:, start:stop]
        if stop - start > 1:
            block = _mgs(block)
        block = np.column_stack([_canonical_phase(block[:, k]) for k in range(block.shape[1])])
        keys = [(_pivot(block[:, k]), -abs(block[_pivot(block[:, k]), k])) for k in range(block.shape[1])]
        perm = sorted(range(block.shape[1]), key=lambda k: keys[k])
        v[:, start:stop] = block[:, perm]
        start = stop

    return Eigensystem(values, v)


def make_rng(seed) -> np.random.Generator:
    """Return a Philox (counter-based, 64-bit keyed) generator.

    An existing :class:`numpy.random.Generator` is passed through unchanged,
    so callers can thread one explicit RNG state through several draws.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(int(seed)))


def random_unitary(n: int, seed) -> np.ndarray:
    """Sample a Haar-distributed n x n unitary.

    QR-factorizes an i.i.d. standard complex Gaussian matrix and multiplies
    each column of Q by the phase of the matching diagonal entry of R.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * _SQRT_HALF
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
