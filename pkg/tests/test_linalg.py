import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fermient.errors import NotHermitian, ShapeMismatch
from fermient.linalg import (
    EPSILON,
    IDENTITY2,
    MAGIC_U,
    METRIC,
    PAULI,
    dagger,
    frobenius_distance,
    hermitian_eigensystem,
    is_unitary,
    kron,
    make_rng,
    random_unitary,
)
from fermient.measures import density_matrix
from fermient.state import ETA06_STATE

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def complex_2x2(rng):
    return rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))


def random_hermitian(rng, n=4):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a + a.conj().T


class TestConstants:
    def test_read_only(self):
        with pytest.raises(ValueError):
            MAGIC_U[0, 0] = 0

    def test_magic_unitary(self):
        assert is_unitary(MAGIC_U, 1e-15)

    @pytest.mark.parametrize("j", [0, 1, 2])
    def test_epsilon_conjugates_pauli(self, j):
        # eps sigma_j eps = conj(sigma_j) with eps = i sigma_2
        np.testing.assert_array_equal(EPSILON @ PAULI[j] @ EPSILON, np.conj(PAULI[j]))

    def test_metric_rotates_to_epsilon_square(self):
        np.testing.assert_allclose(MAGIC_U @ METRIC @ MAGIC_U.T, kron(EPSILON, EPSILON), atol=1e-15)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(IDENTITY2, IDENTITY2), np.eye(4))

    def test_sigma1_sigma1_antidiagonal(self):
        # hand expansion: [[0, s1], [s1, 0]] with s1 = [[0,1],[1,0]]
        expected = np.zeros((4, 4))
        for i in range(4):
            expected[i, 3 - i] = 1
        np.testing.assert_array_equal(kron(PAULI[0], PAULI[0]), expected)

    def test_entrywise_definition(self, rng):
        a, b = complex_2x2(rng), complex_2x2(rng)
        k = kron(a, b)
        for i in range(2):
            for j in range(2):
                for m in range(2):
                    for n in range(2):
                        assert abs(k[2 * i + m, 2 * j + n] - a[i, j] * b[m, n]) < 1e-14

    def test_mixed_product(self, rng):
        for _ in range(50):
            a, b, c, d = (complex_2x2(rng) for _ in range(4))
            lhs = kron(a, b) @ kron(c, d)
            assert np.max(np.abs(lhs - kron(a @ c, b @ d))) < 1e-12

    def test_bilinear(self, rng):
        a, a2, b = complex_2x2(rng), complex_2x2(rng), complex_2x2(rng)
        z = 0.3 - 1.7j
        assert np.max(np.abs(kron(a + z * a2, b) - kron(a, b) - z * kron(a2, b))) < 1e-12
        assert np.max(np.abs(kron(b, a + z * a2) - kron(b, a) - z * kron(b, a2))) < 1e-12


class TestFrobenius:
    @pytest.mark.parametrize(
        "a, b, expected",
        [
            (np.eye(2), np.eye(2), 0.0),
            (np.eye(2), np.zeros((2, 2)), np.sqrt(2.0)),
            (PAULI[0], PAULI[2], 2.0),
        ],
    )
    def test_examples(self, a, b, expected):
        assert frobenius_distance(a, b) == pytest.approx(expected, abs=1e-15)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            frobenius_distance(np.eye(2), np.eye(3))

    @given(arrays(float, (3, 3), elements=finite), arrays(float, (3, 3), elements=finite))
    def test_symmetric_nonnegative(self, a, b):
        d = frobenius_distance(a, b)
        assert d >= 0
        assert d == frobenius_distance(b, a)


class TestEigensystem:
    def test_identity(self):
        es = hermitian_eigensystem(np.eye(4))
        np.testing.assert_array_equal(es.values, np.ones(4))

    def test_pauli_x(self):
        es = hermitian_eigensystem(PAULI[0])
        np.testing.assert_allclose(es.values, [-1.0, 1.0], atol=1e-15)

    def test_interacting_density_matrix(self):
        es = hermitian_eigensystem(density_matrix(ETA06_STATE))
        np.testing.assert_allclose(es.values, [0.05, 0.05, 0.45, 0.45], atol=1e-14)

    def test_reconstruction_random(self):
        rng = make_rng(7)
        for _ in range(1000):
            h = random_hermitian(rng)
            es = hermitian_eigensystem(h)
            v = es.vectors
            assert frobenius_distance(v @ np.diag(es.values) @ dagger(v), h) < 1e-9
            assert np.max(np.abs(dagger(v) @ v - np.eye(4))) < 1e-12
            assert np.all(np.diff(es.values) >= 0)

    def test_matches_numpy(self):
        rng = make_rng(8)
        for n in (1, 2, 3, 5, 6):
            h = random_hermitian(rng, n)
            np.testing.assert_allclose(hermitian_eigensystem(h).values, np.linalg.eigvalsh(h), atol=1e-11)

    def test_deterministic_degenerate_basis(self):
        u = random_unitary(4, 3)
        h = u @ np.diag([1.0, 1.0, 2.0, 2.0]) @ dagger(u)
        a = hermitian_eigensystem(h).vectors
        b = hermitian_eigensystem(h.copy()).vectors
        np.testing.assert_array_equal(a, b)

    def test_phase_convention(self):
        rng = make_rng(9)
        v = hermitian_eigensystem(random_hermitian(rng)).vectors
        for k in range(4):
            col = v[:, k]
            pivot = int(np.argmax(np.abs(col)))
            assert abs(col[pivot].imag) < 1e-15 and col[pivot].real > 0

    @pytest.mark.parametrize(
        "bad",
        [np.array([[0, 1], [0, 0]], dtype=complex), np.ones((2, 3)), np.array([[np.nan, 0], [0, 1]])],
    )
    def test_rejects(self, bad):
        with pytest.raises(NotHermitian):
            hermitian_eigensystem(bad)


class TestRandomUnitary:
    def test_u1(self):
        u = random_unitary(1, 5)
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-15

    def test_deterministic(self):
        np.testing.assert_array_equal(random_unitary(4, 42), random_unitary(4, 42))

    def test_unitary_and_det(self):
        rng = make_rng(11)
        for _ in range(200):
            u = random_unitary(4, rng)
            assert is_unitary(u, 1e-12)
            assert abs(abs(np.linalg.det(u)) - 1.0) < 1e-10

    def test_haar_second_moment(self):
        rng = make_rng(2024)
        samples = [abs(random_unitary(4, rng)[0, 0]) ** 2 for _ in range(10_000)]
        # frozen Monte-Carlo oracle for E|U_00|^2 = 1/4
        assert np.mean(samples) == pytest.approx(0.25, abs=0.01)

    def test_generator_passthrough(self):
        g = make_rng(1)
        assert make_rng(g) is g


@settings(max_examples=50, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, (4, 4), elements=finite))
def test_eigensystem_hypothesis(re, im):
    h = re + re.T + 1j * (im - im.T)
    es = hermitian_eigensystem(h)
    scale = max(1.0, np.linalg.norm(h))
    assert frobenius_distance(es.vectors @ np.diag(es.values) @ dagger(es.vectors), h) < 1e-10 * scale
