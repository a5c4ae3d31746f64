import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermient.errors import NonFinite, NotAntisymmetric, NotNormalized, NotUnitary, ZeroState
from fermient.linalg import EPSILON, IDENTITY2, PAULI, kron, make_rng, random_unitary
from fermient.measures import eta
from fermient.sampling import random_rank1_state, random_state, random_state_with_eta
from fermient.state import (
    ETA06_STATE,
    MAX_STATE,
    SLATER_STATE,
    FermionState,
    FieldPair,
    ab_vectors,
    from_fields,
    from_magic,
    from_matrix,
    from_pluecker,
    local_unitary,
    magic_closed_form,
    norm_functional,
    to_fields,
    to_magic,
)

SQ8 = 1 / (2 * np.sqrt(2))


class TestReferenceStates:
    def test_slater(self):
        expected = np.zeros((4, 4))
        expected[0, 1], expected[1, 0] = 0.5, -0.5
        np.testing.assert_array_equal(SLATER_STATE.matrix, expected)

    def test_max(self):
        assert SLATER_STATE.matrix.dtype == complex
        assert MAX_STATE.matrix[0, 1] == pytest.approx(SQ8, abs=1e-16)
        assert MAX_STATE.matrix[2, 3] == pytest.approx(SQ8, abs=1e-16)

    def test_eta06_normalization_by_hand(self):
        # 4 (0.225 + 0.025) = 1
        assert norm_functional(ETA06_STATE.matrix) == pytest.approx(1.0, abs=1e-15)
        assert ETA06_STATE.matrix[0, 1].real == pytest.approx(0.4743416, abs=1e-7)
        assert ETA06_STATE.matrix[2, 3].real == pytest.approx(-0.1581139, abs=1e-7)


class TestConstruction:
    def test_pluecker_round(self):
        assert from_pluecker(0.5, 0, 0, 0, 0, 0) == SLATER_STATE

    def test_normalize_all_ones(self):
        s = from_pluecker(1, 1, 1, 1, 1, 1, normalize=True)
        assert norm_functional(s.matrix) == pytest.approx(1.0, abs=1e-15)
        assert abs(s.matrix[0, 1]) == pytest.approx(1 / (2 * np.sqrt(6)), abs=1e-15)

    def test_antisymmetrizes_small_defect(self):
        p = np.array(SLATER_STATE.matrix)
        p[1, 0] += 1e-14
        s = from_matrix(p)
        assert np.max(np.abs(s.matrix + s.matrix.T)) == 0.0

    @pytest.mark.parametrize("defect", [2e-12, 1e-6])
    def test_rejects_large_defect(self, defect):
        p = np.array(SLATER_STATE.matrix)
        p[1, 0] += defect
        with pytest.raises(NotAntisymmetric):
            from_matrix(p)

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            from_pluecker(1, 0, 0, 0, 0, 0)

    def test_zero_state(self):
        with pytest.raises(ZeroState):
            from_pluecker(0, 0, 0, 0, 0, 0, normalize=True)

    def test_non_finite(self):
        with pytest.raises(NonFinite):
            from_pluecker(np.nan, 0, 0, 0, 0, 0)

    def test_loose_tolerance_renormalizes(self):
        p = 1.001 * np.array(SLATER_STATE.matrix)
        with pytest.raises(NotNormalized):
            from_matrix(p)
        s = from_matrix(p, tol=1e-2)
        assert norm_functional(s.matrix) == pytest.approx(1.0, abs=1e-15)

    def test_immutable(self):
        with pytest.raises(ValueError):
            SLATER_STATE.matrix[0, 1] = 1.0

    def test_value_semantics(self):
        again = from_pluecker(np.sqrt(0.9) / 2, 0, 0, -np.sqrt(0.1) / 2, 0, 0)
        assert again == ETA06_STATE
        assert hash(again) == hash(ETA06_STATE)
        assert SLATER_STATE != MAX_STATE

    def test_direct_constructor_validates(self):
        with pytest.raises(NotNormalized):
            FermionState(np.zeros((4, 4)))


class TestFields:
    @pytest.mark.parametrize(
        "state, E, B",
        [
            (SLATER_STATE, [0.5, 0, 0], [0, 0, 0]),
            (MAX_STATE, [SQ8, 0, 0], [-SQ8, 0, 0]),
            (ETA06_STATE, [np.sqrt(0.9) / 2, 0, 0], [np.sqrt(0.1) / 2, 0, 0]),
        ],
    )
    def test_examples(self, state, E, B):
        f = to_fields(state)
        np.testing.assert_allclose(f.E, E, atol=1e-15)
        np.testing.assert_allclose(f.B, B, atol=1e-15)

    def test_from_fields_examples(self):
        assert from_fields(FieldPair(np.array([0.5, 0, 0]), np.zeros(3))) == SLATER_STATE
        s = from_fields(FieldPair(np.array([np.sqrt(0.9) / 2, 0, 0]), np.array([np.sqrt(0.1) / 2, 0, 0])))
        np.testing.assert_allclose(s.matrix, ETA06_STATE.matrix, atol=1e-16)

    def test_round_trip(self, generic_states):
        for s in generic_states[:200]:
            back = from_fields(to_fields(s))
            assert np.max(np.abs(back.matrix - s.matrix)) < 1e-14

    def test_ab_examples(self):
        ab = ab_vectors(SLATER_STATE)
        np.testing.assert_allclose(ab.a, [0.5, 0, 0])
        np.testing.assert_allclose(ab.b, [0.5, 0, 0])
        ab = ab_vectors(MAX_STATE)
        np.testing.assert_allclose(ab.a, [(1 - 1j) * SQ8, 0, 0], atol=1e-16)
        np.testing.assert_allclose(ab.b, [(1 + 1j) * SQ8, 0, 0], atol=1e-16)

    def test_ab_norm(self, generic_states):
        for s in generic_states:
            ab = ab_vectors(s)
            assert abs(np.vdot(ab.a, ab.a).real + np.vdot(ab.b, ab.b).real - 0.5) < 1e-10


class TestLocalUnitary:
    def test_identity(self):
        assert local_unitary(ETA06_STATE, np.eye(4)) == ETA06_STATE

    def test_permutation(self):
        perm = np.zeros((4, 4))
        perm[2, 0] = perm[3, 1] = perm[0, 2] = perm[1, 3] = 1
        s = local_unitary(SLATER_STATE, perm)
        assert s.matrix[2, 3] == 0.5
        assert np.count_nonzero(s.matrix) == 2

    def test_eta_invariant(self, generic_states, rng):
        for s in generic_states[:200]:
            u = random_unitary(4, rng)
            assert abs(eta(local_unitary(s, u)) - eta(s)) < 1e-10

    def test_composition(self, rng):
        s = random_state(rng)
        u, v = random_unitary(4, rng), random_unitary(4, rng)
        lhs = local_unitary(local_unitary(s, u), v)
        rhs = local_unitary(s, v @ u)
        assert np.max(np.abs(lhs.matrix - rhs.matrix)) < 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            local_unitary(SLATER_STATE, 2 * np.eye(4))


class TestMagic:
    def test_slater_closed_form(self):
        expected = 0.25 * kron(EPSILON, EPSILON) @ (kron(IDENTITY2, PAULI[0]) + kron(PAULI[0], IDENTITY2))
        assert np.max(np.abs(to_magic(SLATER_STATE) - expected)) < 1e-15

    def test_closed_form_random(self, generic_states):
        for s in generic_states:
            ab = ab_vectors(s)
            assert np.max(np.abs(to_magic(s) - magic_closed_form(ab.a, ab.b))) < 1e-12

    def test_antisymmetric_and_round_trip(self, generic_states):
        for s in generic_states[:200]:
            m = to_magic(s)
            assert np.max(np.abs(m + m.T)) < 1e-12
            assert abs(norm_functional(m) - 1) < 1e-10
            assert np.max(np.abs(from_magic(m).matrix - s.matrix)) < 1e-14


class TestSamplers:
    def test_generic_valid(self, generic_states):
        for s in generic_states:
            assert abs(norm_functional(s.matrix) - 1) < 1e-10

    def test_fixed_eta(self, rng):
        for target in (0.0, 0.25, 0.6, 0.999, 1.0):
            assert abs(eta(random_state_with_eta(target, rng)) - target) < 1e-10

    def test_rank1_pluecker(self, rng):
        s = random_rank1_state(rng)
        p = s.matrix
        assert abs(p[0, 1] * p[2, 3] - p[0, 2] * p[1, 3] + p[0, 3] * p[1, 2]) < 1e-12

    def test_deterministic(self):
        a = [random_state(make_rng(5)).matrix for _ in range(2)]
        np.testing.assert_array_equal(a[0], a[1])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
                min_size=6, max_size=6).filter(lambda z: max(abs(v) for v in z) > 1e-3))
def test_normalize_always_valid(amps):
    s = from_pluecker(*amps, normalize=True)
    assert abs(norm_functional(s.matrix) - 1.0) < 1e-12
    assert np.max(np.abs(s.matrix + s.matrix.T)) == 0.0
