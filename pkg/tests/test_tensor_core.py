import math

import numpy as np
import numpy.testing as npt
import pytest

from statwintgen.tensor_core import (
    ScalarField,
    central_difference,
    commutator,
    frobenius_norm_sq,
    random_orthogonal,
    random_symmetric_traceless,
    symmetrize_upper,
)


class TestFrobenius:
    def test_identity(self):
        assert frobenius_norm_sq(np.eye(2)) == 2.0

    def test_zero(self):
        assert frobenius_norm_sq(np.zeros((3, 3))) == 0.0

    def test_antisymmetric_pair_value(self):
        # the matrix that realizes equality in the commutator bound
        assert frobenius_norm_sq([[0.0, 2.0], [-2.0, 0.0]]) == 8.0

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            frobenius_norm_sq([[np.nan, 0.0], [0.0, 0.0]])

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            frobenius_norm_sq(np.zeros((2, 3)))


class TestCommutator:
    def test_self_commutator_vanishes(self):
        m = np.arange(9.0).reshape(3, 3)
        npt.assert_array_equal(commutator(m, m), np.zeros((3, 3)))

    def test_identity_commutes(self):
        b = np.array([[1.0, 2.0], [3.0, 4.0]])
        npt.assert_array_equal(commutator(np.eye(2), b), np.zeros((2, 2)))

    def test_hand_value(self):
        a = np.diag([1.0, -1.0])
        b = np.array([[0.0, 1.0], [1.0, 0.0]])
        npt.assert_array_equal(commutator(a, b), [[0.0, 2.0], [-2.0, 0.0]])

    def test_antisymmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            a = rng.standard_normal((4, 4))
            b = rng.standard_normal((4, 4))
            npt.assert_array_equal(commutator(a, b), -commutator(b, a))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            commutator(np.eye(2), np.eye(3))

    def test_norm_invariant_under_orthogonal_conjugation(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            a = rng.standard_normal((5, 5))
            b = rng.standard_normal((5, 5))
            q = random_orthogonal(5, rng)
            base = frobenius_norm_sq(commutator(a, b))
            conj = frobenius_norm_sq(commutator(q @ a @ q.T, q @ b @ q.T))
            assert abs(base - conj) <= 1e-9 * max(1.0, base)


class TestCentralDifference:
    def test_square(self):
        f = ScalarField(1, lambda x: x[0] ** 2)
        assert abs(central_difference(f, [1.0], 0) - 2.0) <= 1e-9

    def test_constant_exact(self):
        f = ScalarField(3, lambda x: 4.25)
        assert central_difference(f, [0.2, -0.5, 1.0], 1) == 0.0

    def test_exponential(self):
        f = ScalarField(1, lambda x: math.exp(x[0]))
        assert abs(central_difference(f, [0.0], 0) - 1.0) <= 1e-9

    def test_quadratics_match_analytic(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            a, b, c = rng.uniform(-3, 3, 3)
            x0 = rng.uniform(-1, 1)
            f = ScalarField(1, lambda x, a=a, b=b, c=c: a * x[0] ** 2 + b * x[0] + c)
            assert abs(central_difference(f, [x0], 0) - (2 * a * x0 + b)) <= 1e-8

    def test_bad_step(self):
        with pytest.raises(ValueError):
            central_difference(lambda x: x[0], [0.0], 0, step=0.0)

    def test_nonfinite_evaluation(self):
        with pytest.raises(ValueError):
            central_difference(lambda x: float("inf"), [0.0], 0)

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            central_difference(lambda x: x[0], [0.0], 3)


class TestRandomSymmetricTraceless:
    def test_dim_one_is_zero(self):
        (m,) = random_symmetric_traceless(1, 1, seed=3)
        npt.assert_array_equal(m, np.zeros((1, 1)))

    def test_symmetric_and_traceless(self):
        for m in random_symmetric_traceless(5, 10, seed=9):
            npt.assert_allclose(m, m.T, atol=1e-12)
            assert abs(np.trace(m)) <= 1e-12

    def test_deterministic(self):
        a = random_symmetric_traceless(4, 6, seed=123)
        b = random_symmetric_traceless(4, 6, seed=123)
        for x, y in zip(a, b):
            npt.assert_array_equal(x, y)

    def test_seeds_differ(self):
        a = random_symmetric_traceless(4, 1, seed=1)[0]
        b = random_symmetric_traceless(4, 1, seed=2)[0]
        assert np.max(np.abs(a - b)) > 1e-3

    def test_bad_args(self):
        with pytest.raises(ValueError):
            random_symmetric_traceless(0, 1, seed=0)
        with pytest.raises(ValueError):
            random_symmetric_traceless(2, 0, seed=0)


def test_symmetrize_upper():
    raw = np.array([[1.0, 2.0], [99.0, 3.0]])
    npt.assert_array_equal(symmetrize_upper(raw), [[1.0, 2.0], [2.0, 3.0]])
