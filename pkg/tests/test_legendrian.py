import numpy as np
import numpy.testing as npt
import pytest

import statwintgen.legendrian as lg
import statwintgen.wintgen as wg


class TestValidate:
    def test_umbilic_ok(self):
        assert lg.validate(lg.umbilic_instance()) == []

    def test_xi_offdiagonal_flagged(self):
        inst = lg.umbilic_instance(n=2)
        h = inst.h.copy()
        h[2, 0, 1] = h[2, 1, 0] = 0.5
        bad = lg.LegendrianPointInstance(n=2, c=0.0, f_val=1.0, f_prime=1.0, h=h, h_star=inst.h_star)
        violations = lg.validate(bad)
        assert ("h", 2, 0, 1) in violations

    def test_asymmetric_slice_flagged(self):
        inst = lg.umbilic_instance(n=2)
        h = inst.h.copy()
        h[0, 0, 1] = 0.3  # not mirrored
        bad = lg.LegendrianPointInstance(n=2, c=0.0, f_val=1.0, f_prime=1.0, h=h, h_star=inst.h_star)
        assert any(v[0] == "h" and v[1] == 0 for v in lg.validate(bad))

    def test_cosymplectic_zero_xi_slices(self):
        inst = lg.umbilic_instance(n=3, f_prime=0.0)
        npt.assert_array_equal(inst.h[3], np.zeros((3, 3)))
        assert lg.validate(inst) == []

    def test_roundtrip_serialization(self):
        inst = wg.random_instance(n=3, seed=5, index=2)
        again = lg.LegendrianPointInstance.from_json(inst.to_json())
        npt.assert_array_equal(inst.h, again.h)
        npt.assert_array_equal(inst.h_star, again.h_star)
        assert (inst.n, inst.c, inst.f_val, inst.f_prime) == (
            again.n,
            again.c,
            again.f_val,
            again.f_prime,
        )


class TestMeansAndTraceless:
    def test_umbilic_norms(self):
        m = lg.means_and_traceless(lg.umbilic_instance())
        assert m.norm_H_sq == 1.0
        assert m.norm_Hstar_sq == 1.0
        assert m.norm_H0_sq == 1.0
        assert m.norm_tau_sq == 0.0
        assert m.norm_taustar_sq == 0.0
        assert m.norm_tau0_sq == 0.0

    def test_zero_instance(self):
        m = lg.means_and_traceless(lg.umbilic_instance(n=2, f_prime=0.0))
        for value in (m.norm_H_sq, m.norm_Hstar_sq, m.norm_H0_sq, m.norm_tau_sq):
            assert value == 0.0

    def test_parallelogram_bound(self):
        for i in range(50):
            inst = wg.random_instance(n=2 + i % 4, seed=31, index=i)
            m = lg.means_and_traceless(inst)
            assert 4.0 * m.norm_H0_sq <= 2.0 * m.norm_H_sq + 2.0 * m.norm_Hstar_sq + 1e-12

    def test_invalid_instance_rejected(self):
        inst = lg.umbilic_instance(n=2)
        h = inst.h.copy()
        h[2, 0, 0] = 5.0
        bad = lg.LegendrianPointInstance(n=2, c=0.0, f_val=1.0, f_prime=1.0, h=h, h_star=inst.h_star)
        with pytest.raises(ValueError):
            lg.means_and_traceless(bad)


class TestShapeOperators:
    def test_umbilic_xi_operator(self):
        ops = lg.shape_operators(lg.umbilic_instance(n=2))
        npt.assert_array_equal(ops.A[2], -np.eye(2))
        npt.assert_array_equal(ops.S[2], np.zeros((2, 2)))

    def test_traceless(self):
        inst = wg.random_instance(n=4, seed=3, index=0)
        ops = lg.shape_operators(inst)
        for group in (ops.S, ops.S_star, ops.S0):
            for alpha in range(inst.n + 1):
                assert abs(np.trace(group[alpha])) <= 1e-12

    def test_commutators_drop_identity_part(self):
        inst = wg.random_instance(n=3, seed=4, index=1)
        ops = lg.shape_operators(inst)
        for r in range(3):
            for s in range(3):
                lhs = ops.S[r] @ ops.S[s] - ops.S[s] @ ops.S[r]
                rhs = ops.A[r] @ ops.A[s] - ops.A[s] @ ops.A[r]
                npt.assert_allclose(lhs, rhs, atol=1e-12)

    def test_zero_instance(self):
        ops = lg.shape_operators(lg.umbilic_instance(n=2, f_prime=0.0))
        npt.assert_array_equal(ops.A, np.zeros((3, 2, 2)))


class TestGaussSectional:
    def test_umbilic_vanishes(self):
        inst = lg.umbilic_instance(n=2)
        assert lg.gauss_sectional(inst, 0, 1, "nabla") == 0.0
        assert lg.gauss_sectional(inst, 0, 1, "nabla_star") == 0.0

    def test_zero_instance(self):
        inst = lg.umbilic_instance(n=3, c=0.0, f_prime=0.0)
        assert lg.gauss_sectional(inst, 0, 2) == 0.0

    def test_space_form_term_only(self):
        inst = lg.umbilic_instance(n=2, c=4.0, f_val=1.0, f_prime=0.0)
        assert lg.gauss_sectional(inst, 0, 1) == 1.0

    def test_rejects_equal_indices(self):
        with pytest.raises(ValueError):
            lg.gauss_sectional(lg.umbilic_instance(), 1, 1)


class TestRhoTwoPaths:
    def test_umbilic_rho_zero(self):
        a, b = lg.rho_statistical_paths(lg.umbilic_instance())
        assert a == 0.0 and abs(b) <= 1e-15

    def test_random_agreement(self):
        for i in range(2000):
            inst = wg.random_instance(n=2 + i % 4, seed=99, index=i)
            a, b = lg.rho_statistical_paths(inst)
            assert abs(a - b) <= 1e-10
            a, b = lg.rho_perp_statistical_paths(inst)
            assert abs(a - b) <= 1e-10

    def test_rho_perp_nonnegative(self):
        for i in range(200):
            inst = wg.random_instance(n=2 + i % 4, seed=17, index=i)
            assert lg.rho_perp_statistical(inst) >= 0.0

    def test_xi_pairs_contribute_exact_zero(self):
        for i in range(100):
            inst = wg.random_instance(n=3, seed=29, index=i)
            ops = lg.shape_operators(inst)
            n = inst.n
            for r in range(n):
                for i_ in range(n):
                    for j_ in range(i_ + 1, n):
                        assert lg.normal_curvature_entry(inst, ops, r, n, i_, j_) == 0.0

    def test_zero_phi_slices_kill_commutators(self):
        for i in range(20):
            base = wg.random_instance(n=3, seed=41, index=i)
            h = base.h.copy()
            hs = base.h_star.copy()
            h[:3] = 0.0
            hs[:3] = 0.0
            inst = lg.LegendrianPointInstance(
                n=3, c=base.c, f_val=base.f_val, f_prime=base.f_prime, h=h, h_star=hs
            )
            ops = lg.shape_operators(inst)
            n = inst.n
            cterm = 2.0 * inst.c / (4.0 * inst.f_val**2)
            for r in range(n):
                for s in range(r + 1, n):
                    for i_ in range(n):
                        for j_ in range(i_ + 1, n):
                            entry = lg.normal_curvature_entry(inst, ops, r, s, i_, j_)
                            expected = -cterm if (i_ == r and j_ == s) else 0.0
                            assert entry == expected

    def test_worked_zero_slice_example(self):
        # n=2, c=4, f=1, zero phi-slices: single pair bracket -2, rho_perp = 1
        inst = lg.umbilic_instance(n=2, c=4.0, f_val=1.0, f_prime=0.0)
        assert lg.rho_perp_statistical(inst) == 1.0
        assert lg.rho_statistical(inst) == 1.0

    def test_mismatch_raises(self):
        # find an instance whose two paths differ by at least a few ulps, then
        # shrink the tolerance below that difference
        for i in range(100):
            inst = wg.random_instance(n=3, seed=1, index=i)
            a, b = lg.rho_statistical_paths(inst)
            if a != b:
                with pytest.raises(lg.TwoPathMismatch):
                    lg.rho_statistical(inst, tol=abs(a - b) / 2.0)
                return
        pytest.skip("paths agreed exactly on every probe instance")


class TestRhoLeviCivita:
    def test_umbilic(self):
        assert lg.rho_levicivita(lg.umbilic_instance()) == 0.0

    def test_zero(self):
        assert lg.rho_levicivita(lg.umbilic_instance(n=2, c=0.0, f_prime=0.0)) == 0.0

    def test_space_form_only(self):
        assert lg.rho_levicivita(lg.umbilic_instance(n=2, c=4.0, f_val=1.0, f_prime=0.0)) == 1.0


def test_curvature_scalars_bundle():
    inst = wg.random_instance(n=3, seed=2, index=5)
    s = lg.curvature_scalars(inst)
    assert s.rho_perp >= 0.0
    assert s.norm_tau_sq >= 0.0
    m = lg.means_and_traceless(inst)
    assert s.norm_H_sq == m.norm_H_sq
