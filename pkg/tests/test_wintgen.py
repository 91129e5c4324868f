import numpy as np
import numpy.testing as npt
import pytest

import statwintgen.legendrian as lg
import statwintgen.wintgen as wg
from statwintgen.tensor_core import random_symmetric_traceless


class TestLuInequality:
    def test_single_matrix(self):
        b = np.array([[1.0, 0.5], [0.5, -1.0]])
        res = wg.lu_inequality([b])
        assert res.lhs == 0.0
        assert res.rhs == (2.0 + 2 * 0.25) ** 2  # ||B||^4
        assert res.holds

    def test_equality_pair(self):
        mats = [np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])]
        res = wg.lu_inequality(mats)
        assert res.lhs == 16.0
        assert res.rhs == 16.0
        assert res.holds
        assert res.gap == 0.0

    def test_halved_variant(self):
        mats = [np.diag([1.0, -1.0]), np.array([[0.0, 1.0], [1.0, 0.0]])]
        res = wg.lu_inequality(mats, ordered_pairs=False)
        assert res.lhs == 8.0

    def test_random_sets_hold(self):
        rng = np.random.default_rng(55)
        for trial in range(500):
            dim = int(rng.integers(1, 7))
            count = int(rng.integers(1, 6))
            mats = random_symmetric_traceless(dim, count, seed=trial)
            assert wg.lu_inequality(mats).holds

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            wg.lu_inequality([np.array([[0.0, 1.0], [0.0, 0.0]])])

    def test_rejects_trace(self):
        with pytest.raises(ValueError):
            wg.lu_inequality([np.eye(2)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            wg.lu_inequality([])


class TestMainInequality:
    def test_umbilic_exact_values(self):
        rep = wg.main_inequality(lg.umbilic_instance())
        assert rep.lhs == 0.0
        assert abs(rep.rhs - 7.0) <= 1e-12
        assert abs(rep.slack - 7.0) <= 1e-12
        assert rep.holds
        assert abs(sum(rep.rhs_terms.values()) - rep.rhs) == 0.0

    def test_degenerate_zero_instance(self):
        rep = wg.main_inequality(lg.umbilic_instance(n=2, c=0.0, f_val=1.0, f_prime=0.0))
        assert rep.lhs == 0.0
        assert rep.rhs == 0.0
        assert rep.slack == 0.0
        assert rep.holds

    def test_printed_constant_value(self):
        assert wg.curvature_constant(0.0, 1.0, 1.0) == 1.0
        assert wg.curvature_constant(4.0, 1.0, 0.0) == 1.0
        assert wg.curvature_constant(-4.0, 1.0, 0.0) == 3.0

    def test_known_violation_of_printed_constant(self):
        """The totally geodesic cosymplectic instance with c > 0 breaks the
        stated bound while every earlier chain step and the rederived
        constant still hold; the gap is exactly 7 (c/4f^2 - (f'/f)^2)."""
        inst = lg.umbilic_instance(n=2, c=4.0, f_val=1.0, f_prime=0.0)
        rep = wg.main_inequality(inst)
        assert rep.lhs == 1.0
        assert rep.rhs == -5.0
        assert not rep.holds
        by_name = {s.step: s for s in rep.chain}
        for name in ("cauchy_schwarz", "s_operator_bound", "lu_bound", "substitution_bound"):
            assert by_name[name].holds, name
        assert not by_name["final_bound"].holds
        assert by_name["final_bound_rederived"].holds

    def test_constant_discrepancy_is_seven_d(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            c = rng.uniform(-4, 4)
            f = rng.uniform(0.5, 3)
            fp = rng.uniform(-2, 2)
            d = c / (4 * f * f) - (fp / f) ** 2
            printed = wg.curvature_constant(c, f, fp)
            rederived = wg.rederived_curvature_constant(c, f, fp)
            assert abs((printed - rederived) + 7.0 * d) <= 1e-12 * max(1.0, abs(d))

    def test_invalid_instance_rejected(self):
        inst = lg.umbilic_instance(n=2)
        h = inst.h.copy()
        h[2, 0, 1] = h[2, 1, 0] = 1.0
        bad = lg.LegendrianPointInstance(n=2, c=0.0, f_val=1.0, f_prime=1.0, h=h, h_star=inst.h_star)
        with pytest.raises(ValueError):
            wg.main_inequality(bad)


class TestChain:
    def test_umbilic_lu_step_equality(self):
        chain = {s.step: s for s in wg.inequality_chain(lg.umbilic_instance())}
        assert chain["lu_bound"].lhs == 0.0
        assert chain["lu_bound"].rhs == 0.0
        assert chain["lu_bound"].holds

    def test_cauchy_schwarz_scalar_equality(self):
        # (l+m+n+w)^2 = 4(l^2+...) exactly at equal arguments
        for x in (0.3, -1.7, 2.0):
            assert (4 * x) ** 2 == 4 * (4 * x * x)

    def test_substitution_equals_lu_bound(self):
        # steps 3 and 4 are algebraic rewrites of one another
        for i in range(200):
            inst = wg.random_instance(n=2 + i % 4, seed=77, index=i)
            chain = {s.step: s for s in wg.inequality_chain(inst)}
            assert abs(chain["lu_bound"].rhs - chain["substitution_bound"].rhs) <= 1e-9 * max(
                1.0, abs(chain["lu_bound"].rhs)
            )

    def test_rederived_final_equals_substitution(self):
        # the rederived constant makes step 6 an exact rewrite of step 4
        for i in range(200):
            inst = wg.random_instance(n=2 + i % 4, seed=78, index=i)
            chain = {s.step: s for s in wg.inequality_chain(inst)}
            a = chain["substitution_bound"].rhs
            b = chain["final_bound_rederived"].rhs
            assert abs(a - b) <= 1e-9 * max(1.0, abs(a))

    def test_early_steps_and_rederived_hold_on_sweep(self):
        for i in range(1000):
            inst = wg.random_instance(n=2 + i % 4, seed=13, index=i)
            for step in wg.inequality_chain(inst):
                if step.step != "final_bound":
                    assert step.holds, (i, step.step)

    def test_chain_ordering_monotone_through_step_two(self):
        # B1 <= B2 holds on the sweep domain f >= 1/2
        for i in range(300):
            inst = wg.random_instance(n=2 + i % 4, seed=21, index=i)
            chain = {s.step: s for s in wg.inequality_chain(inst)}
            assert chain["cauchy_schwarz"].rhs <= chain["s_operator_bound"].rhs + 1e-9


class TestCorollaries:
    def test_kenmotsu_matches_main(self):
        inst = lg.umbilic_instance(n=2, c=0.0, f_val=1.0, f_prime=1.0)
        rep = wg.corollary_reports(inst, "kenmotsu")
        assert abs(rep.rhs - 7.0) <= 1e-12
        assert rep.rhs_terms["curvature_constant"] == 1.0

    def test_cosymplectic_constants(self):
        assert wg.corollary_constant("cosymplectic", 4.0) == 1.0
        assert wg.corollary_constant("cosymplectic", -4.0) == 3.0

    def test_cosymplectic_matches_main(self):
        for i, c in enumerate((4.0, -4.0, 1.3)):
            base = wg.random_instance(n=3, seed=2, index=i, f_range=(1.0, 1.0), fprime_range=(0.0, 0.0))
            inst = lg.LegendrianPointInstance(
                n=3, c=c, f_val=1.0, f_prime=0.0, h=base.h, h_star=base.h_star
            )
            rep = wg.corollary_reports(inst, "cosymplectic")
            main = wg.main_inequality(inst, include_chain=False)
            assert abs(rep.rhs - main.rhs) <= 1e-12

    def test_parameter_gate(self):
        inst = lg.umbilic_instance(n=2, c=1.0, f_val=1.0, f_prime=1.0)
        with pytest.raises(ValueError):
            wg.corollary_reports(inst, "kenmotsu")
        with pytest.raises(ValueError):
            wg.corollary_reports(lg.umbilic_instance(), "cosymplectic")
        with pytest.raises(ValueError):
            wg.corollary_reports(lg.umbilic_instance(), "sasakian")


class TestRandomInstance:
    def test_zero_magnitude_is_umbilic_type(self):
        inst = wg.random_instance(n=3, magnitude=0.0, seed=1, index=0)
        npt.assert_array_equal(inst.h[:3], np.zeros((3, 3, 3)))
        npt.assert_allclose(inst.h[3], -(inst.f_prime / inst.f_val) * np.eye(3), atol=0)

    def test_output_validates(self):
        for i in range(100):
            inst = wg.random_instance(n=2 + i % 4, seed=10, index=i)
            assert lg.validate(inst) == []

    def test_deterministic(self):
        a = wg.random_instance(n=4, seed=42, index=7)
        b = wg.random_instance(n=4, seed=42, index=7)
        assert a.to_json() == b.to_json()

    def test_distinct_indices_differ(self):
        a = wg.random_instance(n=2, seed=42, index=0)
        b = wg.random_instance(n=2, seed=42, index=1)
        assert a.to_json() != b.to_json()

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            wg.random_instance(n=1, seed=0)
        with pytest.raises(ValueError):
            wg.random_instance(n=2, f_range=(0.0, 1.0), seed=0)


class TestSweep:
    def test_reports_deterministic(self):
        a = wg.sweep(n=3, count=20, seed=5)
        b = wg.sweep(n=3, count=20, seed=5)
        for ra, rb in zip(a, b):
            assert ra.as_dict() == rb.as_dict()

    def test_rederived_bound_holds(self):
        reports = wg.sweep(n=2, count=500, seed=3, include_chain=True)
        for rep in reports:
            by_name = {s.step: s for s in rep.chain}
            assert by_name["final_bound_rederived"].holds


class TestSharpness:
    def test_zero_family_converges_to_zero(self):
        res = wg.sharpness_search(n=2, c=0.0, f=1.0, fprime=0.0, iterations=3000, seed=5)
        assert res.min_slack < 1e-6
        assert res.min_slack >= -1e-9
        assert not res.hard_violation

    def test_trace_monotone(self):
        res = wg.sharpness_search(n=2, c=0.0, f=1.0, fprime=0.0, iterations=1500, seed=9)
        assert all(b <= a for a, b in zip(res.trace, res.trace[1:]))

    def test_umbilic_family_bounded_below(self):
        # with c = 0 the stated constant exceeds the rederived one by
        # 7 (f'/f)^2 = 7, so the slack cannot drop below 7 on this family
        res = wg.sharpness_search(n=2, c=0.0, f=1.0, fprime=1.0, iterations=4000, seed=2)
        assert res.min_slack >= 7.0 - 1e-9
        assert not res.hard_violation

    def test_positive_c_family_finds_hard_violation(self):
        res = wg.sharpness_search(n=2, c=4.0, f=1.0, fprime=0.0, iterations=2000, seed=4)
        assert res.min_slack < -1e-9
        assert res.hard_violation

    def test_requires_budget(self):
        with pytest.raises(ValueError):
            wg.sharpness_search(n=2, c=0.0, f=1.0, fprime=0.0, iterations=0, seed=0)
