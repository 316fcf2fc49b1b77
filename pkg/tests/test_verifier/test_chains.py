"""
Tests for the estimate chains and the ensemble verification.
"""

from dataclasses import replace

import numpy as np
import pytest

from domains.core.errors import ConstantUnavailableError
from domains.exponents.ledger import params_from_epsilon
from domains.exponents.schemas import SerrinCondition
from domains.functionals.analytic import swirl_diffusion_state
from domains.functionals.functionals import eta_profile
from domains.grid.fields import ScalarField2D
from domains.operators.operators import build_state
from domains.verifier import (
    combine_I1_I3,
    estimate_aq_constant,
    verify_ensemble,
    verify_I1_chain,
    verify_I2_chain,
    verify_I3_chain,
    verify_sobolev_step,
)
from domains.verifier.chains import aq_ratio, make_report
from domains.verifier.ensemble import DEFAULT_GRID, ensemble

EPS = dict(eps1=0.1, eps2=0.1, eps3=0.1)


class TestI3Chain:

    @pytest.mark.slow
    def test_explicit_chain_holds_on_ensemble(self, family_params):
        reports = [verify_I3_chain(s, family_params, **EPS) for s in ensemble(100, seed=11)]
        assert all(r.explicit_only for r in reports)
        assert [r for r in reports if not r.passed] == []

    def test_constants_are_recorded(self, family_params):
        state = next(ensemble(1, seed=3))
        report = verify_I3_chain(state, family_params, **EPS)
        labels = {c.label: c for c in report.constants_used}
        assert labels["||r u_theta||_inf"].provenance == "measured"
        assert labels["C_I3"].value > 0.0
        assert report.margin == pytest.approx(report.rhs - report.lhs)

    def test_small_eps_inflates_constant(self, family_params):
        state = next(ensemble(1, seed=3))
        loose = verify_I3_chain(state, family_params, 0.5, 0.5, 0.5)
        tight = verify_I3_chain(state, family_params, 0.01, 0.01, 0.01)
        def constant(report):
            return {c.label: c.value for c in report.constants_used}["C_I3"]

        assert constant(tight) > constant(loose)


class TestAqConstant:

    def test_degenerate_members_are_skipped(self, family_params):
        p = family_params
        states = list(ensemble(3, seed=5)) + [swirl_diffusion_state(DEFAULT_GRID, 0.0, 1.0)]
        estimate = estimate_aq_constant(p.q, p.alpha, p.eps0, 4, states=states)
        assert estimate.n_used == 3
        assert estimate.n_skipped == 1
        assert estimate.constant >= estimate.constant_first_half > 0.0

    def test_all_degenerate_members(self, family_params):
        p = family_params
        with pytest.raises(ConstantUnavailableError):
            estimate_aq_constant(p.q, p.alpha, p.eps0, 1, states=[swirl_diffusion_state(DEFAULT_GRID, 0.0, 1.0)])

    def test_window_failure(self, family_params):
        p = family_params
        with pytest.raises(ConstantUnavailableError):
            estimate_aq_constant(p.q, p.eps0 + 0.5, p.eps0, 2)

    def test_radial_flow_without_vorticity(self, family_params, small_grid):
        rr, _ = small_grid.mesh()
        zeros = ScalarField2D.zeros(small_grid)
        state = build_state(0.0, ScalarField2D(small_grid, rr * np.exp(-rr ** 2)), zeros, zeros, zeros)
        with pytest.raises(ConstantUnavailableError):
            aq_ratio(state, family_params.q, family_params.alpha, family_params.eps0)

    def test_rounding_level_vorticity_counts_as_zero(self, family_params, small_grid, rng):
        rr, zz = small_grid.mesh()
        zeros = ScalarField2D.zeros(small_grid)
        state = build_state(0.0, ScalarField2D(small_grid, rr * np.exp(-rr ** 2 - zz ** 2)), zeros, zeros, zeros)
        noise = 1e-17 * rr * rng.standard_normal(small_grid.shape)
        state = replace(state, omega_theta=ScalarField2D(small_grid, noise))
        with pytest.raises(ConstantUnavailableError):
            aq_ratio(state, family_params.q, family_params.alpha, family_params.eps0)

    def test_ratio_of_a_regular_member(self, family_params):
        p = family_params
        ratio = aq_ratio(next(ensemble(1, seed=5)), p.q, p.alpha, p.eps0)
        assert 0.0 < ratio < 1e3

    @pytest.mark.slow
    def test_sup_is_stable_under_doubling(self, family_params):
        p = family_params
        small = estimate_aq_constant(p.q, p.alpha, p.eps0, 100, seed=21)
        large = estimate_aq_constant(p.q, p.alpha, p.eps0, 200, seed=21)
        assert large.constant >= small.constant
        assert large.constant <= 1.1 * small.constant


class TestI1AndI2Chains:

    def test_missing_constant_is_inconclusive(self, family_params):
        report = verify_I1_chain(next(ensemble(1, seed=2)), family_params, None, 0.1, 0.1, aq_constant=None)
        assert report.inconclusive
        assert not report.passed

    def test_b_window_failure_is_inconclusive(self):
        params = params_from_epsilon(0.05, 0.05)
        report = verify_I1_chain(next(ensemble(1, seed=2)), params, None, 0.1, 0.1, aq_constant=1.0)
        assert report.inconclusive
        assert "b =" in report.note

    def test_i1_constant_is_empirical(self, family_params):
        report = verify_I1_chain(next(ensemble(1, seed=2)), family_params, None, 0.1, 0.1, aq_constant=1.0)
        assert not report.explicit_only
        assert {c.label for c in report.constants_used} >= {"C_aq", "varpi", "C_I1"}

    def test_inward_flow_has_trivial_i2(self, family_params, serrin, small_grid):
        rr, zz = small_grid.mesh()
        u_r = -rr * np.exp(-rr ** 2 - zz ** 2)
        zeros = ScalarField2D.zeros(small_grid)
        state = build_state(0.0, ScalarField2D(small_grid, u_r), zeros, zeros, zeros)
        report = verify_I2_chain(state, serrin, family_params.q, family_params.alpha, 0.1, 0.1)
        assert report.lhs <= 1e-12 * report.rhs
        assert report.passed

    def test_outflow_away_from_the_axis_has_no_near_branch(self, family_params, serrin, small_grid):
        rr, zz = small_grid.mesh()
        # u_r > 0 only for r > 0.8, outside the support of eta
        u_r = rr * (rr ** 2 - 0.64) * np.exp(-rr ** 2 - zz ** 2)
        zeros = ScalarField2D.zeros(small_grid)
        state = build_state(0.0, ScalarField2D(small_grid, u_r), zeros, zeros, zeros)
        report = verify_I2_chain(state, serrin, family_params.q, family_params.alpha, 0.1, 0.1)
        near, far = report.branches
        assert (near.name, far.name) == ("I2,0", "I2,1")
        assert far.lhs > 0.0
        assert near.lhs <= 1e-12 * far.lhs
        assert report.lhs == pytest.approx(near.lhs + far.lhs)
        assert report.rhs == pytest.approx(near.rhs + far.rhs)
        assert report.passed

    def test_branches_on_ensemble_member(self, family_params, serrin):
        report = verify_I2_chain(next(ensemble(1, seed=2)), serrin, family_params.q, family_params.alpha, 0.1, 0.1)
        assert [b.name for b in report.branches] == ["I2,0", "I2,1"]
        assert all(b.passed for b in report.branches)
        assert report.passed

    def test_failing_branch_fails_the_total(self):
        report = make_report("I2", 1.0, 5.0, branches=[make_report("I2,0", 2.0, 1.0), make_report("I2,1", 0.0, 4.0)])
        assert report.margin > 0.0
        assert not report.passed

    def test_inconsistent_serrin_is_inconclusive(self, family_params):
        bad = SerrinCondition(s=6.0, w=4.0, d=0.5, delta1=0.5)
        report = verify_I2_chain(next(ensemble(1, seed=2)), bad, family_params.q, family_params.alpha, 0.1, 0.1)
        assert report.inconclusive

    def test_combined_report(self):
        a = make_report("I1", 1.0, 2.0)
        b = make_report("I3", 0.5, 0.25)
        combined = combine_I1_I3(a, b)
        assert combined.name == "I1+I3"
        assert combined.lhs == 1.5
        assert combined.rhs == 2.25
        assert combined.passed


class TestSobolevStep:

    def test_gaussian_ratio(self, fine_grid):
        rr, zz = fine_grid.mesh()
        report = verify_sobolev_step(ScalarField2D(fine_grid, np.exp(-rr ** 2 - zz ** 2)))
        assert report.passed
        assert 0.64 < report.lhs / report.rhs < 0.70

    @pytest.mark.slow
    def test_truncated_extremal_is_closer_to_sharp(self, fine_grid):
        grid = fine_grid.refined(2)
        rr, zz = grid.mesh()
        rho = np.sqrt(rr ** 2 + zz ** 2)
        talenti = eta_profile(rho, 5.5) / np.sqrt(0.3 ** 2 + rho ** 2)
        gaussian = verify_sobolev_step(ScalarField2D(grid, np.exp(-rho ** 2)))
        report = verify_sobolev_step(ScalarField2D(grid, talenti))
        assert report.passed
        assert report.lhs / report.rhs > gaussian.lhs / gaussian.rhs + 0.05


class TestEnsemble:

    def test_held_out_reports(self, family_params, serrin):
        reports = verify_ensemble(family_params, serrin, 20, seed=5)
        assert len(reports) == 6 * 20
        names = {r.name for r in reports}
        assert names == {"holder", "I3", "I1", "I1+I3", "I2", "sobolev"}
        assert all(not r.inconclusive for r in reports)
        failed = [(r.name, r.lhs, r.rhs) for r in reports if not r.passed]
        assert failed == []

    def test_same_seed_same_reports(self, family_params, serrin):
        a = verify_ensemble(family_params, serrin, 2, seed=9)
        b = verify_ensemble(family_params, serrin, 2, seed=9)
        assert [r.model_dump() for r in a] == [r.model_dump() for r in b]

    def test_uncalibrated_run_marks_i1_inconclusive(self, serrin):
        params = params_from_epsilon(0.05, 0.2).model_copy(update={"alpha": 0.5})
        reports = verify_ensemble(params, serrin, 1, seed=5)
        i1 = [r for r in reports if r.name == "I1"]
        assert i1 and all(r.inconclusive for r in i1)
        assert any(r.name == "holder" and r.passed for r in reports)
