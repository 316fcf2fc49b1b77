"""
Tests for the weighted functionals and the energy identities.
"""

import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from domains.exponents.schemas import SerrinCondition, WeightExponents
from domains.functionals import (
    FunctionalSet,
    assemble_main,
    eval_al_ratio,
    eval_f_serrin,
    eval_functionals,
    eval_g,
    eval_I1,
    eval_I2,
    eval_identity_d_terms,
    eval_identity_i_terms,
    identity_d_terms,
    identity_i_terms,
    smooth_cutoff,
)
from domains.functionals.analytic import swirl_diffusion_state
from domains.functionals.functionals import (
    ETA_DERIVATIVE_BOUND,
    eta_derivative,
    eta_profile,
    eval_phi_p,
    gradient_energy,
)
from domains.grid.fields import ScalarField2D
from domains.grid.quadrature import StateQuadrature
from domains.grid.schemas import CylGrid
from domains.operators.operators import build_state
from domains.solver.initial_data import recipe_fields
from domains.solver.schemas import InitialData
from domains.verifier.chains import i3_gradient_bound, i3_gradient_term

QUADRATIC = WeightExponents(p=2.0, mu=0.0, q=2.0, alpha=0.0)


def _state(grid, u_r=None, u_theta=None, u_z=None):
    rr, zz = grid.mesh()

    def field(fn):
        return ScalarField2D.zeros(grid) if fn is None else ScalarField2D(grid, fn(rr, zz))

    return build_state(0.0, field(u_r), field(u_theta), field(u_z), ScalarField2D.zeros(grid))


def _recipe_state(grid, init):
    raw = recipe_fields(grid, init)
    return build_state(0.0, *(ScalarField2D(grid, raw[k]) for k in ("u_r", "u_theta", "u_z", "pressure")))


class TestValues:

    def test_rest_state_is_all_zero(self, small_grid, family_params, serrin):
        fs = eval_functionals(_recipe_state(small_grid, InitialData(recipe="rest")), family_params, serrin)
        assert all(v == 0.0 for k, v in fs.model_dump().items() if k != "t")

    def test_inward_flow_has_no_positive_part_terms(self, small_grid, family_params, serrin):
        state = _recipe_state(small_grid, InitialData(recipe="inward_radial", swirl_amplitude=1.0))
        fs = eval_functionals(state, family_params, serrin)
        assert fs.I1 > 0.0
        assert fs.J2minus > 0.0
        assert fs.I2 <= 1e-12 * fs.J2minus
        assert fs.J1plus <= 1e-12 * fs.I1
        assert fs.f_serrin <= 1e-30
        assert fs.g_ur <= 1e-30

    def test_pure_swirl_has_no_transport_terms(self, small_grid, family_params, serrin):
        fs = eval_functionals(_recipe_state(small_grid, InitialData(recipe="pure_swirl")), family_params, serrin)
        assert fs.I1 == fs.I2 == fs.J1plus == fs.J2minus == 0.0
        assert fs.omega_q == 0.0
        assert fs.phi_p > 0.0

    def test_phi_p_against_dblquad(self, fine_grid):
        ex = WeightExponents(p=2.5, mu=0.5, q=2.0, alpha=0.0)
        state = _state(fine_grid, u_theta=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        expected, _ = dblquad(
            lambda z, r: 2.0 * math.pi * r ** 2.25 * math.exp(-2.5 * (r ** 2 + z ** 2)),
            0.0, fine_grid.r_max, -fine_grid.z_half, fine_grid.z_half,
        )
        assert eval_phi_p(state, ex) == pytest.approx(expected, rel=1e-3)

    def test_serrin_functional_on_the_disc(self, serrin):
        grid = CylGrid(r_max=2.0, z_half=4.0, n_r=401, n_z=160)
        state = _state(grid, u_r=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        inner, _ = dblquad(
            lambda z, r: 2.0 * math.pi * r * (r * math.exp(-r ** 2 - z ** 2)) ** 6,
            0.0, serrin.delta1, -grid.z_half, grid.z_half,
        )
        assert eval_f_serrin(state, serrin) == pytest.approx(inner ** (serrin.w / serrin.s), rel=5e-3)

    def test_radial_weight_shifts_the_serrin_functional(self, fine_grid):
        state = _state(fine_grid, u_r=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        weighted = eval_f_serrin(state, SerrinCondition(s=10.0, w=4.0, d=0.2, delta1=0.5))
        plain = eval_f_serrin(state, SerrinCondition(s=10.0, w=4.0, d=0.0, delta1=0.5))
        # r^d < 1 on the disc
        assert 0.0 < weighted < plain

    def test_al_ratio(self, small_grid):
        rest = _recipe_state(small_grid, InitialData(recipe="rest"))
        assert math.isnan(eval_al_ratio(rest, 2.0, 0.0))
        ring = _recipe_state(small_grid, InitialData(recipe="ring_swirl"))
        assert 0.0 < eval_al_ratio(ring, 2.0, 0.0) < math.inf

    def test_i3_gradient_term_is_dominated(self, fine_grid, family_params):
        state = _state(fine_grid, u_theta=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        assert i3_gradient_term(state, family_params) <= i3_gradient_bound(state, family_params) * (1 + 1e-12)

    def test_gradient_energy_of_nonnegative_swirl(self, fine_grid):
        state = _state(fine_grid, u_theta=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        # |grad u|^2 = (1 - 2r^2)^2 E^2 + 4 r^2 z^2 E^2, E = exp(-r^2 - z^2)
        expected, _ = dblquad(
            lambda z, r: 2.0 * math.pi * r * ((1 - 2 * r ** 2) ** 2 + 4 * r ** 2 * z ** 2)
            * math.exp(-2 * (r ** 2 + z ** 2)),
            0.0, fine_grid.r_max, -fine_grid.z_half, fine_grid.z_half,
        )
        assert gradient_energy(StateQuadrature(state), "u_theta", 0.0, 2.0) == pytest.approx(expected, rel=1e-2)

    def test_i1_against_dblquad(self, fine_grid):
        gauss = lambda r, z: r * np.exp(-r ** 2 - z ** 2)  # noqa: E731
        state = _state(fine_grid, u_r=lambda r, z: -gauss(r, z), u_theta=gauss)
        # (u_r^- / r) u_theta^2 = r^2 E^3
        expected, _ = dblquad(
            lambda z, r: 2.0 * math.pi * r ** 3 * math.exp(-3.0 * (r ** 2 + z ** 2)),
            0.0, fine_grid.r_max, -fine_grid.z_half, fine_grid.z_half,
        )
        assert eval_I1(state, QUADRATIC) == pytest.approx(expected, rel=1e-3)
        assert eval_I2(state, QUADRATIC) <= 1e-12 * expected

    def test_outward_flow_moves_to_i2(self, fine_grid):
        gauss = lambda r, z: r * np.exp(-r ** 2 - z ** 2)  # noqa: E731
        state = _state(fine_grid, u_r=gauss, u_theta=gauss)
        i2 = eval_I2(state, QUADRATIC)
        assert i2 > 0.0
        assert eval_I1(state, QUADRATIC) <= 1e-12 * i2

    def test_g_against_dblquad(self, fine_grid):
        state = _state(fine_grid, u_r=lambda r, z: r * np.exp(-r ** 2 - z ** 2))
        expected, _ = dblquad(
            lambda z, r: 2.0 * math.pi * r * (r * math.exp(-r ** 2 - z ** 2)) ** (10.0 / 3.0),
            0.0, fine_grid.r_max, -fine_grid.z_half, fine_grid.z_half,
        )
        assert eval_g(state) == pytest.approx(expected, rel=1e-3)


class TestCutoff:

    def test_profile_values(self):
        delta1 = 0.5
        r = np.linspace(0.0, 1.0, 401)
        eta = eta_profile(r, delta1)
        assert np.all(eta[r <= delta1 / 2] == 1.0)
        assert np.all(eta[r >= delta1] == 0.0)
        assert np.all(np.diff(eta) <= 0.0)

    def test_derivative_bound(self):
        delta1 = 0.5
        r = np.linspace(0.0, 1.0, 4001)
        slope = np.abs(eta_derivative(r, delta1))
        assert slope.max() <= ETA_DERIVATIVE_BOUND / delta1 * (1 + 1e-12)
        assert slope.max() == pytest.approx(ETA_DERIVATIVE_BOUND / delta1, rel=1e-3)
        np.testing.assert_allclose(np.gradient(eta_profile(r, delta1), r), eta_derivative(r, delta1), atol=1e-3)

    def test_cutoff_field(self, small_grid):
        eta = smooth_cutoff(small_grid, 1.0)
        assert np.all(eta.values[0, :] == 1.0)
        with pytest.raises(ValueError):
            smooth_cutoff(small_grid, 0.0)


class TestIdentities:

    def test_main_balance_is_sum_of_identities(self, rng, family_params):
        names = [n for n in FunctionalSet.model_fields if n != "t"]
        fs0 = FunctionalSet(t=0.0, **{n: float(v) for n, v in zip(names, rng.uniform(0, 3, len(names)))})
        fs1 = FunctionalSet(t=0.01, **{n: float(v) for n, v in zip(names, rng.uniform(0, 3, len(names)))})
        d = identity_d_terms(fs0, fs1, family_params, 0.7)
        i = identity_i_terms(fs0, fs1, family_params, 0.7)
        main = assemble_main(fs0, fs1, family_params, 0.7)
        scale = abs(d.lhs) + abs(i.lhs)
        assert abs(main.lhs - (d.lhs + i.lhs)) <= 1e-12 * scale
        assert abs(main.rhs - (d.rhs + i.rhs)) <= 1e-12 * (abs(d.rhs) + abs(i.rhs))

    def test_swirl_diffusion_balances_swirl_identity(self):
        grid = CylGrid(r_max=10.0, z_half=10.0, n_r=81, n_z=160)
        nu, dt = 1.0, 1e-3
        prev = swirl_diffusion_state(grid, 0.0, nu)
        nxt = swirl_diffusion_state(grid, dt, nu)
        d = eval_identity_d_terms(prev, nxt, QUADRATIC, nu)
        assert d.rate < 0.0
        assert d.rhs == 0.0
        assert abs(d.residual) <= 2e-2 * abs(d.rate)

    def test_vorticity_identity_vanishes_for_pure_swirl(self, small_grid):
        prev = swirl_diffusion_state(small_grid, 0.0, 1.0)
        nxt = swirl_diffusion_state(small_grid, 0.01, 1.0)
        i = eval_identity_i_terms(prev, nxt, QUADRATIC, 1.0)
        assert i.lhs == 0.0
        assert i.rhs == 0.0
