"""
Tests for projection, time stepping and the vorticity residual.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from domains.core.errors import CFLViolationError, GridMismatchError
from domains.functionals.analytic import swirl_diffusion_state
from domains.functionals.functionals import eval_identity_d_terms, eval_omega_q, eval_phi_p, weighted_integral
from domains.grid.checkpoint import write_checkpoint
from domains.grid.fields import ScalarField2D
from domains.grid.quadrature import StateQuadrature
from domains.grid.schemas import CylGrid
from domains.monitor.monitor import IDENTITY_RTOL
from domains.operators.operators import build_state
from domains.solver import (
    InitialData,
    ManufacturedSolution,
    PressureProjector,
    SolverConfig,
    interior_divergence,
    kinetic_energy,
    make_initial_state,
    step,
    vorticity_residual,
)
from domains.solver.solver import tendencies


@pytest.fixture
def cfg():
    return SolverConfig(nu=1.0, dt=0.005, t_end=0.05)


def _exact_state(grid, ms, t):
    f = ms.fields(t)
    return build_state(t, *(ScalarField2D(grid, f[k]) for k in ("u_r", "u_theta", "u_z", "pressure")))


class TestProjection:

    def test_odd_axial_node_count_is_rejected(self):
        with pytest.raises(GridMismatchError):
            PressureProjector(CylGrid(r_max=2.0, z_half=2.0, n_r=9, n_z=33), 1e-10)

    def test_divergence_below_tolerance_after_step(self, small_grid, cfg):
        state = make_initial_state(small_grid, InitialData(recipe="ring_swirl", swirl_amplitude=0.5), cfg)
        assert interior_divergence(small_grid, state.u_r.values, state.u_z.values) <= cfg.projection_tol
        nxt = step(state, cfg)
        assert interior_divergence(small_grid, nxt.u_r.values, nxt.u_z.values) <= cfg.projection_tol
        assert nxt.axis_violation() == 0.0


class TestStep:

    def test_rest_state_is_fixed(self, small_grid, cfg):
        state = make_initial_state(small_grid, InitialData(recipe="rest"), cfg)
        nxt = step(step(state, cfg), cfg)
        for name in ("u_r", "u_theta", "u_z", "pressure", "omega_theta"):
            assert np.all(getattr(nxt, name).values == 0.0)
        assert nxt.t == pytest.approx(2 * cfg.dt)

    def test_cfl_violation_suggests_smaller_step(self, small_grid):
        cfg = SolverConfig(nu=1.0, dt=0.5, t_end=1.0)
        state = make_initial_state(small_grid, InitialData(recipe="ring_swirl", amplitude=5.0), cfg)
        with pytest.raises(CFLViolationError) as err:
            step(state, cfg)
        assert err.value.cfl > cfg.cfl_safety
        assert 0.0 < err.value.suggested_dt < cfg.dt

    def test_kinetic_energy_decays_for_swirl(self, small_grid, cfg):
        state = make_initial_state(small_grid, InitialData(recipe="pure_swirl"), cfg)
        energies = [kinetic_energy(state)]
        for _ in range(5):
            state = step(state, cfg)
            energies.append(kinetic_energy(state))
        assert all(b < a for a, b in zip(energies, energies[1:]))


class TestManufactured:
    GRID = CylGrid(r_max=3.0, z_half=3.0, n_r=25, n_z=48)

    def test_discrete_tendencies_are_second_order_consistent(self):
        errors = []
        for grid in (self.GRID, self.GRID.refined(2)):
            ms = ManufacturedSolution(grid, nu=1.0)
            t = 0.1
            f = ms.fields(t)
            n_r, n_theta, n_z = tendencies(grid, 1.0, f["u_r"], f["u_theta"], f["u_z"], ms.forcing(t))
            rr, zz = grid.mesh()
            # du/dt = -u for the manufactured fields, grad p = (-2 r p, -2 z p)
            expected_r = -f["u_r"] - 2.0 * rr * f["pressure"]
            expected_theta = -f["u_theta"]
            expected_z = -f["u_z"] - 2.0 * zz * f["pressure"]
            errors.append(max(float(np.max(np.abs(a - b))) for a, b in (
                (n_r, expected_r), (n_theta, expected_theta), (n_z, expected_z))))
        assert math.log2(errors[0] / errors[1]) >= 1.8

    def test_run_error_decreases_under_refinement(self):
        errors = []
        for grid in (CylGrid(r_max=3.0, z_half=3.0, n_r=13, n_z=24),
                     CylGrid(r_max=3.0, z_half=3.0, n_r=25, n_z=48)):
            cfg = SolverConfig(nu=1.0, dt=1e-3, t_end=0.05)
            ms = ManufacturedSolution(grid, cfg.nu)
            state = _exact_state(grid, ms, 0.0)
            for _ in range(cfg.n_steps):
                state = step(state, cfg, forcing=ms.forcing, boundary=ms.velocity)
            exact = ms.fields(state.t)
            errors.append(max(float(np.max(np.abs(getattr(state, k).values - exact[k])))
                              for k in ("u_r", "u_theta", "u_z")))
        assert errors[1] < errors[0] / 2.0

    @staticmethod
    def _solve(grid, dt, t_end):
        cfg = SolverConfig(nu=1.0, dt=dt, t_end=t_end)
        ms = ManufacturedSolution(grid, cfg.nu)
        state = _exact_state(grid, ms, 0.0)
        for _ in range(cfg.n_steps):
            state = step(state, cfg, forcing=ms.forcing, boundary=ms.velocity)
        return state, ms.fields(state.t)

    @pytest.mark.slow
    def test_space_order(self):
        errors = []
        for grid in (self.GRID, CylGrid(r_max=3.0, z_half=3.0, n_r=49, n_z=96)):
            state, exact = self._solve(grid, 2.5e-4, 0.02)
            errors.append(max(float(np.max(np.abs(getattr(state, k).values - exact[k])))
                              for k in ("u_r", "u_theta", "u_z")))
        assert math.log2(errors[0] / errors[1]) >= 1.8

    @pytest.mark.slow
    def test_time_order(self):
        # the same grid throughout, so differences to the small-step run are time error only
        def velocity(dt):
            state, _ = self._solve(self.GRID, dt, 0.04)
            return np.stack([state.u_r.values, state.u_theta.values, state.u_z.values])

        reference = velocity(1.25e-4)
        coarse, fine = (float(np.max(np.abs(velocity(dt) - reference))) for dt in (2e-3, 1e-3))
        assert math.log2(coarse / fine) >= 0.9


class TestVorticityResidual:
    # Gaussian fields are at rounding level on the outer boundary of these grids
    GRIDS = (CylGrid(r_max=4.0, z_half=4.0, n_r=33, n_z=64), CylGrid(r_max=4.0, z_half=4.0, n_r=65, n_z=128))

    def test_manufactured_residual_is_second_order(self):
        dt = 1e-4
        cfg = SolverConfig(nu=1.0, dt=dt, t_end=dt)
        norms = []
        for grid in self.GRIDS:
            ms = ManufacturedSolution(grid, cfg.nu)
            prev, nxt = _exact_state(grid, ms, 0.1), _exact_state(grid, ms, 0.1 + dt)
            norms.append(max(vorticity_residual(prev, nxt, cfg, forcing=ms.forcing)))
        assert norms[1] > 0.0
        assert math.log2(norms[0] / norms[1]) >= 1.8

    def test_unforced_manufactured_fields_leave_a_residual(self):
        grid = self.GRIDS[0]
        cfg = SolverConfig(nu=1.0, dt=1e-4, t_end=1e-4)
        ms = ManufacturedSolution(grid, cfg.nu)
        prev, nxt = _exact_state(grid, ms, 0.1), _exact_state(grid, ms, 0.1 + cfg.dt)
        forced = max(vorticity_residual(prev, nxt, cfg, forcing=ms.forcing))
        assert max(vorticity_residual(prev, nxt, cfg)) > 10.0 * forced

    def test_rest_state_has_zero_residual(self, small_grid, cfg):
        state = make_initial_state(small_grid, InitialData(recipe="rest"), cfg)
        assert vorticity_residual(state, step(state, cfg), cfg) == (0.0, 0.0, 0.0)

    def test_grid_mismatch(self, small_grid, cfg):
        a = swirl_diffusion_state(small_grid, 0.0, 1.0)
        b = swirl_diffusion_state(small_grid.refined(2), cfg.dt, 1.0)
        with pytest.raises(GridMismatchError):
            vorticity_residual(a, b, cfg)


class TestInitialData:

    def test_checkpoint_recipe_resumes_state(self, tmp_path, small_grid, cfg):
        state = step(make_initial_state(small_grid, InitialData(recipe="ring_swirl"), cfg), cfg)
        path = write_checkpoint(tmp_path / "s.axrg", small_grid, state.t, state.u_r.values,
                                state.u_theta.values, state.u_z.values, state.pressure.values)
        resumed = make_initial_state(small_grid, InitialData(recipe="checkpoint", checkpoint_path=str(path)), cfg)
        assert resumed.t == state.t
        np.testing.assert_allclose(resumed.u_theta.values, state.u_theta.values, rtol=0, atol=1e-12)
        np.testing.assert_allclose(resumed.u_r.values, state.u_r.values, rtol=0, atol=1e-9)

    def test_checkpoint_on_other_grid(self, tmp_path, small_grid, cfg):
        zeros = np.zeros(small_grid.shape)
        path = write_checkpoint(tmp_path / "s.axrg", small_grid, 0.0, zeros, zeros, zeros, zeros)
        with pytest.raises(GridMismatchError):
            make_initial_state(small_grid.refined(2), InitialData(recipe="checkpoint", checkpoint_path=str(path)), cfg)

    def test_checkpoint_recipe_needs_path(self):
        with pytest.raises(ValidationError):
            InitialData(recipe="checkpoint")

    def test_recipes_are_regular_on_axis(self, small_grid, cfg):
        for recipe in ("pure_swirl", "ring_swirl", "inward_radial"):
            state = make_initial_state(small_grid, InitialData(recipe=recipe, swirl_amplitude=1.0), cfg)
            assert state.axis_violation() == 0.0


class TestWeightedFunctionalsOnRuns:

    @pytest.mark.slow
    def test_swirl_identity_residual_shrinks_under_refinement(self, family_params):
        relative = []
        for n_r, n_z, dt in ((33, 64, 2e-3), (65, 128, 5e-4)):
            grid = CylGrid(r_max=4.0, z_half=4.0, n_r=n_r, n_z=n_z)
            cfg = SolverConfig(nu=1.0, dt=dt, t_end=0.02)
            state = make_initial_state(grid, InitialData(recipe="pure_swirl"), cfg)
            for _ in range(cfg.n_steps - 1):
                state = step(state, cfg)
            d = eval_identity_d_terms(state, step(state, cfg), family_params, cfg.nu)
            relative.append(abs(d.residual) / d.scale)
        assert relative[1] <= 0.5 * relative[0]
        assert relative[1] < IDENTITY_RTOL

    def test_exact_swirl_diffusion_has_no_vorticity_and_decaying_swirl(self, family_params):
        grid = CylGrid(r_max=8.0, z_half=8.0, n_r=49, n_z=96)
        states = [swirl_diffusion_state(grid, t, 1.0) for t in (0.0, 0.1, 0.2, 0.4)]
        omega = [eval_omega_q(s, family_params) for s in states]
        phi = [eval_phi_p(s, family_params) for s in states]
        assert omega == [0.0] * len(states)
        assert all(b < a for a, b in zip(phi, phi[1:]))

    def test_vorticity_over_r_decays_without_swirl(self):
        # Omega = omega_theta / r obeys a maximum principle when u_theta = 0
        grid = CylGrid(r_max=4.0, z_half=4.0, n_r=33, n_z=64)
        cfg = SolverConfig(nu=1.0, dt=2e-3, t_end=0.02)
        state = make_initial_state(grid, InitialData(recipe="ring_swirl", swirl_amplitude=0.0), cfg)
        values = []
        for _ in range(cfg.n_steps):
            values.append(weighted_integral(StateQuadrature(state), "omega_theta", 1.0, 2.0))
            state = step(state, cfg)
        assert np.all(state.u_theta.values == 0.0)
        assert values[0] > 0.0
        assert all(b < a for a, b in zip(values, values[1:]))
