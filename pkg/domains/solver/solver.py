"""
Time stepping for the axisymmetric Navier-Stokes system.

Primitive variables (u_r, u_theta, u_z, p) advance with Heun's second-order
Runge-Kutta method; each stage ends with a pressure projection of (u_r, u_z).
The vorticity transport equations are not evolved; ``vorticity_residual``
evaluates them on consecutive states as an independent check.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from domains.core.errors import CFLViolationError, GridMismatchError
from domains.grid.fields import AxisymState, ScalarField2D, integrate_values
from domains.grid.schemas import CylGrid
from domains.operators import stencils
from domains.operators.operators import build_state
from domains.operators.stencils import EVEN, ODD
from .initial_data import zero_boundary
from .projection import get_projector
from .schemas import SolverConfig

logger = logging.getLogger(__name__)

Triple = Tuple[np.ndarray, np.ndarray, np.ndarray]
ForcingFn = Callable[[float], Triple]
BoundaryFn = Callable[[float], Triple]


def _inverse_r(grid: CylGrid) -> np.ndarray:
    inv = np.zeros(grid.n_r)
    inv[1:] = 1.0 / grid.r[1:]
    return inv[:, None]


def tendencies(
    grid: CylGrid,
    nu: float,
    u_r: np.ndarray,
    u_theta: np.ndarray,
    u_z: np.ndarray,
    forcing: Optional[Triple] = None,
) -> Triple:
    """Right-hand sides of the three momentum equations without the pressure gradient."""
    inv_r = _inverse_r(grid)

    def advect(f, parity):
        return u_r * stencils.d_dr(grid, f, parity) + u_z * stencils.d_dz(grid, f)

    n_r = -advect(u_r, ODD) + u_theta ** 2 * inv_r + nu * stencils.swirl_laplacian_values(grid, u_r)
    n_theta = -advect(u_theta, ODD) - u_theta * u_r * inv_r + nu * stencils.swirl_laplacian_values(grid, u_theta)
    n_z = -advect(u_z, EVEN) + nu * stencils.axial_laplacian_values(grid, u_z)
    if forcing is not None:
        n_r = n_r + forcing[0]
        n_theta = n_theta + forcing[1]
        n_z = n_z + forcing[2]
    n_r[0, :] = 0.0
    n_theta[0, :] = 0.0
    return n_r, n_theta, n_z


def check_cfl(state: AxisymState, cfg: SolverConfig) -> float:
    """Advective CFL number; raises CFLViolationError above cfg.cfl_safety."""
    grid = state.grid
    speed = np.sqrt(state.u_r.values ** 2 + state.u_theta.values ** 2 + state.u_z.values ** 2)
    u_max = float(np.max(speed))
    h = min(grid.dr, grid.dz)
    cfl = u_max * cfg.dt / h
    if cfl > cfg.cfl_safety:
        suggested = cfg.cfl_safety * h / u_max
        logger.warning(f"Step rejected at t={state.t}: CFL {cfl:.3f} > {cfg.cfl_safety}")
        raise CFLViolationError(
            f"CFL number {cfl:.4g} exceeds {cfg.cfl_safety}; try dt <= {suggested:.4g}",
            cfl,
            suggested,
        )
    return cfl


def _apply_velocity_bc(
    cfg: SolverConfig,
    reference: Triple,
    fields: Triple,
    boundary: Optional[BoundaryFn],
    t: float,
) -> None:
    u_r, u_theta, u_z = fields
    u_r[0, :] = 0.0
    u_theta[0, :] = 0.0
    if boundary is not None:
        targets = boundary(t)
    elif cfg.bc == "frozen":
        targets = reference
    else:
        for a in fields:
            zero_boundary(a)
        return
    for a, b in zip(fields, targets):
        a[-1, :] = b[-1, :]
        a[:, 0] = b[:, 0]
        a[:, -1] = b[:, -1]


def step(
    state: AxisymState,
    cfg: SolverConfig,
    forcing: Optional[ForcingFn] = None,
    boundary: Optional[BoundaryFn] = None,
) -> AxisymState:
    """
    Advance one step of size cfg.dt.

    Args:
        state: current state; must be regular on the axis
        cfg: solver settings
        forcing: optional body force F(t) -> (F_r, F_theta, F_z), for manufactured solutions
        boundary: optional exact boundary velocity b(t); overrides cfg.bc

    Returns:
        New state at t + dt with recomputed vorticity.
    """
    grid = state.grid
    check_cfl(state, cfg)
    projector = get_projector(grid, cfg.projection_tol, cfg.max_refinements)
    dt = cfg.dt
    t0, t1 = state.t, state.t + dt
    u0 = (state.u_r.values, state.u_theta.values, state.u_z.values)

    # stage 1
    k0 = tendencies(grid, cfg.nu, *u0, forcing(t0) if forcing else None)
    stage = tuple(u + dt * k for u, k in zip(u0, k0))
    _apply_velocity_bc(cfg, u0, stage, boundary, t1)
    s_r, s_z, lam1, _ = projector.project(stage[0], stage[2])
    u1 = (s_r, stage[1], s_z)

    # stage 2
    k1 = tendencies(grid, cfg.nu, *u1, forcing(t1) if forcing else None)
    final = tuple(0.5 * a + 0.5 * (b + dt * k) for a, b, k in zip(u0, u1, k1))
    _apply_velocity_bc(cfg, u0, final, boundary, t1)
    f_r, f_z, lam2, history = projector.project(final[0], final[2])

    pressure = -0.5 * lam1 / dt - lam2 / dt
    logger.debug(f"step t={t1:.6g}: projection sweeps {len(history)}")
    return build_state(
        t1,
        ScalarField2D(grid, f_r),
        ScalarField2D(grid, final[1]),
        ScalarField2D(grid, f_z),
        ScalarField2D(grid, pressure),
    )


def kinetic_energy(state: AxisymState) -> float:
    """int |u|^2 dx."""
    grid = state.grid
    density = state.u_r.values ** 2 + state.u_theta.values ** 2 + state.u_z.values ** 2
    return integrate_values(grid, density)


def _interior_l2(grid: CylGrid, values: np.ndarray) -> float:
    w = grid.quad_weights[1:-1, 1:-1]
    return float(np.sqrt(np.sum(values[1:-1, 1:-1] ** 2 * w)))


def _curl_of(grid: CylGrid, f: Triple) -> Triple:
    f_r, f_theta, f_z = f
    return (
        -stencils.d_dz(grid, f_theta),
        stencils.d_dz(grid, f_r) - stencils.d_dr(grid, f_z, EVEN),
        stencils.conservative_radial(grid, f_theta),
    )


def vorticity_residual(
    state_prev: AxisymState,
    state_next: AxisymState,
    cfg: SolverConfig,
    forcing: Optional[ForcingFn] = None,
) -> Tuple[float, float, float]:
    """
    Residual norms of the three vorticity transport equations.

    Time derivatives are differences of the two states; every other term is
    evaluated on their average, so the residual is centred at the half step.
    Norms are r-weighted L2 over interior nodes.
    """
    grid = state_prev.grid
    if grid != state_next.grid:
        raise GridMismatchError(f"grids differ: {grid} vs {state_next.grid}")
    dt = state_next.t - state_prev.t
    if dt <= 0:
        dt = cfg.dt

    def mid(name):
        return 0.5 * (getattr(state_prev, name).values + getattr(state_next, name).values)

    def rate(name):
        return (getattr(state_next, name).values - getattr(state_prev, name).values) / dt

    u_r, u_theta, u_z = mid("u_r"), mid("u_theta"), mid("u_z")
    w_r, w_theta, w_z = mid("omega_r"), mid("omega_theta"), mid("omega_z")
    inv_r = _inverse_r(grid)
    nu = cfg.nu

    def advect(f, parity):
        return u_r * stencils.d_dr(grid, f, parity) + u_z * stencils.d_dz(grid, f)

    res_r = (rate("omega_r") + advect(w_r, ODD)
             - stencils.d_dr(grid, u_r, ODD) * w_r - stencils.d_dz(grid, u_r) * w_z
             - nu * stencils.swirl_laplacian_values(grid, w_r))
    res_theta = (rate("omega_theta") + advect(w_theta, ODD)
                 - u_r * inv_r * w_theta + 2.0 * u_theta * inv_r * w_r
                 - nu * stencils.swirl_laplacian_values(grid, w_theta))
    res_z = (rate("omega_z") + advect(w_z, EVEN)
             - stencils.d_dr(grid, u_z, EVEN) * w_r - stencils.d_dz(grid, u_z) * w_z
             - nu * stencils.axial_laplacian_values(grid, w_z))

    if forcing is not None:
        f_mid = tuple(0.5 * (a + b) for a, b in zip(forcing(state_prev.t), forcing(state_next.t)))
        c_r, c_theta, c_z = _curl_of(grid, f_mid)
        res_r, res_theta, res_z = res_r - c_r, res_theta - c_theta, res_z - c_z

    return _interior_l2(grid, res_r), _interior_l2(grid, res_theta), _interior_l2(grid, res_z)
