"""
Initial data recipes.

Every velocity recipe with radial/axial motion is derived from a
streamfunction psi ~ r^2 near the axis, so it is divergence-free before the
discrete projection and satisfies u_r = u_theta = 0 on r = 0.
"""

import logging
from typing import Dict

import numpy as np

from domains.core.errors import GridMismatchError
from domains.grid.checkpoint import read_checkpoint
from domains.grid.fields import ScalarField2D
from domains.grid.schemas import CylGrid
from domains.operators.operators import build_state
from .manufactured import ManufacturedSolution
from .projection import get_projector
from .schemas import InitialData, SolverConfig

logger = logging.getLogger(__name__)


def _gaussian(rr, zz, sigma):
    return np.exp(-(rr ** 2 + zz ** 2) / sigma ** 2)


def recipe_fields(grid: CylGrid, init: InitialData, nu: float = 1.0) -> Dict[str, np.ndarray]:
    """Raw node values of the recipe, before boundary conditions and projection."""
    rr, zz = grid.mesh()
    zeros = np.zeros(grid.shape)
    a, sigma = init.amplitude, init.sigma

    if init.recipe == "rest":
        return {"u_r": zeros, "u_theta": zeros.copy(), "u_z": zeros.copy(), "pressure": zeros.copy(), "t": 0.0}

    if init.recipe == "pure_swirl":
        return {
            "u_r": zeros,
            "u_theta": a * rr * _gaussian(rr, zz, sigma),
            "u_z": zeros.copy(),
            "pressure": zeros.copy(),
            "t": 0.0,
        }

    if init.recipe == "ring_swirl":
        # psi = A r^2 G
        g = _gaussian(rr, zz, sigma)
        return {
            "u_r": 2.0 * a * rr * zz * g / sigma ** 2,
            "u_theta": init.swirl_amplitude * rr * g,
            "u_z": a * (2.0 - 2.0 * rr ** 2 / sigma ** 2) * g,
            "pressure": zeros,
            "t": 0.0,
        }

    if init.recipe == "inward_radial":
        # psi = A r^2 exp(-r^2/sigma^2) L tanh(z/L); u_r <= 0 for A >= 0
        radial = np.exp(-rr ** 2 / sigma ** 2)
        ell = init.length
        return {
            "u_r": -a * rr * radial / np.cosh(zz / ell) ** 2,
            "u_theta": init.swirl_amplitude * rr * _gaussian(rr, zz, sigma),
            "u_z": a * (2.0 - 2.0 * rr ** 2 / sigma ** 2) * radial * ell * np.tanh(zz / ell),
            "pressure": zeros,
            "t": 0.0,
        }

    if init.recipe == "manufactured":
        fields = ManufacturedSolution(grid, nu).fields(0.0)
        return {**fields, "t": 0.0}

    if init.recipe == "checkpoint":
        data = read_checkpoint(init.checkpoint_path)
        if data.grid != grid:
            raise GridMismatchError(
                f"checkpoint grid {data.grid} does not match configured grid {grid}"
            )
        return {
            "u_r": data.u_r,
            "u_theta": data.u_theta,
            "u_z": data.u_z,
            "pressure": data.pressure,
            "t": data.t,
        }

    raise ValueError(f"unknown recipe {init.recipe!r}")


def make_initial_state(grid: CylGrid, init: InitialData, cfg: SolverConfig):
    """Recipe fields with boundary values applied, projected once."""
    raw = recipe_fields(grid, init, cfg.nu)
    u_r = np.array(raw["u_r"], dtype=np.float64)
    u_theta = np.array(raw["u_theta"], dtype=np.float64)
    u_z = np.array(raw["u_z"], dtype=np.float64)
    u_r[0, :] = 0.0
    u_theta[0, :] = 0.0
    if cfg.bc == "homogeneous" and init.recipe not in ("manufactured", "checkpoint"):
        for a in (u_r, u_theta, u_z):
            zero_boundary(a)

    projector = get_projector(grid, cfg.projection_tol, cfg.max_refinements)
    u_r, u_z, _, history = projector.project(u_r, u_z)
    logger.info(
        f"Initial data '{init.recipe}' on {grid.shape} projected in {len(history)} sweep(s)"
    )
    return build_state(
        raw["t"],
        ScalarField2D(grid, u_r),
        ScalarField2D(grid, u_theta),
        ScalarField2D(grid, u_z),
        ScalarField2D(grid, raw["pressure"]),
    )


def zero_boundary(values: np.ndarray) -> None:
    values[-1, :] = 0.0
    values[:, 0] = 0.0
    values[:, -1] = 0.0
