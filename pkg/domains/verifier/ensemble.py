"""
Seeded ensembles of smooth, decaying, divergence-free axisymmetric states.

(u_r, u_z) come from a streamfunction psi = A r^2 G(r, z) h(z) with
G = exp(-r^2/sr^2 - (z-z0)^2/sz^2) and h = 1 + c z; u_theta is an
independent Gaussian-enveloped swirl.
"""

import logging
from typing import Iterator, Optional

import numpy as np

from config.settings import settings
from domains.grid.fields import AxisymState, ScalarField2D
from domains.grid.schemas import CylGrid
from domains.operators.operators import build_state

logger = logging.getLogger(__name__)

DEFAULT_GRID = CylGrid(r_max=6.0, z_half=6.0, n_r=61, n_z=122)


def random_state(grid: CylGrid, rng: np.random.Generator) -> AxisymState:
    rr, zz = grid.mesh()

    amp = rng.uniform(-1.5, 1.5)
    sr, sz = rng.uniform(0.6, 1.4, size=2)
    z0 = rng.uniform(-0.8, 0.8)
    c = rng.uniform(-0.5, 0.5)
    envelope = np.exp(-rr ** 2 / sr ** 2 - (zz - z0) ** 2 / sz ** 2)
    h = 1.0 + c * zz
    u_r = -amp * rr * ((-2.0 * (zz - z0) / sz ** 2) * h + c) * envelope
    u_z = amp * envelope * h * (2.0 - 2.0 * rr ** 2 / sr ** 2)

    swirl = rng.uniform(-1.5, 1.5)
    tr, tz = rng.uniform(0.6, 1.4, size=2)
    z1 = rng.uniform(-0.8, 0.8)
    c1 = rng.uniform(-0.5, 0.5)
    u_theta = swirl * rr * np.exp(-rr ** 2 / tr ** 2 - (zz - z1) ** 2 / tz ** 2) * (1.0 + c1 * zz)

    return build_state(
        0.0,
        ScalarField2D(grid, u_r),
        ScalarField2D(grid, u_theta),
        ScalarField2D(grid, u_z),
        ScalarField2D.zeros(grid),
    )


def ensemble(size: int, seed: Optional[int] = None, grid: CylGrid = DEFAULT_GRID) -> Iterator[AxisymState]:
    """size states from default_rng(seed); the same seed gives the same states."""
    seed = settings.default_seed if seed is None else seed
    rng = np.random.default_rng(seed)
    logger.debug(f"Ensemble of {size} states, seed {seed}, grid {grid.shape}")
    for _ in range(size):
        yield random_state(grid, rng)
