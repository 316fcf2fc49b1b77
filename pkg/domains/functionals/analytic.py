"""
Exact pure-swirl diffusion.

With u_r = u_z = 0 the swirl obeys d_t u_theta = nu (Laplacian - 1/r^2) u_theta,
and u_theta = r H with H the five-dimensional heat kernel solves it:

    u_theta = r (t + t0)^(-5/2) exp(-(r^2 + z^2) / (4 nu (t + t0)))
"""

import numpy as np

from domains.grid.fields import AxisymState, ScalarField2D
from domains.grid.schemas import CylGrid
from domains.operators.operators import build_state


def swirl_diffusion_values(grid: CylGrid, t: float, nu: float, t0: float = 1.0) -> np.ndarray:
    rr, zz = grid.mesh()
    tau = t + t0
    return rr * tau ** -2.5 * np.exp(-(rr ** 2 + zz ** 2) / (4.0 * nu * tau))


def swirl_diffusion_state(grid: CylGrid, t: float, nu: float, t0: float = 1.0) -> AxisymState:
    zeros = ScalarField2D.zeros(grid)
    return build_state(t, zeros, ScalarField2D(grid, swirl_diffusion_values(grid, t, nu, t0)), zeros, zeros)
