"""
Cylindrical differential operators on axisymmetric fields.

Parity convention at r = 0: u_r, u_theta, omega_r, omega_theta are odd in r;
u_z, pressure and omega_z are even.
"""

import logging
from typing import Tuple

import numpy as np

from domains.core.errors import AxisRegularityError
from domains.grid.fields import AxisymState, ScalarField2D
from . import stencils
from .stencils import EVEN, ODD

logger = logging.getLogger(__name__)

AXIS_TOLERANCE = 1e-12


def _require_vanishing_axis(f: ScalarField2D, what: str) -> None:
    scale = max(1.0, float(np.max(np.abs(f.values))))
    worst = float(np.max(np.abs(f.axis_values())))
    if worst > AXIS_TOLERANCE * scale:
        raise AxisRegularityError(
            f"{what} must vanish on r = 0, found |value| = {worst:.3e}",
            {"axis_max": worst},
        )


def divergence_cyl(u_r: ScalarField2D, u_z: ScalarField2D) -> ScalarField2D:
    """d_r u_r + u_r/r + d_z u_z, with the axis limit 2 d_r u_r + d_z u_z."""
    u_r.same_grid(u_z)
    return ScalarField2D(u_r.grid, stencils.divergence_values(u_r.grid, u_r.values, u_z.values))


def curl_cyl(
    u_r: ScalarField2D, u_theta: ScalarField2D, u_z: ScalarField2D
) -> Tuple[ScalarField2D, ScalarField2D, ScalarField2D]:
    """
    Vorticity components of an axisymmetric velocity.

    Returns:
        (omega_r, omega_theta, omega_z) with omega_r = -d_z u_theta,
        omega_theta = d_z u_r - d_r u_z, omega_z = d_r u_theta + u_theta/r.
    """
    u_r.same_grid(u_theta)
    u_r.same_grid(u_z)
    grid = u_r.grid
    omega_r = -stencils.d_dz(grid, u_theta.values)
    omega_theta = stencils.d_dz(grid, u_r.values) - stencils.d_dr(grid, u_z.values, EVEN)
    omega_z = stencils.conservative_radial(grid, u_theta.values)
    return (
        ScalarField2D(grid, omega_r),
        ScalarField2D(grid, omega_theta),
        ScalarField2D(grid, omega_z),
    )


def swirl_laplacian(f: ScalarField2D) -> ScalarField2D:
    """(1/r) d_r(r d_r f) + d_zz f - f/r^2 for a field vanishing on the axis."""
    _require_vanishing_axis(f, "swirl_laplacian argument")
    return ScalarField2D(f.grid, stencils.swirl_laplacian_values(f.grid, f.values))


def gradient_cyl(f: ScalarField2D, parity: str = EVEN) -> Tuple[ScalarField2D, ScalarField2D]:
    """(d_r f, d_z f). Even fields get d_r f = 0 on the axis."""
    return (
        ScalarField2D(f.grid, stencils.d_dr(f.grid, f.values, parity)),
        ScalarField2D(f.grid, stencils.d_dz(f.grid, f.values)),
    )


def axial_laplacian(f: ScalarField2D) -> ScalarField2D:
    """(1/r) d_r(r d_r f) + d_zz f, axis value 2 d_rr f + d_zz f."""
    return ScalarField2D(f.grid, stencils.axial_laplacian_values(f.grid, f.values))


def build_state(
    t: float,
    u_r: ScalarField2D,
    u_theta: ScalarField2D,
    u_z: ScalarField2D,
    pressure: ScalarField2D,
) -> AxisymState:
    """Assemble a state, deriving the vorticity triple from the velocity."""
    omega_r, omega_theta, omega_z = curl_cyl(u_r, u_theta, u_z)
    return AxisymState(
        t=t,
        u_r=u_r,
        u_theta=u_theta,
        u_z=u_z,
        pressure=pressure,
        omega_r=omega_r,
        omega_theta=omega_theta,
        omega_z=omega_z,
    )


__all__ = [
    "ODD",
    "EVEN",
    "divergence_cyl",
    "curl_cyl",
    "swirl_laplacian",
    "gradient_cyl",
    "axial_laplacian",
    "build_state",
]
