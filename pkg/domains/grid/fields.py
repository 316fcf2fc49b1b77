"""
Axisymmetric scalar fields, states and the reductions over them.

Fields are immutable snapshots: the value array is copied and frozen on
construction, so reductions are pure and can be evaluated in any order.
Sums use numpy's pairwise summation over a fixed array layout, which keeps
them bit-reproducible.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from domains.core.errors import GridMismatchError, NonFiniteFieldError
from .schemas import CylGrid


def first_nonfinite_node(values: np.ndarray):
    """(i, j) of the first NaN/Inf entry in row-major order, or None."""
    bad = np.argwhere(~np.isfinite(values))
    if bad.size == 0:
        return None
    return tuple(int(k) for k in bad[0])


def require_finite(values: np.ndarray, what: str) -> None:
    node = first_nonfinite_node(values)
    if node is not None:
        raise NonFiniteFieldError(f"{what} is not finite at node {node}", node)


@dataclass(frozen=True, eq=False)
class ScalarField2D:
    """One axisymmetric scalar component sampled on a CylGrid."""
    grid: CylGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != self.grid.shape:
            raise GridMismatchError(
                f"field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        require_finite(values, "field")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: CylGrid) -> "ScalarField2D":
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def from_function(cls, grid: CylGrid, fn) -> "ScalarField2D":
        """Sample fn(R, Z) on the grid nodes."""
        rr, zz = grid.mesh()
        return cls(grid, np.broadcast_to(fn(rr, zz), grid.shape))

    def same_grid(self, other: "ScalarField2D") -> None:
        if self.grid != other.grid:
            raise GridMismatchError(f"grids differ: {self.grid} vs {other.grid}")

    def axis_values(self) -> np.ndarray:
        return self.values[0, :]

    def _combine(self, other: Union["ScalarField2D", float], op) -> "ScalarField2D":
        if isinstance(other, ScalarField2D):
            self.same_grid(other)
            return ScalarField2D(self.grid, op(self.values, other.values))
        return ScalarField2D(self.grid, op(self.values, float(other)))

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, other):
        return self._combine(other, np.multiply)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return ScalarField2D(self.grid, -self.values)


@dataclass(frozen=True, eq=False)
class AxisymState:
    """Velocity, pressure and derived vorticity at one time."""
    t: float
    u_r: ScalarField2D
    u_theta: ScalarField2D
    u_z: ScalarField2D
    pressure: ScalarField2D
    omega_r: ScalarField2D
    omega_theta: ScalarField2D
    omega_z: ScalarField2D

    def __post_init__(self):
        for f in (self.u_theta, self.u_z, self.pressure,
                  self.omega_r, self.omega_theta, self.omega_z):
            self.u_r.same_grid(f)

    @property
    def grid(self) -> CylGrid:
        return self.u_r.grid

    def axis_violation(self) -> float:
        """max |u_r|, |u_theta| on the axis line (0 for a regular state)."""
        return float(max(np.max(np.abs(self.u_r.axis_values())),
                         np.max(np.abs(self.u_theta.axis_values()))))


def integrate_values(grid: CylGrid, values: np.ndarray) -> float:
    """Trapezoid approximation of int values dx with dx = 2*pi*r dr dz."""
    require_finite(values, "integrand")
    return float(np.sum(values * grid.quad_weights))


def integrate_cyl(f: ScalarField2D) -> float:
    """int f dx over the truncated domain."""
    return integrate_values(f.grid, f.values)


def inverse_r_power(grid: CylGrid, beta: float) -> np.ndarray:
    """r^(-beta) on off-axis nodes, 0 on the axis line (which has zero weight)."""
    r = grid.r
    out = np.zeros_like(r)
    out[1:] = r[1:] ** (-beta)
    return np.broadcast_to(out[:, None], grid.shape).copy()


def weighted_power_integrand(grid: CylGrid, values: np.ndarray, beta: float, p: float) -> np.ndarray:
    """|values / r^beta|^p on off-axis nodes, 0 on the axis."""
    with np.errstate(over="ignore", invalid="ignore"):
        integrand = np.abs(values * inverse_r_power(grid, beta)) ** p
    integrand[0, :] = 0.0
    if not np.all(np.isfinite(integrand)):
        magnitude = np.where(np.isfinite(integrand), integrand, np.inf)
        node = tuple(int(k) for k in np.unravel_index(np.argmax(magnitude), magnitude.shape))
        raise NonFiniteFieldError(f"weighted integrand overflows; largest at node {node}", node)
    return integrand


def weighted_lp(f: ScalarField2D, beta: float, p: float) -> float:
    """int |f / r^beta|^p dx (the p-th power of the weighted L^p norm)."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return integrate_values(f.grid, weighted_power_integrand(f.grid, f.values, beta, p))


def positive_part(f: ScalarField2D) -> ScalarField2D:
    """f+ = max(f, 0)."""
    return ScalarField2D(f.grid, np.maximum(f.values, 0.0))


def negative_part(f: ScalarField2D) -> ScalarField2D:
    """f- = max(-f, 0), so that f = f+ - f-."""
    return ScalarField2D(f.grid, np.maximum(-f.values, 0.0))
