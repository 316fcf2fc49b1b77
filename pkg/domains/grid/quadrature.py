"""
Cell-wise Gauss quadrature of axisymmetric integrands.

Odd fields v (u_r, u_theta, omega_theta) are reduced to w = v / r, which is
even in r and smooth across the axis, and w is interpolated by a bicubic
spline on the r-mirrored grid. Integrands are written as r^kappa F(w, ...),
so the power of r is carried by the quadrature weights: Gauss-Jacobi on
cells touching the axis (any kappa > -1), Gauss-Legendre times r^kappa
elsewhere. All weights are positive.

Positive parts and fractional powers are not smooth where a reduced field
changes sign, so those cells are bisected ``depth`` times. Radii passed as
``breaks`` become cell edges, which makes indicators of r < radius exact.
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np
from scipy import special
from scipy.interpolate import RectBivariateSpline

from domains.core.errors import NonFiniteFieldError
from .fields import AxisymState
from .schemas import CylGrid

logger = logging.getLogger(__name__)

REDUCED_FIELDS = ("u_r", "u_theta", "omega_theta")

# sign changes below this fraction of the largest reduced field do not trigger bisection
KINK_FLOOR = 1e-10
EDGE_TOL = 1e-12

Integrand = Callable[["Sample"], np.ndarray]


def reduced_values(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    """values / r for a field odd in r; the axis row is the limit (8 v_1 - v_2) / (6 dr)."""
    out = np.empty(grid.shape)
    out[1:, :] = values[1:, :] / grid.r[1:, None]
    out[0, :] = (8.0 * values[1, :] - values[2, :]) / (6.0 * grid.dr)
    return out


def mirrored_spline(grid: CylGrid, reduced: np.ndarray) -> RectBivariateSpline:
    """Interpolating bicubic spline of an even-in-r field over [-r_max, r_max] x [-Z, Z]."""
    r = np.concatenate([-grid.r[:0:-1], grid.r])
    data = np.concatenate([reduced[:0:-1], reduced], axis=0)
    return RectBivariateSpline(r, grid.z, data, kx=3, ky=3, s=0)


@lru_cache(maxsize=16)
def _legendre_unit(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = special.roots_legendre(order)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=128)
def _jacobi_unit(order: int, kappa: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes t and weights of int_0^1 t^kappa F(t) dt."""
    x, w = special.roots_jacobi(order, 0.0, kappa)
    return 0.5 * (x + 1.0), w * 0.5 ** (kappa + 1.0)


def _edges(nodes: np.ndarray, refine: int, breaks: Iterable[float]) -> np.ndarray:
    steps = np.arange(refine) / refine
    edges = np.append((nodes[:-1, None] + np.diff(nodes)[:, None] * steps).ravel(), nodes[-1])
    extra = [b for b in breaks
             if nodes[0] < b < nodes[-1] and np.min(np.abs(edges - b)) > EDGE_TOL * max(1.0, abs(b))]
    return np.union1d(edges, extra) if extra else edges


def _split(cells: np.ndarray) -> np.ndarray:
    """Each (r0, r1, z0, z1) row into its four quarters."""
    r0, r1, z0, z1 = cells.T
    rm, zm = 0.5 * (r0 + r1), 0.5 * (z0 + z1)
    quarters = [np.stack([a, b, c, d], axis=1)
                for a, b in ((r0, rm), (rm, r1)) for c, d in ((z0, zm), (zm, z1))]
    return np.concatenate(quarters)


class Sample:
    """
    Reduced fields and their derivatives at a fixed point set, evaluated on demand.

    ``tensor`` samples take 1-D r and z node arrays and produce (len(r), len(z))
    values; scattered samples take equal-shaped r and z arrays.
    """

    def __init__(self, splines: Dict[str, RectBivariateSpline], r: np.ndarray, z: np.ndarray, tensor: bool):
        self._splines = splines
        self._tensor = tensor
        self._cache: Dict[Tuple[str, int, int], np.ndarray] = {}
        if tensor:
            self._r, self._z = r, z
            self.radius = r[:, None]
            self.shape = (r.size, z.size)
        else:
            self._r, self._z = r.ravel(), z.ravel()
            self.radius = r
            self.shape = r.shape

    def __call__(self, name: str, dr: int = 0, dz: int = 0) -> np.ndarray:
        key = (name, dr, dz)
        if key not in self._cache:
            if self._r.size == 0:
                values = np.zeros(self.shape)
            else:
                values = self._splines[name](self._r, self._z, dx=dr, dy=dz, grid=self._tensor)
            self._cache[key] = np.asarray(values, dtype=np.float64).reshape(self.shape)
        return self._cache[key]


class StateQuadrature:
    """
    Quadrature of 2 pi int int r^kappa F dr dz for one state.

    Args:
        state: supplies the reduced fields
        order: Gauss points per direction and cell
        refine: every grid cell is split into refine x refine cells
        depth: bisection levels for cells where a reduced field changes sign
        breaks: radii that become cell edges (use the Serrin radius delta1)
    """

    def __init__(self, state: AxisymState, order: int = 4, refine: int = 1, depth: int = 4,
                 breaks: Iterable[float] = ()):
        if order < 1 or refine < 1 or depth < 0:
            raise ValueError(f"need order >= 1, refine >= 1, depth >= 0; got {order}, {refine}, {depth}")
        grid = state.grid
        self.grid = grid
        self.order = order
        reduced = {name: reduced_values(grid, getattr(state, name).values) for name in REDUCED_FIELDS}
        self._scale = {name: float(np.max(np.abs(values))) for name, values in reduced.items()}
        self._splines = {name: mirrored_spline(grid, values) for name, values in reduced.items()}

        self.r_edges = _edges(grid.r, refine, breaks)
        self.z_edges = _edges(grid.z, refine, ())
        t, w = _legendre_unit(order)
        widths_r, widths_z = np.diff(self.r_edges), np.diff(self.z_edges)
        self._r_nodes = self.r_edges[:-1, None] + widths_r[:, None] * t
        self._r_legendre = widths_r[:, None] * w
        z_nodes = (self.z_edges[:-1, None] + widths_z[:, None] * t).ravel()
        self._z_weights = (widths_z[:, None] * w).ravel()
        self._z_nodes = z_nodes
        self.base = Sample(self._splines, self._r_nodes.ravel(), z_nodes, tensor=True)

        n_r, n_z = widths_r.size, widths_z.size
        flagged = self._changes_sign({
            name: self.base(name).reshape(n_r, order, n_z, order).transpose(0, 2, 1, 3).reshape(n_r, n_z, -1)
            for name in REDUCED_FIELDS
        }) if depth > 0 else np.zeros((n_r, n_z), dtype=bool)
        self._keep = ~np.repeat(np.repeat(flagged, order, axis=0), order, axis=1)
        self._leaves = self._subdivide(flagged, depth)
        axis_leaf = self._leaves[:, 0] == 0.0
        self._axis_leaves, self._leaves = self._leaves[axis_leaf], self._leaves[~axis_leaf]
        self._leaf_sample = self._scattered(self._leaves, self._leaves[:, 0:1] + np.diff(self._leaves[:, :2]) * t)
        self._axis_cache: Dict[float, Tuple[Sample, np.ndarray, Sample, np.ndarray]] = {}
        logger.debug(f"Quadrature on {grid.shape}: {flagged.sum()} bisected cells, "
                     f"{len(self._leaves) + len(self._axis_leaves)} leaves")

    def _changes_sign(self, blocks: Dict[str, np.ndarray]) -> np.ndarray:
        """Cells where some reduced field takes both signs above its kink floor."""
        flagged = None
        floor = KINK_FLOOR * max(self._scale.values())
        for name, values in blocks.items():
            hit = ((values.min(axis=-1) < 0.0) & (values.max(axis=-1) > 0.0)
                   & (np.abs(values).max(axis=-1) > floor))
            flagged = hit if flagged is None else flagged | hit
        return flagged

    def _scattered(self, cells: np.ndarray, r_nodes: np.ndarray) -> Sample:
        t, _ = _legendre_unit(self.order)
        z_nodes = cells[:, 2:3] + np.diff(cells[:, 2:]) * t
        shape = (len(cells), self.order, self.order)
        rr = np.broadcast_to(r_nodes[:, :, None], shape)
        zz = np.broadcast_to(z_nodes[:, None, :], shape)
        return Sample(self._splines, rr, zz, tensor=False)

    def _subdivide(self, flagged: np.ndarray, depth: int) -> np.ndarray:
        i, j = np.nonzero(flagged)
        cells = np.stack([self.r_edges[i], self.r_edges[i + 1], self.z_edges[j], self.z_edges[j + 1]], axis=1)
        t, _ = _legendre_unit(self.order)
        leaves = []
        for level in range(depth):
            if cells.size == 0:
                break
            cells = _split(cells)
            if level == depth - 1:
                leaves.append(cells)
                break
            sample = self._scattered(cells, cells[:, 0:1] + np.diff(cells[:, :2]) * t)
            hit = self._changes_sign({name: sample(name).reshape(len(cells), -1) for name in REDUCED_FIELDS})
            leaves.append(cells[~hit])
            cells = cells[hit]
        return np.concatenate(leaves) if leaves else np.zeros((0, 4))

    def _axis_rules(self, kappa: float) -> Tuple[Sample, np.ndarray, Sample, np.ndarray]:
        """Gauss-Jacobi samples and radial weights on the axis cell row and on axis leaves."""
        if kappa not in self._axis_cache:
            t, w = _jacobi_unit(self.order, kappa)
            width = self.r_edges[1]
            row = Sample(self._splines, width * t, self._z_nodes, tensor=True)
            row_weights = width ** (kappa + 1.0) * w
            leaves = self._axis_leaves
            widths = leaves[:, 1:2]
            leaf = self._scattered(leaves, widths * t)
            leaf_weights = widths ** (kappa + 1.0) * w
            self._axis_cache[kappa] = (row, row_weights, leaf, leaf_weights)
        return self._axis_cache[kappa]

    def _cut_rows(self, r0: np.ndarray, r_cut: Optional[float]) -> np.ndarray:
        if r_cut is None:
            return np.ones(r0.shape)
        return (r0 < r_cut - EDGE_TOL * max(1.0, r_cut)).astype(np.float64)

    def integrate(self, integrand: Integrand, kappa: float, r_cut: Optional[float] = None) -> float:
        """
        2 pi int r^kappa integrand(sample) dr dz, over r < r_cut when given.

        Raises:
            ValueError: kappa <= -1, or r_cut is not a cell edge
            NonFiniteFieldError: the integrand is not finite
        """
        if kappa <= -1.0:
            raise ValueError(f"r^{kappa} is not integrable at the axis")
        if r_cut is not None and r_cut < self.r_edges[-1] and \
                np.min(np.abs(self.r_edges - r_cut)) > EDGE_TOL * max(1.0, r_cut):
            raise ValueError(f"r_cut = {r_cut} is not a cell edge; pass it in breaks")

        order = self.order
        off_axis = self._r_legendre[1:] * self._r_nodes[1:] ** kappa
        off_axis = (off_axis * self._cut_rows(self.r_edges[1:-1], r_cut)[:, None]).ravel()
        values = integrand(self.base)[order:]
        total = np.sum(values * (off_axis[:, None] * self._z_weights[None, :]) * self._keep[order:])

        row, row_weights, axis_leaf, axis_leaf_weights = self._axis_rules(float(kappa))
        if r_cut is None or r_cut > 0.0:
            total += np.sum(integrand(row) * (row_weights[:, None] * self._z_weights[None, :]) * self._keep[:order])

        t, w = _legendre_unit(order)
        if len(self._leaves):
            cells = self._leaves
            r_nodes = cells[:, 0:1] + np.diff(cells[:, :2]) * t
            wr = np.diff(cells[:, :2]) * w * r_nodes ** kappa * self._cut_rows(cells[:, 0], r_cut)[:, None]
            wz = np.diff(cells[:, 2:]) * w
            total += np.sum(integrand(self._leaf_sample) * wr[:, :, None] * wz[:, None, :])
        if len(self._axis_leaves):
            cells = self._axis_leaves
            wz = np.diff(cells[:, 2:]) * w
            wr = axis_leaf_weights * self._cut_rows(cells[:, 0], r_cut)[:, None]
            total += np.sum(integrand(axis_leaf) * wr[:, :, None] * wz[:, None, :])

        total = 2.0 * np.pi * float(total)
        if not np.isfinite(total):
            raise NonFiniteFieldError(f"integral of r^{kappa} F is not finite", ())
        return total

