"""
Pressure projection onto discretely divergence-free (u_r, u_z).

The constrained rows are the nodes i in [0, n_r-2], j in [1, n_z-2], where the
discrete divergence uses the same conservative stencil as ``divergence_cyl``.
The correction acts on the interior velocity nodes only; boundary values are
left as the caller set them and enter through the right-hand side.

Rows are scaled by r_i (dr/4 on the axis) and the correction is weighted by
the same factors, so the scaled transpose is a consistent discrete -grad and
the normal matrix D M^-1 D^T is symmetric positive definite for even n_z.
"""

import logging
from functools import lru_cache
from typing import List, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as spla

from domains.core.errors import GridMismatchError, PoissonConvergenceError
from domains.grid.schemas import CylGrid
from domains.operators.stencils import axial_first, radial_conservative

logger = logging.getLogger(__name__)


def constrained_mask(grid: CylGrid) -> np.ndarray:
    mask = np.zeros(grid.shape, dtype=bool)
    mask[:-1, 1:-1] = True
    return mask


def interior_divergence(grid: CylGrid, u_r: np.ndarray, u_z: np.ndarray) -> float:
    """max |div u| over the constrained rows."""
    kr, kz = _divergence_blocks(grid)
    div = (kr @ u_r.ravel() + kz @ u_z.ravel()).reshape(grid.shape)
    return float(np.max(np.abs(div[constrained_mask(grid)])))


@lru_cache(maxsize=16)
def _divergence_blocks(grid: CylGrid) -> Tuple[sparse.csr_matrix, sparse.csr_matrix]:
    kr = sparse.kron(radial_conservative(grid.n_r, grid.dr), sparse.identity(grid.n_z), format="csr")
    kz = sparse.kron(sparse.identity(grid.n_r), axial_first(grid.n_z, grid.dz), format="csr")
    return kr, kz


class PressureProjector:
    """Cached factorization of the projection system for one grid."""

    def __init__(self, grid: CylGrid, tol: float, max_refinements: int = 20):
        if grid.n_z % 2:
            raise GridMismatchError(
                f"pressure projection needs an even n_z, got n_z={grid.n_z}",
                {"n_z": grid.n_z},
            )
        self.grid = grid
        self.tol = tol
        self.max_refinements = max_refinements

        n_r, n_z = grid.shape
        flat = np.arange(n_r * n_z).reshape(grid.shape)
        self._rows = flat[constrained_mask(grid)]
        dof_r = np.zeros(grid.shape, dtype=bool)
        dof_r[1:-1, 1:-1] = True
        self._dof_r = flat[dof_r]
        self._dof_z = flat[constrained_mask(grid)]

        scale = np.broadcast_to(_row_scale(grid)[:, None], grid.shape).ravel()
        self._row_scale = scale[self._rows]

        kr, kz = _divergence_blocks(grid)
        s = sparse.diags(self._row_scale)
        self._dr = (s @ kr[self._rows][:, self._dof_r]).tocsr()
        self._dz = (s @ kz[self._rows][:, self._dof_z]).tocsr()
        self._inv_mr = 1.0 / scale[self._dof_r]
        self._inv_mz = 1.0 / scale[self._dof_z]

        self.matrix = (
            self._dr @ sparse.diags(self._inv_mr) @ self._dr.T
            + self._dz @ sparse.diags(self._inv_mz) @ self._dz.T
        ).tocsc()
        try:
            self._lu = spla.splu(self.matrix)
        except RuntimeError as e:
            logger.warning(f"splu failed ({e}); falling back to conjugate gradients")
            self._lu = None
        # residual target that bounds the unscaled divergence by tol
        self._target = tol * grid.dr / 4.0
        logger.debug(f"Projector ready for {grid.shape}, {len(self._rows)} constrained rows")

    def _solve(self, rhs: np.ndarray) -> np.ndarray:
        if self._lu is not None:
            return self._lu.solve(rhs)
        sol, info = spla.cg(self.matrix, rhs, rtol=1e-14, maxiter=10 * len(rhs))
        if info < 0:
            raise PoissonConvergenceError(f"conjugate gradients failed with info={info}", [])
        return sol

    def project(self, u_r: np.ndarray, u_z: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, List[float]]:
        """
        Remove the discrete gradient part of (u_r, u_z).

        Returns:
            (u_r, u_z, lam, residual_history), lam on the full grid with
            constrained rows filled and the rest copied from the nearest row.
        """
        kr, kz = _divergence_blocks(self.grid)
        div = kr @ u_r.ravel() + kz @ u_z.ravel()
        rhs = self._row_scale * div[self._rows]
        if not np.any(rhs):
            return u_r.copy(), u_z.copy(), np.zeros(self.grid.shape), [0.0]

        lam = self._solve(rhs)
        history: List[float] = []
        for sweep in range(self.max_refinements):
            residual = rhs - self.matrix @ lam
            norm = float(np.max(np.abs(residual)))
            history.append(norm)
            logger.debug(f"projection sweep {sweep}: residual {norm:.3e}")
            if norm <= self._target:
                break
            lam = lam + self._solve(residual)
        else:
            raise PoissonConvergenceError(
                f"projection residual {history[-1]:.3e} above target {self._target:.3e}",
                history,
            )

        new_r = u_r.ravel().copy()
        new_z = u_z.ravel().copy()
        new_r[self._dof_r] -= self._inv_mr * (self._dr.T @ lam)
        new_z[self._dof_z] -= self._inv_mz * (self._dz.T @ lam)

        lam_full = np.zeros(u_r.size)
        lam_full[self._rows] = lam
        lam_full = _extend_to_boundary(lam_full.reshape(self.grid.shape))
        return new_r.reshape(self.grid.shape), new_z.reshape(self.grid.shape), lam_full, history


def _row_scale(grid: CylGrid) -> np.ndarray:
    scale = grid.r.copy()
    scale[0] = grid.dr / 4.0
    return scale


def _extend_to_boundary(values: np.ndarray) -> np.ndarray:
    values[:, 0] = values[:, 1]
    values[:, -1] = values[:, -2]
    values[-1, :] = values[-2, :]
    return values


@lru_cache(maxsize=8)
def get_projector(grid: CylGrid, tol: float, max_refinements: int = 20) -> PressureProjector:
    return PressureProjector(grid, tol, max_refinements)
