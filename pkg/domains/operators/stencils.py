"""
One-dimensional finite-difference matrices and their application to node arrays.

Arrays are shaped (n_r, n_z). A radial matrix acts as ``Dr @ F``, an axial
matrix as ``(Dz @ F.T).T``. Radial matrices encode the axis through parity
ghost nodes f(-r) = +/- f(r); the outer radius and both z ends use one-sided
second-order closures.
"""

from functools import lru_cache

import numpy as np
from scipy import sparse

from domains.grid.schemas import CylGrid

ODD = "odd"
EVEN = "even"

# one-sided second-order closures at the upper end of a line
_FIRST_ONE_SIDED = (3.0, -4.0, 1.0)
_SECOND_ONE_SIDED = (2.0, -5.0, 4.0, -1.0)


def _check_parity(parity: str) -> None:
    if parity not in (ODD, EVEN):
        raise ValueError(f"parity must be '{ODD}' or '{EVEN}', got {parity!r}")


def _interior_first(n: int, h: float) -> sparse.lil_matrix:
    m = sparse.lil_matrix((n, n))
    for i in range(1, n - 1):
        m[i, i - 1] = -0.5 / h
        m[i, i + 1] = 0.5 / h
    return m


def _interior_second(n: int, h: float) -> sparse.lil_matrix:
    m = sparse.lil_matrix((n, n))
    for i in range(1, n - 1):
        m[i, i - 1] = 1.0 / h ** 2
        m[i, i] = -2.0 / h ** 2
        m[i, i + 1] = 1.0 / h ** 2
    return m


def _close_upper_first(m, n: int, h: float) -> None:
    for k, c in enumerate(_FIRST_ONE_SIDED):
        m[n - 1, n - 1 - k] = c / (2.0 * h)


def _close_upper_second(m, n: int, h: float) -> None:
    for k, c in enumerate(_SECOND_ONE_SIDED):
        m[n - 1, n - 1 - k] = c / h ** 2


@lru_cache(maxsize=64)
def axial_first(n: int, h: float) -> sparse.csr_matrix:
    m = _interior_first(n, h)
    for k, c in enumerate(_FIRST_ONE_SIDED):
        m[0, k] = -c / (2.0 * h)
    _close_upper_first(m, n, h)
    return m.tocsr()


@lru_cache(maxsize=64)
def axial_second(n: int, h: float) -> sparse.csr_matrix:
    m = _interior_second(n, h)
    for k, c in enumerate(_SECOND_ONE_SIDED):
        m[0, k] = c / h ** 2
    _close_upper_second(m, n, h)
    return m.tocsr()


@lru_cache(maxsize=64)
def radial_first(n: int, h: float, parity: str) -> sparse.csr_matrix:
    """d/dr. Axis row: f1/h for odd fields (ghost -f1, f0 = 0), zero for even ones."""
    _check_parity(parity)
    m = _interior_first(n, h)
    if parity == ODD:
        m[0, 1] = 1.0 / h
    _close_upper_first(m, n, h)
    return m.tocsr()


@lru_cache(maxsize=64)
def radial_second(n: int, h: float, parity: str) -> sparse.csr_matrix:
    """d2/dr2 with the parity ghost at the axis."""
    _check_parity(parity)
    m = _interior_second(n, h)
    if parity == ODD:
        m[0, 0] = -2.0 / h ** 2
    else:
        m[0, 0] = -2.0 / h ** 2
        m[0, 1] = 2.0 / h ** 2
    _close_upper_second(m, n, h)
    return m.tocsr()


def _inv_r(n: int, h: float) -> np.ndarray:
    out = np.zeros(n)
    out[1:] = 1.0 / (np.arange(1, n) * h)
    return out


@lru_cache(maxsize=64)
def radial_conservative(n: int, h: float) -> sparse.csr_matrix:
    """(1/r) d/dr (r f) for an odd field; axis row is the limit 2 f1/h."""
    r = np.arange(n) * h
    m = sparse.lil_matrix((n, n))
    for i in range(1, n - 1):
        m[i, i - 1] = -r[i - 1] / (2.0 * h * r[i])
        m[i, i + 1] = r[i + 1] / (2.0 * h * r[i])
    for k, c in enumerate(_FIRST_ONE_SIDED):
        m[n - 1, n - 1 - k] = c * r[n - 1 - k] / (2.0 * h * r[n - 1])
    m[0, 1] = 2.0 / h
    return m.tocsr()


@lru_cache(maxsize=64)
def radial_swirl_laplacian(n: int, h: float) -> sparse.csr_matrix:
    """f_rr + f_r/r - f/r^2 for an odd field; the axis row is zero."""
    inv_r = sparse.diags(_inv_r(n, h))
    m = (radial_second(n, h, ODD) + inv_r @ radial_first(n, h, ODD) - inv_r @ inv_r).tolil()
    m[0, :] = 0.0
    return m.tocsr()


@lru_cache(maxsize=64)
def radial_axial_laplacian(n: int, h: float) -> sparse.csr_matrix:
    """f_rr + f_r/r for an even field; at the axis the limit 2 f_rr."""
    inv_r = sparse.diags(_inv_r(n, h))
    m = (radial_second(n, h, EVEN) + inv_r @ radial_first(n, h, EVEN)).tolil()
    m[0, 0] = -4.0 / h ** 2
    m[0, 1] = 4.0 / h ** 2
    return m.tocsr()


def apply_r(matrix: sparse.spmatrix, values: np.ndarray) -> np.ndarray:
    return np.asarray(matrix @ values)


def apply_z(matrix: sparse.spmatrix, values: np.ndarray) -> np.ndarray:
    return np.asarray(matrix @ values.T).T


# Array-level operators used by the solver and the functionals.

def d_dr(grid: CylGrid, values: np.ndarray, parity: str) -> np.ndarray:
    return apply_r(radial_first(grid.n_r, grid.dr, parity), values)


def d_dz(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    return apply_z(axial_first(grid.n_z, grid.dz), values)


def d2_dz2(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    return apply_z(axial_second(grid.n_z, grid.dz), values)


def conservative_radial(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    return apply_r(radial_conservative(grid.n_r, grid.dr), values)


def swirl_laplacian_values(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    return apply_r(radial_swirl_laplacian(grid.n_r, grid.dr), values) + d2_dz2(grid, values)


def axial_laplacian_values(grid: CylGrid, values: np.ndarray) -> np.ndarray:
    return apply_r(radial_axial_laplacian(grid.n_r, grid.dr), values) + d2_dz2(grid, values)


def divergence_values(grid: CylGrid, u_r: np.ndarray, u_z: np.ndarray) -> np.ndarray:
    return conservative_radial(grid, u_r) + d_dz(grid, u_z)
