"""
Manufactured axisymmetric solution with symbolically derived forcing.

Streamfunction psi = r^2 exp(-r^2 - z^2) T(t), T = exp(-t), gives the
divergence-free pair u_r = -(1/r) d_z psi, u_z = (1/r) d_r psi. Swirl and
pressure are chosen independently:

    u_r     = 2 r z E T
    u_z     = (2 - 2 r^2) E T
    u_theta = r E T
    p       = E T^2,          E = exp(-r^2 - z^2)

The forcing is whatever the momentum equations leave over when these fields
are substituted, so they solve the forced system exactly.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np
import sympy as sp

from domains.grid.schemas import CylGrid

logger = logging.getLogger(__name__)

_r, _z, _t, _nu = sp.symbols("r z t nu", real=True)


def _exact_expressions():
    envelope = sp.exp(-_r ** 2 - _z ** 2)
    decay = sp.exp(-_t)
    psi = _r ** 2 * envelope * decay
    u_r = sp.simplify(-sp.diff(psi, _z) / _r)
    u_z = sp.simplify(sp.diff(psi, _r) / _r)
    u_theta = _r * envelope * decay
    p = envelope * decay ** 2
    return u_r, u_theta, u_z, p


def _forcing_expressions(u_r, u_theta, u_z, p):
    def advect(f):
        return u_r * sp.diff(f, _r) + u_z * sp.diff(f, _z)

    def lap_axial(f):
        return sp.diff(f, _r, 2) + sp.diff(f, _r) / _r + sp.diff(f, _z, 2)

    f_r = sp.diff(u_r, _t) + advect(u_r) - u_theta ** 2 / _r + sp.diff(p, _r) \
        - _nu * (lap_axial(u_r) - u_r / _r ** 2)
    f_theta = sp.diff(u_theta, _t) + advect(u_theta) + u_r * u_theta / _r \
        - _nu * (lap_axial(u_theta) - u_theta / _r ** 2)
    f_z = sp.diff(u_z, _t) + advect(u_z) + sp.diff(p, _z) - _nu * lap_axial(u_z)
    return tuple(sp.simplify(sp.cancel(sp.expand(e))) for e in (f_r, f_theta, f_z))


def _vectorize(expr, args) -> Callable:
    fn = sp.lambdify(args, expr, modules="numpy")

    def evaluate(*values):
        out = fn(*values)
        return np.broadcast_to(np.asarray(out, dtype=np.float64), np.broadcast(*values[:2]).shape).copy()

    return evaluate


@dataclass
class ManufacturedSolution:
    """Exact fields and forcing, evaluated on the nodes of a grid."""
    grid: CylGrid
    nu: float
    _fields: Tuple[Callable, ...] = field(init=False, repr=False)
    _forcing: Tuple[Callable, ...] = field(init=False, repr=False)

    def __post_init__(self):
        exact = _exact_expressions()
        forcing = _forcing_expressions(*exact)
        self._fields = tuple(_vectorize(e, (_r, _z, _t)) for e in exact)
        self._forcing = tuple(_vectorize(e, (_r, _z, _t, _nu)) for e in forcing)
        self._mesh = self.grid.mesh()
        logger.debug("Manufactured forcing derived symbolically")

    def fields(self, t: float) -> Dict[str, np.ndarray]:
        rr, zz = self._mesh
        u_r, u_theta, u_z, p = (fn(rr, zz, t) for fn in self._fields)
        # the axis line is exact for u_r, u_theta; pin it against rounding
        u_r[0, :] = 0.0
        u_theta[0, :] = 0.0
        return {"u_r": u_r, "u_theta": u_theta, "u_z": u_z, "pressure": p}

    def velocity(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        f = self.fields(t)
        return f["u_r"], f["u_theta"], f["u_z"]

    def forcing(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        rr, zz = self._mesh
        # axis row sampled just off r = 0 in case a 1/r factor survived simplification
        rr = rr.copy()
        rr[0, :] = _AXIS_OFFSET
        f_r, f_theta, f_z = (fn(rr, zz, t, self.nu) for fn in self._forcing)
        f_r[0, :] = 0.0
        f_theta[0, :] = 0.0
        return f_r, f_theta, f_z


_AXIS_OFFSET = 1e-6
