"""
Quadrature oracle for the functionals.

Every functional of an ensemble state is evaluated twice on the same
interpolated fields: with the production rule and with an independent
reference rule of higher Gauss order on cells refined ``factor`` times.
Both rules carry the Serrin radius delta1 as a cell edge, so the disc
cutoff of f is exact in both.
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np

from config.settings import settings
from domains.exponents.schemas import CriterionParams, SerrinCondition
from domains.functionals.functionals import eval_functionals, quadrature_for, signed_power, vorticity_kappa
from domains.grid.quadrature import StateQuadrature
from domains.grid.schemas import CylGrid
from .ensemble import DEFAULT_GRID, random_state

logger = logging.getLogger(__name__)

COMPARED = ("phi_p", "omega_q", "grad_phi", "grad_omega", "axis_phi", "axis_omega",
            "I1", "I2", "I3", "f_serrin", "g_ur")

REFERENCE_ORDER = 5
REFERENCE_DEPTH = 5


def _relative(a: float, b: float, scale: float = 0.0) -> float:
    scale = max(abs(a), abs(b), scale)
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def reference_quadrature(state, cond: SerrinCondition, factor: int) -> StateQuadrature:
    return StateQuadrature(state, order=REFERENCE_ORDER, refine=factor, depth=REFERENCE_DEPTH,
                           breaks=(cond.delta1,))


def quadrature_oracle(params: CriterionParams, cond: SerrinCondition, size: int = 20,
                      seed: Optional[int] = None, factor: int = 4,
                      grid: CylGrid = DEFAULT_GRID) -> List[Dict[str, Any]]:
    """
    One entry per (state, functional): production value, reference value and
    their relative difference. I3 is signed, so its difference is measured
    against the integral of its absolute integrand.
    """
    seed = settings.default_seed if seed is None else seed
    rng = np.random.default_rng(seed)
    ex = params.exponents
    entries: List[Dict[str, Any]] = []
    for index in range(size):
        state = random_state(grid, rng)
        reference = reference_quadrature(state, cond, factor)
        value = eval_functionals(state, params, cond, quad=quadrature_for(state, cond))
        refined = eval_functionals(state, params, cond, quad=reference)
        i3_scale = reference.integrate(
            lambda s: np.abs(s("u_theta") * s("u_theta", dz=1) * signed_power(s("omega_theta"), ex.q - 1.0)),
            vorticity_kappa(ex))
        for name in COMPARED:
            a, b = getattr(value, name), getattr(refined, name)
            scale = i3_scale if name == "I3" else 0.0
            entries.append({"state": index, "functional": name, "value": a,
                            "refined": b, "relative_difference": _relative(a, b, scale)})
    worst = max((e["relative_difference"] for e in entries), default=0.0)
    logger.info(f"Quadrature oracle on {size} state(s), reference x{factor}: worst relative difference {worst:.3e}")
    return entries
