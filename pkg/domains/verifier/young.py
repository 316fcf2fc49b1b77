"""
Young and Hoelder inequalities with explicit constants.
"""

from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from domains.core.errors import ParameterWindowError
from domains.grid.schemas import CylGrid

CONJUGATE_TOL = 1e-12


class YoungBound(NamedTuple):
    product: float
    eps_term: float
    const_term: float
    constant: float


def _require_conjugate(exponents: Sequence[float]) -> None:
    if any(e <= 1.0 for e in exponents):
        raise ParameterWindowError(f"Young exponents must exceed 1, got {list(exponents)}",
                                   ["exponents > 1"])
    total = sum(1.0 / e for e in exponents)
    if abs(total - 1.0) > CONJUGATE_TOL:
        raise ParameterWindowError(
            f"exponents {list(exponents)} are not conjugate (sum of reciprocals {total})",
            ["sum of reciprocal exponents = 1"],
        )


def young_constant(p_exp: float, q_exp: float, eps: float) -> float:
    """C(eps) in A B <= eps A^p + C(eps) B^q: (1/q) (eps p)^(-q/p)."""
    _require_conjugate((p_exp, q_exp))
    if eps <= 0:
        raise ParameterWindowError(f"eps must be positive, got {eps}", ["eps > 0"])
    return (eps * p_exp) ** (-q_exp / p_exp) / q_exp


def young(a: float, b: float, p_exp: float, q_exp: float, eps: float) -> YoungBound:
    """Both sides of A B <= eps A^p + C(eps) B^q for A, B >= 0."""
    if a < 0 or b < 0:
        raise ValueError(f"Young inequality needs nonnegative arguments, got {a}, {b}")
    c = young_constant(p_exp, q_exp, eps)
    return YoungBound(a * b, eps * a ** p_exp, c * b ** q_exp, c)


def multi_young_scalings(exponents: Sequence[float], eps: Sequence[float], scale: float) -> Tuple[List[float], float]:
    """
    Scalings for scale * F_1 ... F_n <= sum_k<n eps_k F_k^P_k + C F_n^P_n.

    Weighted AM-GM applied to (l_1 F_1) ... (l_{n-1} F_{n-1}) (F_n / prod l_k).

    Returns:
        ([l_1, ..., l_{n-1}], C)
    """
    _require_conjugate(exponents)
    if len(eps) != len(exponents) - 1:
        raise ValueError("need one eps per factor except the last")
    lambdas = [(e * p / scale) ** (1.0 / p) for e, p in zip(eps, exponents[:-1])]
    last = exponents[-1]
    constant = scale * float(np.prod(lambdas)) ** (-last) / last
    return lambdas, constant


def holder(grid: CylGrid, f: np.ndarray, g: np.ndarray, p_exp: float) -> Tuple[float, float]:
    """(int |f g|, ||f||_p ||g||_p') with the grid quadrature."""
    q_exp = p_exp / (p_exp - 1.0)
    _require_conjugate((p_exp, q_exp))
    w = grid.quad_weights
    lhs = float(np.sum(np.abs(f * g) * w))
    rhs = float(np.sum(np.abs(f) ** p_exp * w)) ** (1.0 / p_exp) * float(np.sum(np.abs(g) ** q_exp * w)) ** (1.0 / q_exp)
    return lhs, rhs
