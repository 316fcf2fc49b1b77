"""
Weighted functionals of an axisymmetric state and the energy identity terms.

Integrals go through StateQuadrature: every integrand is r^kappa times a
function of the reduced fields w = v / r, so the near-axis powers of r are
integrated exactly. |x|^(q-2) x is evaluated as sign(x)|x|^(q-1).
"""

import logging
from typing import Optional, Union

import numpy as np

from domains.exponents.schemas import CriterionParams, SerrinCondition, WeightExponents
from domains.grid.fields import AxisymState, ScalarField2D, inverse_r_power
from domains.grid.quadrature import Sample, StateQuadrature
from domains.grid.schemas import CylGrid
from .schemas import FunctionalSet, IdentityTerms, MainBalance

logger = logging.getLogger(__name__)

ExponentsLike = Union[WeightExponents, CriterionParams]

G_EXPONENT = 10.0 / 3.0
# max |eta'| = 30/16 * 2/delta1
ETA_DERIVATIVE_BOUND = 3.75
# a denominator below this fraction of its numerator's scale counts as zero
ZERO_RTOL = 1e-14

_DEFAULT_CONDITION = SerrinCondition(s=6.0, w=4.0, d=0.0, delta1=0.5)


def _exponents(params: ExponentsLike) -> WeightExponents:
    return params.exponents if isinstance(params, CriterionParams) else params


def quadrature_for(state: AxisymState, cond: Optional[SerrinCondition] = None,
                   quad: Optional[StateQuadrature] = None) -> StateQuadrature:
    """``quad`` when given, else the default rule with delta1 as a cell edge."""
    if quad is not None:
        return quad
    cond = cond or _DEFAULT_CONDITION
    return StateQuadrature(state, breaks=(cond.delta1,))


def weighted_ratio(grid: CylGrid, values: np.ndarray, beta: float) -> np.ndarray:
    """values / r^beta off the axis, 0 on it."""
    return values * inverse_r_power(grid, beta)


def signed_power(x: np.ndarray, exponent: float) -> np.ndarray:
    """sign(x)|x|^exponent, continuous at 0 for exponent > 0."""
    return np.sign(x) * np.abs(x) ** exponent


def power_of(x: np.ndarray, exponent: float) -> np.ndarray:
    """|x|^exponent, with 0 wherever x = 0 (also for negative exponents)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x != 0.0, np.abs(x) ** exponent, 0.0)


def swirl_kappa(ex: WeightExponents) -> float:
    """Power of r in r |u_theta/r^mu|^p = r^kappa |w_theta|^p."""
    return 1.0 + (1.0 - ex.mu) * ex.p


def vorticity_kappa(ex: WeightExponents) -> float:
    return 1.0 + (1.0 - ex.alpha) * ex.q


def gradient_energy(quad: StateQuadrature, name: str, beta: float, power: float) -> float:
    """
    int |grad G|^2 with G = |v / r^beta|^(power/2) for the odd field ``name``.

    With v = r w and lam = (1 - beta) power / 2, G = r^lam |w|^(power/2) and

        r |grad G|^2 = r^(2 lam - 1) |w|^(power-2) [(lam w + power/2 r w_r)^2 + (power/2 r w_z)^2].
    """
    if beta >= 1.0:
        raise ValueError(f"weighted gradient energy needs beta < 1, got {beta}")
    lam = (1.0 - beta) * power / 2.0
    half = power / 2.0

    def integrand(s: Sample) -> np.ndarray:
        w = s(name)
        bracket = (lam * w + half * s.radius * s(name, dr=1)) ** 2 + (half * s.radius * s(name, dz=1)) ** 2
        return power_of(w, power - 2.0) * bracket

    return quad.integrate(integrand, 2.0 * lam - 1.0)


def axis_integral(quad: StateQuadrature, name: str, beta: float, power: float) -> float:
    """int |v / r^beta|^power / r^2."""
    return quad.integrate(lambda s: np.abs(s(name)) ** power, (1.0 - beta) * power - 1.0)


def weighted_integral(quad: StateQuadrature, name: str, beta: float, power: float) -> float:
    """int |v / r^beta|^power for the odd field ``name``."""
    return quad.integrate(lambda s: np.abs(s(name)) ** power, 1.0 + (1.0 - beta) * power)


def eval_phi_p(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    ex = _exponents(params)
    return weighted_integral(quadrature_for(state, quad=quad), "u_theta", ex.mu, ex.p)


def eval_omega_q(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    ex = _exponents(params)
    return weighted_integral(quadrature_for(state, quad=quad), "omega_theta", ex.alpha, ex.q)


def _plus(s: Sample) -> np.ndarray:
    return np.maximum(s("u_r"), 0.0)


def _minus(s: Sample) -> np.ndarray:
    return np.maximum(-s("u_r"), 0.0)


def eval_I1(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    """int (u_r^- / r) |u_theta/r^mu|^p."""
    ex = _exponents(params)
    return quadrature_for(state, quad=quad).integrate(
        lambda s: _minus(s) * np.abs(s("u_theta")) ** ex.p, swirl_kappa(ex))


def eval_I2(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    """int (u_r^+ / r) |omega_theta/r^alpha|^q."""
    ex = _exponents(params)
    return quadrature_for(state, quad=quad).integrate(
        lambda s: _plus(s) * np.abs(s("omega_theta")) ** ex.q, vorticity_kappa(ex))


def eval_I3(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    """int (u_theta/r) d_z u_theta |Omega|^(q-2) Omega / r^alpha, Omega = omega_theta/r^alpha."""
    ex = _exponents(params)

    def integrand(s: Sample) -> np.ndarray:
        return s("u_theta") * s("u_theta", dz=1) * signed_power(s("omega_theta"), ex.q - 1.0)

    return quadrature_for(state, quad=quad).integrate(integrand, vorticity_kappa(ex))


def eval_J1plus(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    ex = _exponents(params)
    return quadrature_for(state, quad=quad).integrate(
        lambda s: _plus(s) * np.abs(s("u_theta")) ** ex.p, swirl_kappa(ex))


def eval_J2minus(state: AxisymState, params: ExponentsLike, quad: Optional[StateQuadrature] = None) -> float:
    ex = _exponents(params)
    return quadrature_for(state, quad=quad).integrate(
        lambda s: _minus(s) * np.abs(s("omega_theta")) ** ex.q, vorticity_kappa(ex))


def eval_f_serrin(state: AxisymState, cond: SerrinCondition, quad: Optional[StateQuadrature] = None) -> float:
    """
    [int_{r < delta1} |r^d u_r^+|^s]^(w/s).

    The disc edge r = delta1 is a cell edge of the quadrature, so the cutoff
    is exact rather than resolved by the grid.
    """
    quad = quadrature_for(state, cond, quad)
    inner = quad.integrate(lambda s: _plus(s) ** cond.s, 1.0 + (1.0 + cond.d) * cond.s, r_cut=cond.delta1)
    return inner ** (cond.w / cond.s)


def eval_g(state: AxisymState, quad: Optional[StateQuadrature] = None) -> float:
    """int (u_r^+)^(10/3)."""
    return quadrature_for(state, quad=quad).integrate(lambda s: _plus(s) ** G_EXPONENT, 1.0 + G_EXPONENT)


def eval_varpi(state: AxisymState, delta0: float) -> float:
    r = state.grid.r[:, None]
    return float(np.max(np.abs(r ** (1.0 - delta0) * state.u_theta.values)))


def eval_r_ut_inf(state: AxisymState) -> float:
    return float(np.max(np.abs(state.grid.r[:, None] * state.u_theta.values)))


def eta_profile(r: np.ndarray, delta1: float) -> np.ndarray:
    """Quintic smoothstep cutoff: 1 on r <= delta1/2, 0 on r >= delta1, C^2."""
    s = np.clip((np.asarray(r, dtype=np.float64) - delta1 / 2.0) / (delta1 / 2.0), 0.0, 1.0)
    return 1.0 - s ** 3 * (10.0 - 15.0 * s + 6.0 * s ** 2)


def eta_derivative(r: np.ndarray, delta1: float) -> np.ndarray:
    s = np.clip((np.asarray(r, dtype=np.float64) - delta1 / 2.0) / (delta1 / 2.0), 0.0, 1.0)
    return -30.0 * s ** 2 * (1.0 - s) ** 2 / (delta1 / 2.0)


def smooth_cutoff(grid: CylGrid, delta1: float) -> ScalarField2D:
    if delta1 <= 0:
        raise ValueError(f"delta1 must be positive, got {delta1}")
    eta = eta_profile(grid.r, delta1)
    return ScalarField2D(grid, np.broadcast_to(eta[:, None], grid.shape))


def eval_functionals(
    state: AxisymState,
    params: ExponentsLike,
    cond: SerrinCondition,
    delta0: Optional[float] = None,
    quad: Optional[StateQuadrature] = None,
) -> FunctionalSet:
    """All functionals of one state, on one quadrature rule."""
    ex = _exponents(params)
    if delta0 is None:
        delta0 = params.delta0 if isinstance(params, CriterionParams) else 0.0
    quad = quadrature_for(state, cond, quad)
    return FunctionalSet(
        t=state.t,
        phi_p=eval_phi_p(state, ex, quad),
        omega_q=eval_omega_q(state, ex, quad),
        grad_phi=gradient_energy(quad, "u_theta", ex.mu, ex.p),
        grad_omega=gradient_energy(quad, "omega_theta", ex.alpha, ex.q),
        axis_phi=axis_integral(quad, "u_theta", ex.mu, ex.p),
        axis_omega=axis_integral(quad, "omega_theta", ex.alpha, ex.q),
        I1=eval_I1(state, ex, quad),
        I2=eval_I2(state, ex, quad),
        I3=eval_I3(state, ex, quad),
        J1plus=eval_J1plus(state, ex, quad),
        J2minus=eval_J2minus(state, ex, quad),
        f_serrin=eval_f_serrin(state, cond, quad),
        g_ur=eval_g(state, quad),
        varpi=eval_varpi(state, delta0),
        r_ut_inf=eval_r_ut_inf(state),
    )


def identity_d_terms(fs0: FunctionalSet, fs1: FunctionalSet, params: ExponentsLike, nu: float) -> IdentityTerms:
    """Swirl identity from two consecutive functional sets; spatial terms averaged."""
    ex = _exponents(params)
    p, mu = ex.p, ex.mu
    dt = fs1.t - fs0.t

    def avg(name):
        return 0.5 * (getattr(fs0, name) + getattr(fs1, name))

    rate = (fs1.phi_p - fs0.phi_p) / (p * dt)
    gradient = 4.0 * (p - 1.0) * nu / p ** 2 * avg("grad_phi")
    axis = nu * (1.0 - mu ** 2) * avg("axis_phi")
    advection = (1.0 + mu) * avg("J1plus")
    rhs = (1.0 + mu) * avg("I1")
    lhs = rate + gradient + axis + advection
    return IdentityTerms(name="swirl", rate=rate, gradient=gradient, axis=axis,
                         advection=advection, rhs=rhs, lhs=lhs, residual=lhs - rhs)


def identity_i_terms(fs0: FunctionalSet, fs1: FunctionalSet, params: ExponentsLike, nu: float) -> IdentityTerms:
    """Vorticity identity, including the coupling term 2 I3 on the right."""
    ex = _exponents(params)
    q, alpha = ex.q, ex.alpha
    dt = fs1.t - fs0.t

    def avg(name):
        return 0.5 * (getattr(fs0, name) + getattr(fs1, name))

    rate = (fs1.omega_q - fs0.omega_q) / (q * dt)
    gradient = 4.0 * nu * (q - 1.0) / q ** 2 * avg("grad_omega")
    axis = nu * (1.0 - alpha ** 2) * avg("axis_omega")
    advection = (1.0 - alpha) * avg("J2minus")
    rhs = (1.0 - alpha) * avg("I2") + 2.0 * avg("I3")
    lhs = rate + gradient + axis + advection
    return IdentityTerms(name="vorticity", rate=rate, gradient=gradient, axis=axis,
                         advection=advection, rhs=rhs, lhs=lhs, residual=lhs - rhs)


def eval_identity_d_terms(state: AxisymState, state_next: AxisymState, params: ExponentsLike,
                          nu: float, cond: Optional[SerrinCondition] = None) -> IdentityTerms:
    cond = cond or _DEFAULT_CONDITION
    return identity_d_terms(eval_functionals(state, params, cond), eval_functionals(state_next, params, cond),
                            params, nu)


def eval_identity_i_terms(state: AxisymState, state_next: AxisymState, params: ExponentsLike,
                          nu: float, cond: Optional[SerrinCondition] = None) -> IdentityTerms:
    cond = cond or _DEFAULT_CONDITION
    return identity_i_terms(eval_functionals(state, params, cond), eval_functionals(state_next, params, cond),
                            params, nu)


def assemble_main(fs0: FunctionalSet, fs1: FunctionalSet, params: ExponentsLike, nu: float) -> MainBalance:
    """Combined balance built directly from the functionals (not from the two records)."""
    ex = _exponents(params)
    p, mu, q, alpha = ex.p, ex.mu, ex.q, ex.alpha
    dt = fs1.t - fs0.t

    def avg(name):
        return 0.5 * (getattr(fs0, name) + getattr(fs1, name))

    lhs = ((fs1.phi_p - fs0.phi_p) / (p * dt)
           + (fs1.omega_q - fs0.omega_q) / (q * dt)
           + 4.0 * (p - 1.0) * nu / p ** 2 * avg("grad_phi")
           + 4.0 * nu * (q - 1.0) / q ** 2 * avg("grad_omega")
           + nu * (1.0 - mu ** 2) * avg("axis_phi")
           + nu * (1.0 - alpha ** 2) * avg("axis_omega")
           + (1.0 + mu) * avg("J1plus")
           + (1.0 - alpha) * avg("J2minus"))
    rhs = (1.0 + mu) * avg("I1") + (1.0 - alpha) * avg("I2") + 2.0 * avg("I3")
    return MainBalance(lhs=lhs, rhs=rhs, residual=lhs - rhs)


def eval_al_ratio(state: AxisymState, q: float, alpha: float, quad: Optional[StateQuadrature] = None) -> float:
    """
    int |u_r/r^(1+alpha)|^q / int |omega_theta/r^alpha|^q; nan when both vanish.

    A denominator at rounding level relative to the numerator counts as zero.
    """
    quad = quadrature_for(state, quad=quad)
    num = quad.integrate(lambda s: np.abs(s("u_r")) ** q, 1.0 - alpha * q)
    den = weighted_integral(quad, "omega_theta", alpha, q)
    if den <= ZERO_RTOL * num or den == 0.0:
        return float("nan") if num == 0.0 else float("inf")
    return num / den
