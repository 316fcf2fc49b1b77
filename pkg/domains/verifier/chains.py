"""
Estimate chains for I1, I2, I3 with computable constants.

Every step is a pointwise Young inequality or a Hoelder inequality, and all
integrals of one state share a StateQuadrature with positive weights, so the
steps carry over to the discrete integrals. The I1 chain routes through a
weighted estimate whose constant is calibrated on an ensemble, and the I2
chain uses the optimal Sobolev constant for H^1 into L^6 in three dimensions.
"""

import logging
import math
from typing import Iterable, List, Optional

import numpy as np

from config.settings import settings
from domains.core.errors import ConstantUnavailableError
from domains.exponents.ledger import (
    validate_aq_window,
    validate_prop_I1,
    validate_prop_I3,
    validate_serrin,
)
from domains.exponents.schemas import CriterionParams, SerrinCondition
from domains.functionals.functionals import (
    ZERO_RTOL,
    axis_integral,
    eta_profile,
    eval_g,
    eval_I1,
    eval_I3,
    eval_r_ut_inf,
    eval_varpi,
    gradient_energy,
    power_of,
    quadrature_for,
    swirl_kappa,
    weighted_integral,
    weighted_ratio,
)
from domains.grid.fields import AxisymState, ScalarField2D, integrate_values
from domains.grid.quadrature import Sample, StateQuadrature
from domains.grid.schemas import CylGrid
from domains.operators import stencils
from domains.operators.stencils import EVEN
from .ensemble import DEFAULT_GRID, ensemble
from .schemas import PASS_RTOL, AqEstimate, ConstantUsed, InequalityReport
from .young import holder, multi_young_scalings, young_constant

logger = logging.getLogger(__name__)

# [int G^6]^(1/3) <= SOBOLEV_K2 int |grad G|^2 in R^3, sharp
SOBOLEV_K2 = 1.0 / (3.0 * (math.pi / 2.0) ** (4.0 / 3.0))


def make_report(
    name: str,
    lhs: float,
    rhs: float,
    constants: Optional[List[ConstantUsed]] = None,
    note: Optional[str] = None,
    inconclusive: bool = False,
    branches: Optional[List[InequalityReport]] = None,
) -> InequalityReport:
    """lhs <= rhs up to PASS_RTOL; with branches, each branch must hold as well."""
    branches = branches or []
    margin = rhs - lhs
    passed = (not inconclusive) and math.isfinite(margin) and \
        margin >= -PASS_RTOL * max(abs(lhs), abs(rhs), 1.0) and all(b.passed for b in branches)
    report = InequalityReport(name=name, lhs=lhs, rhs=rhs, margin=margin,
                              constants_used=constants or [], passed=passed,
                              inconclusive=inconclusive, note=note, branches=branches)
    if inconclusive:
        logger.debug(f"{name}: inconclusive ({note})")
    elif passed:
        logger.debug(f"{name}: {lhs:.6e} <= {rhs:.6e}")
    else:
        logger.warning(f"{name} violated: lhs={lhs:.6e} rhs={rhs:.6e} margin={margin:.3e}")
    return report


def _inconclusive(name: str, note: str) -> InequalityReport:
    return make_report(name, 0.0, 0.0, note=note, inconclusive=True)


def _c(label: str, value: float, provenance: str = "explicit") -> ConstantUsed:
    return ConstantUsed(label=label, value=value, provenance=provenance)


def i3_gradient_term(state: AxisymState, params: CriterionParams, quad: Optional[StateQuadrature] = None) -> float:
    """int |u_theta/r^mu|^(p-2) |d_z u_theta / r^mu|^2, zero where u_theta vanishes."""
    ex = params.exponents
    return quadrature_for(state, quad=quad).integrate(
        lambda s: power_of(s("u_theta"), ex.p - 2.0) * s("u_theta", dz=1) ** 2, swirl_kappa(ex))


def i3_gradient_bound(state: AxisymState, params: CriterionParams, quad: Optional[StateQuadrature] = None) -> float:
    """(4/p^2) int |grad |u_theta/r^mu|^(p/2)|^2, which dominates i3_gradient_term."""
    ex = params.exponents
    return 4.0 / ex.p ** 2 * gradient_energy(quadrature_for(state, quad=quad), "u_theta", ex.mu, ex.p)


def i3_constant(params: CriterionParams, r_ut_inf: float, eps1: float, eps2: float, eps3: float) -> float:
    """C of the I3 estimate: Y(2,2) with eps1, then three-factor Young with eps2, eps3."""
    q, a, gamma = params.q, params.a, params.gamma
    if r_ut_inf == 0.0:
        return 0.0
    scale = r_ut_inf ** gamma / (4.0 * eps1)
    exponents = [q / (2.0 - q), q / (2.0 * (q - 1.0) * a), q / (2.0 * (q - 1.0) * (1.0 - a))]
    _, constant = multi_young_scalings(exponents, [eps2, eps3], scale)
    return constant



def verify_I3_chain(state: AxisymState, params: CriterionParams,
                    eps1: float, eps2: float, eps3: float,
                    quad: Optional[StateQuadrature] = None) -> InequalityReport:
    """
    |I3| <= eps1 int|v|^(p-2)|d_z u_theta/r^mu|^2 + eps2 int|v|^p/r^2
            + eps3 int|Omega|^q/r^2 + C int|Omega|^q

    with v = u_theta/r^mu, Omega = omega_theta/r^alpha and C built from
    ||r u_theta||_inf^gamma and the Young constants.
    """
    name = "I3"
    check = validate_prop_I3(params)
    if not check.passed:
        return _inconclusive(name, f"exponent hypotheses fail: {check.violations}")
    ex = params.exponents
    r_ut = eval_r_ut_inf(state)
    constant = i3_constant(params, r_ut, eps1, eps2, eps3)
    constants = [_c("eps1", eps1), _c("eps2", eps2), _c("eps3", eps3),
                 _c("||r u_theta||_inf", r_ut, "measured"), _c("C_I3", constant)]
    if not math.isfinite(constant):
        return make_report(name, 0.0, 0.0, constants, note="constant overflow", inconclusive=True)

    quad = quadrature_for(state, quad=quad)
    lhs = abs(eval_I3(state, ex, quad))
    rhs = (eps1 * i3_gradient_term(state, params, quad)
           + eps2 * axis_integral(quad, "u_theta", ex.mu, ex.p)
           + eps3 * axis_integral(quad, "omega_theta", ex.alpha, ex.q)
           + constant * weighted_integral(quad, "omega_theta", ex.alpha, ex.q))
    return make_report(name, lhs, rhs, constants)


def aq_ratio(state: AxisymState, q: float, alpha: float, eps0: float,
             quad: Optional[StateQuadrature] = None) -> Optional[float]:
    """
    int |u_r/r^(1+alpha)|^q r^-(2-eps0 q) / int |Omega|^q r^-(2-eps0 q), None if both vanish.

    A denominator at rounding level relative to the numerator counts as zero.
    """
    quad = quadrature_for(state, quad=quad)
    shift = 2.0 - eps0 * q
    num = quad.integrate(lambda s: np.abs(s("u_r")) ** q, 1.0 - alpha * q - shift)
    den = quad.integrate(lambda s: np.abs(s("omega_theta")) ** q, 1.0 + (1.0 - alpha) * q - shift)
    if num == 0.0 and den == 0.0:
        return None
    if den <= ZERO_RTOL * num:
        raise ConstantUnavailableError(
            "u_r is nonzero while omega_theta vanishes; the test field is not divergence-free",
            {"numerator": num, "denominator": den},
        )
    return num / den


def estimate_aq_constant(q: float, alpha: float, eps0: float, ensemble_size: int,
                         seed: Optional[int] = None, grid: CylGrid = DEFAULT_GRID,
                         states: Optional[Iterable[AxisymState]] = None) -> AqEstimate:
    """Sup of aq_ratio over a seeded ensemble, with the sup over its first half for stability."""
    window = validate_aq_window(q, alpha, eps0)
    if not window.passed:
        raise ConstantUnavailableError(
            f"A_q window fails for q={q}, alpha={alpha}, eps0={eps0}", {"violations": window.violations}
        )
    members = states if states is not None else ensemble(ensemble_size, seed, grid)
    ratios: List[float] = []
    skipped = 0
    for state in members:
        ratio = aq_ratio(state, q, alpha, eps0)
        if ratio is None:
            skipped += 1
        else:
            ratios.append(ratio)
    if not ratios:
        raise ConstantUnavailableError("every ensemble member was degenerate")
    half = ratios[: max(1, len(ratios) // 2)]
    sup, sup_half = max(ratios), max(half)
    growth = sup / sup_half - 1.0
    logger.info(f"A_q constant {sup:.6g} from {len(ratios)} states (growth {growth:.2%})")
    return AqEstimate(q=q, alpha=alpha, eps0=eps0, constant=sup, constant_first_half=sup_half,
                      growth=growth, n_used=len(ratios), n_skipped=skipped)


def i1_constant(params: CriterionParams, varpi: float, aq_constant: float,
                eps4: float, eps5: float, safety: float) -> float:
    q, b, p = params.q, params.b, params.p
    c4 = young_constant(q / (q - 1.0), q, eps4)
    scale = c4 * varpi ** p * aq_constant * safety
    if scale == 0.0:
        return 0.0
    return scale * young_constant(1.0 / b, 1.0 / (1.0 - b), eps5 / scale)


def verify_I1_chain(state: AxisymState, params: CriterionParams, delta0: Optional[float],
                    eps4: float, eps5: float, aq_constant: Optional[float] = None,
                    safety: Optional[float] = None,
                    quad: Optional[StateQuadrature] = None) -> InequalityReport:
    """
    |I1| <= eps4 int|v|^p/r^2 + eps5 int|Omega|^q/r^2 + C int|Omega|^q.

    Steps: Young(q/(q-1), q) with eps4, |u_theta|^p <= varpi^p r^-(1-delta0)p,
    the weighted u_r estimate with the calibrated constant, then
    Young(1/b, 1/(1-b)) splitting r^-(2-eps0 q) between r^-2 and 1.
    """
    name = "I1"
    delta0 = params.delta0 if delta0 is None else delta0
    safety = settings.constant_safety_factor if safety is None else safety
    if aq_constant is None:
        return _inconclusive(name, "empirical A_q constant unavailable")
    for check in (validate_prop_I1(params, delta0), validate_aq_window(params.q, params.alpha, params.eps0)):
        if not check.passed:
            return _inconclusive(name, f"{check.name} fails: {check.violations}")
    if not 0.0 < params.b < 1.0:
        return _inconclusive(name, f"b = {params.b:.6g} is outside (0,1)")

    ex = params.exponents
    varpi = eval_varpi(state, delta0)
    constant = i1_constant(params, varpi, aq_constant, eps4, eps5, safety)
    constants = [_c("eps4", eps4), _c("eps5", eps5),
                 _c("C_young", young_constant(ex.q / (ex.q - 1.0), ex.q, eps4)),
                 _c("varpi", varpi, "measured"),
                 _c("C_aq", aq_constant, "empirical"),
                 _c("safety", safety, "empirical"),
                 _c("C_I1", constant, "empirical")]
    if not math.isfinite(constant):
        return make_report(name, 0.0, 0.0, constants, note="constant overflow", inconclusive=True)

    quad = quadrature_for(state, quad=quad)
    lhs = abs(eval_I1(state, ex, quad))
    rhs = (eps4 * axis_integral(quad, "u_theta", ex.mu, ex.p)
           + eps5 * axis_integral(quad, "omega_theta", ex.alpha, ex.q)
           + constant * weighted_integral(quad, "omega_theta", ex.alpha, ex.q))
    return make_report(name, lhs, rhs, constants)


def _i2_branch_constant(a: float, b: float, eps1: float, eps2: float) -> float:
    """Constant in front of S^(2/(b-3)) int|Omega|^q after Y(a, a/(a-1)), two Hoelder steps and Y(b/3, b/(b-3))."""
    c1 = young_constant(a, a / (a - 1.0), eps1)
    c2 = young_constant(b / 3.0, b / (b - 3.0), eps2)
    return c2 * c1 ** (b / (b - 3.0))


def i2_constants(cond: SerrinCondition, eps1: float, eps2: float, sobolev_safety: float = 1.0):
    """(C for f, C for g) of the I2 estimate; eps1, eps2 are split evenly between the two branches."""
    k2 = SOBOLEV_K2 * sobolev_safety
    e1, e2 = eps1 / 2.0, eps2 / 2.0 / k2
    c_f = _i2_branch_constant(cond.a, cond.b, e1, e2)
    c_g = _i2_branch_constant(4.0, 5.0, e1, e2) * (2.0 / cond.delta1) ** (5.0 / 3.0)
    return c_f, c_g


def verify_I2_chain(state: AxisymState, cond: SerrinCondition, q: float, alpha: float,
                    eps1: float, eps2: float, sobolev_safety: Optional[float] = None) -> InequalityReport:
    """
    |I2| <= eps1 int|Omega|^q/r^2 + eps2 int|grad |Omega|^(q/2)|^2 + (C_f f + C_g g) int|Omega|^q.

    I2 is split with the cutoff eta into the near-axis part I2,0, bounded
    through the Serrin exponents (a, b), and the far part I2,1, bounded with
    a = 4, b = 5 and r^(-5/3) <= (2/delta1)^(5/3) on the support of 1 - eta.
    Each part gets half of eps1 and eps2 and is reported as a branch.
    """
    name = "I2"
    sobolev_safety = settings.constant_safety_factor if sobolev_safety is None else sobolev_safety
    check = validate_serrin(cond)
    if not check.passed:
        return _inconclusive(name, f"Serrin condition fails: {check.violations}")
    if not (q > 1.0 and -1.0 < alpha < 1.0):
        return _inconclusive(name, f"need q > 1 and alpha in (-1,1), got q={q}, alpha={alpha}")

    a, b = cond.a, cond.b
    s_chain = a * b / (2.0 * (a - 1.0))
    ds_chain = b * (2.0 - a) / (2.0 * (a - 1.0))
    power = 2.0 / (b - 3.0)
    kappa = 1.0 + (1.0 - alpha) * q
    # eta has kinks in its third derivative at delta1/2 and delta1
    quad = StateQuadrature(state, breaks=(cond.delta1 / 2.0, cond.delta1))

    def eta(s: Sample) -> np.ndarray:
        return eta_profile(s.radius, cond.delta1)

    def transport(s: Sample) -> np.ndarray:
        return np.maximum(s("u_r"), 0.0) * np.abs(s("omega_theta")) ** q

    near_lhs = quad.integrate(lambda s: eta(s) * transport(s), kappa)
    far_lhs = quad.integrate(lambda s: (1.0 - eta(s)) * transport(s), kappa)
    f_chain = quad.integrate(lambda s: (eta(s) * np.maximum(s("u_r"), 0.0)) ** s_chain,
                             1.0 + s_chain + ds_chain, r_cut=cond.delta1) ** power
    g = eval_g(state, quad)

    c_f, c_g = i2_constants(cond, eps1, eps2, sobolev_safety)
    constants = [_c("eps1", eps1), _c("eps2", eps2),
                 _c("a", a), _c("b", b),
                 _c("C_f", c_f), _c("C_g", c_g),
                 _c("Sobolev K^2", SOBOLEV_K2, "literature"),
                 _c("sobolev_safety", sobolev_safety, "empirical")]

    omega_q = weighted_integral(quad, "omega_theta", alpha, q)
    shared = (eps1 / 2.0 * axis_integral(quad, "omega_theta", alpha, q)
              + eps2 / 2.0 * gradient_energy(quad, "omega_theta", alpha, q))
    near = make_report("I2,0", near_lhs, shared + c_f * f_chain * omega_q,
                       [_c("C_f", c_f)], note=f"f={f_chain:.6g}")
    far = make_report("I2,1", far_lhs, shared + c_g * g * omega_q,
                      [_c("C_g", c_g)], note=f"g={g:.6g}")
    return make_report(name, near_lhs + far_lhs, near.rhs + far.rhs, constants,
                       note=f"f={f_chain:.6g}, g={g:.6g}", branches=[near, far])


def verify_sobolev_step(G: ScalarField2D, safety: float = 1.0) -> InequalityReport:
    """[int G^6]^(1/3) <= K^2 int |grad G|^2 for an even, decaying G."""
    grid = G.grid
    values = np.abs(G.values)
    lhs = integrate_values(grid, values ** 6) ** (1.0 / 3.0)
    grad_r = stencils.d_dr(grid, values, EVEN)
    grad_z = stencils.d_dz(grid, values)
    rhs = SOBOLEV_K2 * safety * integrate_values(grid, grad_r ** 2 + grad_z ** 2)
    return make_report("sobolev", lhs, rhs, [_c("Sobolev K^2", SOBOLEV_K2, "literature")])


def combine_I1_I3(report_I1: InequalityReport, report_I3: InequalityReport) -> InequalityReport:
    """|I1| + |I3| bounded by the sum of the two right-hand sides."""
    inconclusive = report_I1.inconclusive or report_I3.inconclusive
    notes = [n for n in (report_I1.note, report_I3.note) if n]
    return make_report(
        "I1+I3",
        report_I1.lhs + report_I3.lhs,
        report_I1.rhs + report_I3.rhs,
        list(report_I1.constants_used) + list(report_I3.constants_used),
        note="; ".join(notes) or None,
        inconclusive=inconclusive,
    )


def holder_report(state: AxisymState, q: float) -> InequalityReport:
    lhs, rhs = holder(state.grid, state.u_r.values, state.omega_theta.values, q)
    return make_report("holder", lhs, rhs, [_c("p", q), _c("p'", q / (q - 1.0))])


def verify_ensemble(params: CriterionParams, cond: SerrinCondition, ensemble_size: int,
                    seed: Optional[int] = None, eps1: float = 0.1, eps2: float = 0.1,
                    eps3: float = 0.1, eps4: float = 0.1, eps5: float = 0.1,
                    grid: CylGrid = DEFAULT_GRID) -> List[InequalityReport]:
    """
    All reports on a held-out ensemble.

    The A_q constant is calibrated on the ensemble drawn from ``seed``; the
    reports are evaluated on the disjoint ensemble drawn from ``seed + 1``.
    """
    seed = settings.default_seed if seed is None else seed
    try:
        calibration = estimate_aq_constant(params.q, params.alpha, params.eps0,
                                           ensemble_size, seed, grid)
        aq_constant: Optional[float] = calibration.constant
    except ConstantUnavailableError as e:
        logger.warning(f"A_q calibration unavailable: {e.message}")
        aq_constant = None

    reports: List[InequalityReport] = []
    for state in ensemble(ensemble_size, seed + 1, grid):
        quad = quadrature_for(state, cond)
        r3 = verify_I3_chain(state, params, eps1, eps2, eps3, quad)
        r1 = verify_I1_chain(state, params, params.delta0, eps4, eps5, aq_constant, quad=quad)
        reports.extend([
            holder_report(state, params.q),
            r3,
            r1,
            combine_I1_I3(r1, r3),
            verify_I2_chain(state, cond, params.q, params.alpha, eps1, eps2),
            verify_sobolev_step(ScalarField2D(
                grid, np.abs(weighted_ratio(grid, state.omega_theta.values, params.alpha)) ** (params.q / 2.0)
            )),
        ])
    failed = sum(1 for r in reports if not r.passed and not r.inconclusive)
    logger.info(f"Verified {len(reports)} inequalities, {failed} violated")
    return reports
