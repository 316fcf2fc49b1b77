"""
Exponent ledger: the epsilon family and every admissibility window.

Windows are open unless noted. The lower end of the a-window for the I1
estimate is closed (to IDENTITY_TOL) because the epsilon family attains it
exactly at the minimal admissible delta0.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Tuple

from domains.core.errors import ParameterWindowError
from .schemas import (
    IDENTITY_TOL,
    CriterionParams,
    SerrinCondition,
    ValidationResult,
    WindowCheck,
)

logger = logging.getLogger(__name__)

EPS_MAX = 1.0 / 14.0
DELTA0_MAX = 1.0 / 3.0


def _finite(bound: float) -> Optional[float]:
    return bound if math.isfinite(bound) else None


def _open(name: str, value: float, lower: float, upper: float, note: Optional[str] = None) -> WindowCheck:
    margin = min(value - lower, upper - value)
    return WindowCheck(name=name, passed=lower < value < upper, value=value,
                       lower=_finite(lower), upper=_finite(upper), margin=margin, note=note)


def _identity(name: str, lhs: float, rhs: float, note: Optional[str] = None) -> WindowCheck:
    gap = abs(lhs - rhs)
    return WindowCheck(name=name, passed=gap <= IDENTITY_TOL, value=lhs, lower=rhs, upper=rhs,
                       margin=IDENTITY_TOL - gap, note=note)


def _result(name: str, checks: List[WindowCheck]) -> ValidationResult:
    result = ValidationResult(name=name, passed=all(c.passed for c in checks), checks=checks)
    if not result.passed:
        logger.debug(f"{name} failed: {result.violations}")
    return result


def min_admissible_delta0(eps: float) -> float:
    """Smallest delta0 compatible with the a-window for the family."""
    return (1.0 - 2.0 * eps) / (1.0 - eps) * eps


def alpha_closed_form(eps: float) -> float:
    return -2.0 * (1.0 - 2.0 * eps) * (1.0 + eps) * eps


def alpha_from_exponents(gamma: float, mu: float, q: float, a: float) -> float:
    """alpha = 2 mu - (gamma/2)(1 + mu) - (2(q-1)/q)(1 - a)."""
    return 2.0 * mu - (gamma / 2.0) * (1.0 + mu) - (2.0 * (q - 1.0) / q) * (1.0 - a)


def params_from_epsilon(eps: float, delta0: float) -> CriterionParams:
    """
    Exponents of the one-parameter family.

    Args:
        eps: family parameter in (0, 1/14)
        delta0: swirl decay exponent in (0, 1/3), at least min_admissible_delta0(eps)

    Returns:
        CriterionParams with p = 2(1-eps^2), q = 2(1-eps), mu = (1-eps)/(1+eps),
        gamma = 2(1-eps), a = 1 - 2(1-eps^2) eps and the closed-form alpha.

    Raises:
        ParameterWindowError: eps or delta0 outside its window
    """
    if not 0.0 < eps < EPS_MAX:
        raise ParameterWindowError(f"eps={eps} must lie in (0, 1/14)", ["eps in (0, 1/14)"])
    if not 0.0 < delta0 < DELTA0_MAX:
        raise ParameterWindowError(f"delta0={delta0} must lie in (0, 1/3)", ["delta0 in (0, 1/3)"])
    lowest = min_admissible_delta0(eps)
    if delta0 < lowest * (1.0 - IDENTITY_TOL):
        raise ParameterWindowError(
            f"delta0={delta0} is below ((1-2eps)/(1-eps)) eps = {lowest}",
            ["delta0 >= ((1-2eps)/(1-eps)) eps"],
            min_delta0=lowest,
        )
    return CriterionParams.build(
        gamma=2.0 * (1.0 - eps),
        q=2.0 * (1.0 - eps),
        mu=(1.0 - eps) / (1.0 + eps),
        a=1.0 - 2.0 * (1.0 - eps ** 2) * eps,
        delta0=delta0,
        eps=eps,
        alpha=alpha_closed_form(eps),
    )


def validate_prop_I3(params: CriterionParams) -> ValidationResult:
    """Hypotheses of the I3 estimate plus the two exponent identities of its proof."""
    g, q, p, mu, a, alpha = params.gamma, params.q, params.p, params.mu, params.a, params.alpha
    checks = [
        _open("gamma in (0,3)", g, 0.0, 3.0),
        _open("q in (2/(4-gamma), 2)", q, 2.0 / (4.0 - g) if g < 4.0 else 2.0, 2.0),
        _identity("p = (4-gamma) q / 2", p, (4.0 - g) * q / 2.0),
        _open("mu in (-1,1)", mu, -1.0, 1.0),
        _open("a in (0,1)", a, 0.0, 1.0),
        # cross-multiplied by (2 - q) so the check stays well conditioned as q -> 2
        _identity("[4-p-gamma] q/(2-q) = p", (4.0 - p - g) * q, p * (2.0 - q),
                  note="checked as (4-p-gamma) q = p (2-q)"),
        _identity(
            "(q/(2-q)) [2+2alpha-mu p+gamma-(4(q-1)/q) a] = p mu + 2",
            q * (2.0 + 2.0 * alpha - mu * p + g - 4.0 * (q - 1.0) / q * a),
            (p * mu + 2.0) * (2.0 - q),
            note="checked cross-multiplied by (2-q)",
        ),
    ]
    return _result("prop_I3", checks)


def validate_aq_window(q: float, alpha: float, eps0: float) -> ValidationResult:
    """A_q window for the weight r^-(2 - eps0 q), in both equivalent forms."""
    direct = _open("-2+eps0 < alpha < eps0", alpha, -2.0 + eps0, eps0)
    if q <= 1.0:
        return _result("aq_window", [
            WindowCheck(name="q > 1", passed=False, value=q, lower=1.0, margin=q - 1.0),
            direct,
        ])
    power = -q * (alpha + 2.0 / q - eps0)
    weighted = _open("-2 < -q(alpha+2/q-eps0) < 2(q-1)", power, -2.0, 2.0 * (q - 1.0))
    agree = direct.passed == weighted.passed
    if not agree:
        logger.warning(f"A_q window forms disagree at q={q}, alpha={alpha}, eps0={eps0}")
    checks = [direct, weighted]
    return ValidationResult(name="aq_window", passed=direct.passed and weighted.passed, checks=checks)


def a_window_lower(params: CriterionParams, delta0: float) -> float:
    q = params.q
    return 1.0 - (4.0 - params.gamma) * q ** 2 / (4.0 * (q - 1.0)) * delta0


def validate_prop_I1(params: CriterionParams, delta0: Optional[float] = None) -> ValidationResult:
    """a- and mu-windows of the I1 estimate, with delta0 in (0, 1/3)."""
    delta = params.delta0 if delta0 is None else delta0
    q, g, a, mu = params.q, params.gamma, params.a, params.mu
    checks = [_open("delta0 in (0,1/3)", delta, 0.0, DELTA0_MAX)]

    if q > 1.0:
        lower = a_window_lower(params, delta)
        closed_lower = lower - IDENTITY_TOL * max(1.0, abs(lower))
        checks.append(WindowCheck(
            name="a in [1-(4-gamma)q^2/(4(q-1)) delta, 1)",
            passed=closed_lower <= a < 1.0,
            value=a, lower=lower, upper=1.0,
            margin=min(a - lower, 1.0 - a),
            note="lower end closed",
        ))
    else:
        checks.append(WindowCheck(name="q > 1", passed=False, value=q, lower=1.0, margin=q - 1.0))
    checks.append(_open("a in (0,1)", a, 0.0, 1.0))

    lo = max(q * delta - 1.0, -1.0)
    hi = min(q * delta + g / (4.0 - g), 1.0)
    checks.append(_open("mu in (q delta-1, q delta+gamma/(4-gamma)) and (-1,1)", mu, lo, hi))
    return _result("prop_I1", checks)


def derived_ab(cond: SerrinCondition) -> Tuple[float, float]:
    return cond.a, cond.b


def serrin_identities(cond: SerrinCondition) -> List[WindowCheck]:
    """ab/(2(a-1)) = s, b(2-a)/(2(a-1)) = d s, 2/(b-3) = w/s."""
    a, b = derived_ab(cond)
    s, w, d = cond.s, cond.w, cond.d
    return [
        _identity("ab/(2(a-1)) = s", a * b / (2.0 * (a - 1.0)), s),
        _identity("b(2-a)/(2(a-1)) = d s", b * (2.0 - a) / (2.0 * (a - 1.0)), d * s),
        _identity("2/(b-3) = w/s", 2.0 / (b - 3.0), w / s),
    ]


def validate_serrin(cond: SerrinCondition) -> ValidationResult:
    s, w, d = cond.s, cond.w, cond.d
    checks = [
        _open("s in (3/2, inf)", s, 1.5, math.inf),
        _open("w in (1, inf)", w, 1.0, math.inf),
        _open("d in (-1,1)", d, -1.0, 1.0),
        _identity("2/w + 3/s + d = 1", 2.0 / w + 3.0 / s + d, 1.0),
        _open("delta1 > 0", cond.delta1, 0.0, math.inf),
    ]
    if all(c.passed for c in checks):
        a, b = derived_ab(cond)
        checks.append(_open("a > 1", a, 1.0, math.inf))
        checks.append(_open("b > 3", b, 3.0, math.inf))
        checks.extend(serrin_identities(cond))
    return _result("serrin", checks)


def scaling_gap_check(params: CriterionParams) -> ValidationResult:
    if params.eps is None:
        raise ParameterWindowError("scaling gap is defined for the epsilon family only", ["eps missing"])
    value = 3.0 / params.q - 1.0 - params.alpha
    bound = 0.5 + 7.0 * params.eps
    checks = [
        WindowCheck(name="3/q - 1 - alpha <= 1/2 + 7 eps", passed=value <= bound,
                    value=value, upper=bound, margin=bound - value),
        _open("1/2 + 7 eps < 1", bound, -math.inf, 1.0),
    ]
    return _result("scaling_gap", checks)


def check_serrin_scaling_gap(params: CriterionParams) -> float:
    """3/q - 1 - alpha, raising ParameterWindowError unless it is <= 1/2 + 7 eps < 1."""
    result = scaling_gap_check(params)
    if not result.passed:
        raise ParameterWindowError(
            f"scaling gap check failed: {result.violations}", result.violations
        )
    return result.checks[0].value


def validate_b_window(params: CriterionParams) -> ValidationResult:
    """b = 1 - q eps0 / 2 in (0,1), needed by the last Young step of the I1 estimate."""
    return _result("b_window", [_open("b in (0,1)", params.b, 0.0, 1.0)])


def validate_all(params: CriterionParams, cond: Optional[SerrinCondition] = None) -> List[ValidationResult]:
    """Every window the criterion needs; the b-window is reported separately."""
    results = [
        validate_prop_I3(params),
        validate_aq_window(params.q, params.alpha, params.eps0),
        validate_prop_I1(params),
    ]
    if params.eps is not None:
        results.append(scaling_gap_check(params))
    if cond is not None:
        results.append(validate_serrin(cond))
    return results


def build_report(eps: float, delta0: float, cond: Optional[SerrinCondition] = None) -> Dict[str, Any]:
    """JSON-ready report of every window with pass/fail and margins."""
    params = params_from_epsilon(eps, delta0)
    results = validate_all(params, cond)
    b_window = validate_b_window(params)
    report: Dict[str, Any] = {
        "params": params.model_dump(),
        "alpha_from_exponents": alpha_from_exponents(params.gamma, params.mu, params.q, params.a),
        "min_delta0": min_admissible_delta0(eps),
        "windows": [r.model_dump() for r in results],
        "b_window": b_window.model_dump(),
        "all_passed": all(r.passed for r in results),
    }
    if cond is not None:
        report["serrin_ab"] = list(derived_ab(cond))
    logger.info(f"Validated eps={eps}, delta0={delta0}: all_passed={report['all_passed']}")
    return report
