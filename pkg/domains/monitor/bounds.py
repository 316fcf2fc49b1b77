"""
Gronwall-type bounds on y = int|u_theta/r^mu|^p + int|omega_theta/r^alpha|^q.
"""

import logging

import numpy as np
from scipy.integrate import cumulative_trapezoid

logger = logging.getLogger(__name__)


def ln_plus(x):
    """max(ln x, 0), with ln_plus(0) = 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    big = x > 1.0
    out[big] = np.log(x[big])
    return out


def _cumulative(t: np.ndarray, series: np.ndarray) -> np.ndarray:
    if t.size < 2:
        return np.zeros_like(series)
    return cumulative_trapezoid(series, t, initial=0.0)


def gronwall_bound(t, series, phi0: float, omega0: float, constant: float) -> np.ndarray:
    """
    (phi0 + omega0) exp(C int_0^t series) with the trapezoid rule on the samples.

    Args:
        t: sample times, increasing
        series: samples of 1 + f + g, nonnegative
        phi0, omega0: the two weighted integrals at t[0] (already raised to p and q)
        constant: C of the differential inequality
    """
    t = np.asarray(t, dtype=np.float64)
    series = np.asarray(series, dtype=np.float64)
    if np.any(series < 0):
        raise ValueError("Gronwall series must be nonnegative")
    with np.errstate(over="ignore"):
        return (phi0 + omega0) * np.exp(constant * _cumulative(t, series))


def loglog_gronwall(t, series, y_obs, phi0: float, omega0: float, constant: float) -> np.ndarray:
    """
    Bound from d/dt ln(1 + ln+ y) <= C series / (1 + ln+ y).

    Until ln+ y_obs first becomes positive the plain Gronwall value is
    returned; from then on exp(exp(L) - 1), which may lie above or below the
    plain value. Overflow gives inf.
    """
    t = np.asarray(t, dtype=np.float64)
    series = np.asarray(series, dtype=np.float64)
    y_obs = np.asarray(y_obs, dtype=np.float64)
    plain = gronwall_bound(t, series, phi0, omega0, constant)

    denominator = 1.0 + ln_plus(y_obs)
    log_level = np.log1p(ln_plus(phi0 + omega0)) + constant * _cumulative(t, series / denominator)
    with np.errstate(over="ignore"):
        double_log = np.exp(np.expm1(log_level))
    active = np.logical_or.accumulate(ln_plus(y_obs) > 0.0)
    bound = np.where(active, double_log, plain)
    if not np.all(np.isfinite(bound)):
        logger.warning(f"Double-log bound overflows from t = {t[~np.isfinite(bound)][0]:.6g}")
    return bound
