"""
Monitored simulation runs.

A run advances the solver, records the functionals every ``cadence`` steps,
assembles both sides of the differential inequality

    d/dt Phi + d/dt Omega + (half of each dissipation term) <= C (1 + f + g) Omega

and tracks the plain and double-log Gronwall bounds built from it.
"""

import logging
import math
from datetime import datetime, timezone
from typing import Dict, List, Optional, Tuple

import numpy as np

from config.settings import settings
from domains.core.errors import ConstantUnavailableError, LabError, ParameterWindowError
from domains.exponents.ledger import params_from_epsilon, validate_all, validate_b_window
from domains.exponents.schemas import CriterionParams, SerrinCondition
from domains.functionals.functionals import (
    assemble_main,
    eval_al_ratio,
    eval_functionals,
    eval_r_ut_inf,
    eval_varpi,
    identity_d_terms,
    identity_i_terms,
)
from domains.functionals.schemas import FunctionalSet
from domains.grid.fields import AxisymState
from domains.solver.initial_data import make_initial_state
from domains.solver.solver import kinetic_energy, step
from domains.verifier.chains import estimate_aq_constant, i1_constant, i2_constants, i3_constant
from domains.verifier.schemas import AqEstimate, ConstantUsed
from .bounds import gronwall_bound, loglog_gronwall
from .persistence import SERIES_FILE, SeriesWriter, run_dir, save_checkpoint, write_meta
from .schemas import (
    ComposedConstant,
    CriterionConfig,
    MonitorRecord,
    RunConfig,
    RunResult,
    Verdict,
    VerdictCheck,
)

logger = logging.getLogger(__name__)

AL_GROWTH_LIMIT = 10.0
BOUND_RTOL = 1e-10
# growth of the Gronwall bound over y(0) beyond which it says nothing about the run
BOUND_GROWTH_LIMIT = 1e12
# |residual| / (sum of term magnitudes) of an energy identity on a resolved run
IDENTITY_RTOL = 0.05


def criterion_params_from(criterion: CriterionConfig) -> CriterionParams:
    params = params_from_epsilon(criterion.eps, criterion.delta0)
    if criterion.alpha is not None:
        params = params.model_copy(update={"alpha": criterion.alpha})
    return params


def criterion_params(cfg: RunConfig) -> CriterionParams:
    return criterion_params_from(cfg.criterion)


def monitor_epsilons(params: CriterionParams, nu: float) -> Dict[str, float]:
    """
    Young epsilons that let half of each dissipation term absorb the chains.

    The I3 gradient term takes half of the swirl gradient dissipation; the
    swirl axis term is shared equally by I3 and I1; the vorticity axis term is
    shared in thirds by I3, I1 and I2; I2 takes half of the vorticity gradient
    dissipation.
    """
    p, mu, q, alpha = params.p, params.mu, params.q, params.alpha
    if not (abs(mu) < 1.0 and abs(alpha) < 1.0 and p > 1.0 and q > 1.0):
        raise ConstantUnavailableError(
            "dissipation weights are not positive",
            {"p": p, "mu": mu, "q": q, "alpha": alpha},
        )
    share = q * nu * (1.0 - alpha ** 2) / 6.0
    return {
        "I3_eps1": (p - 1.0) * nu * p / (4.0 * q),
        "I3_eps2": p * nu * (1.0 - mu ** 2) / (8.0 * q),
        "I3_eps3": share / (2.0 * q),
        "I1_eps4": nu * (1.0 - mu) / 4.0,
        "I1_eps5": share / (p * (1.0 + mu)),
        "I2_eps1": share / (q * (1.0 - alpha)),
        "I2_eps2": 2.0 * (q - 1.0) * nu / (q ** 2 * (1.0 - alpha)),
    }


def compose_constant(params: CriterionParams, cond: SerrinCondition, state: AxisymState, nu: float,
                     aq: Optional[AqEstimate], safety: Optional[float] = None) -> ComposedConstant:
    """
    C of the differential inequality from the three chain constants.

    ||r u_theta||_inf and varpi are measured on ``state`` (the initial data).
    """
    safety = settings.constant_safety_factor if safety is None else safety
    if aq is None:
        raise ConstantUnavailableError("A_q constant was not calibrated")
    if not 0.0 < params.b < 1.0:
        raise ConstantUnavailableError(f"b = {params.b:.6g} is outside (0,1)", {"b": params.b})
    eps = monitor_epsilons(params, nu)
    p, mu, q, alpha = params.p, params.mu, params.q, params.alpha

    r_ut = eval_r_ut_inf(state)
    varpi = eval_varpi(state, params.delta0)
    c3 = i3_constant(params, r_ut, eps["I3_eps1"], eps["I3_eps2"], eps["I3_eps3"])
    c1 = i1_constant(params, varpi, aq.constant, eps["I1_eps4"], eps["I1_eps5"], 1.0)
    c_f, c_g = i2_constants(cond, eps["I2_eps1"], eps["I2_eps2"])

    components = {
        "swirl": 2.0 * q * c3 + p * (1.0 + mu) * c1,
        "serrin_f": q * (1.0 - alpha) * c_f,
        "serrin_g": q * (1.0 - alpha) * c_g,
    }
    value = safety * max(components.values())
    if not math.isfinite(value):
        raise ConstantUnavailableError("composed constant overflows", components)
    used = [
        ConstantUsed(label="||r u_theta||_inf(0)", value=r_ut, provenance="measured"),
        ConstantUsed(label="varpi(0)", value=varpi, provenance="measured"),
        ConstantUsed(label="C_I3", value=c3, provenance="explicit"),
        ConstantUsed(label="C_aq", value=aq.constant, provenance="empirical"),
        ConstantUsed(label="C_I1", value=c1, provenance="empirical"),
        ConstantUsed(label="C_I2_f", value=c_f, provenance="literature"),
        ConstantUsed(label="C_I2_g", value=c_g, provenance="literature"),
        ConstantUsed(label="safety", value=safety, provenance="empirical"),
    ]
    logger.info(f"Composed constant C = {value:.6g} ({components})")
    return ComposedConstant(value=value, epsilons=eps, components=components, constants_used=used)


def _calibrate(params: CriterionParams, cfg: RunConfig, seed: int) -> Optional[AqEstimate]:
    size = cfg.monitor.calibration_size or settings.calibration_ensemble_size
    try:
        return estimate_aq_constant(params.q, params.alpha, params.eps0, size, seed)
    except ConstantUnavailableError as e:
        logger.warning(f"A_q calibration failed: {e.message}")
        return None


def bf_sides(fs0: FunctionalSet, fs1: FunctionalSet, params: CriterionParams, nu: float,
             constant: float) -> Tuple[float, float]:
    """Both sides of the differential inequality between two recorded states."""
    d = identity_d_terms(fs0, fs1, params, nu)
    i = identity_i_terms(fs0, fs1, params, nu)
    p, q = params.p, params.q
    lhs = (p * d.rate + q * i.rate
           + 0.5 * (p * (d.gradient + d.axis) + q * (i.gradient + i.axis)))
    mid_f = 0.5 * (fs0.f_serrin + fs1.f_serrin)
    mid_g = 0.5 * (fs0.g_ur + fs1.g_ur)
    rhs = constant * (1.0 + mid_f + mid_g) * 0.5 * (fs0.omega_q + fs1.omega_q)
    return lhs, rhs


class _Tracker:
    """Accumulates the row samples the bounds are integrated over."""

    def __init__(self, constant: float):
        self.constant = constant
        self.t: List[float] = []
        self.series: List[float] = []
        self.y: List[float] = []
        self.phi0 = self.omega0 = 0.0

    def add(self, fs: FunctionalSet) -> Tuple[float, float]:
        if not self.t:
            self.phi0, self.omega0 = fs.phi_p, fs.omega_q
        self.t.append(fs.t)
        self.series.append(1.0 + fs.f_serrin + fs.g_ur)
        self.y.append(fs.phi_p + fs.omega_q)
        plain = gronwall_bound(self.t, self.series, self.phi0, self.omega0, self.constant)
        double = loglog_gronwall(self.t, self.series, self.y, self.phi0, self.omega0, self.constant)
        return float(plain[-1]), float(double[-1])


def make_record(state: AxisymState, fs: FunctionalSet, fs_prev: Optional[FunctionalSet],
                params: CriterionParams, nu: float, constant: float, tracker: _Tracker) -> MonitorRecord:
    if fs_prev is None:
        d_res = i_res = d_scale = i_scale = gap = bf_lhs = bf_rhs = math.nan
    else:
        d = identity_d_terms(fs_prev, fs, params, nu)
        i = identity_i_terms(fs_prev, fs, params, nu)
        main = assemble_main(fs_prev, fs, params, nu)
        d_res, i_res = d.residual, i.residual
        d_scale, i_scale = d.scale, i.scale
        gap = abs(d.lhs + i.lhs - main.lhs) + abs(d.rhs + i.rhs - main.rhs)
        bf_lhs, bf_rhs = bf_sides(fs_prev, fs, params, nu, constant)
    plain, double = tracker.add(fs)
    return MonitorRecord(
        **fs.model_dump(),
        kinetic_energy=kinetic_energy(state),
        al_ratio=eval_al_ratio(state, params.q, params.alpha),
        identity_d_residual=d_res,
        identity_i_residual=i_res,
        identity_d_scale=d_scale,
        identity_i_scale=i_scale,
        bookkeeping_gap=gap,
        bf_lhs=bf_lhs,
        bf_rhs=bf_rhs,
        gronwall_bound=plain,
        loglog_bound=double,
    )


def _meta(cfg: RunConfig, name: str, params: CriterionParams, seed: int,
          aq: Optional[AqEstimate], composed: Optional[ComposedConstant]) -> Dict:
    return {
        "name": name,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "seed": seed,
        "config": cfg.model_dump(),
        "params": params.model_dump(),
        "aq_estimate": aq.model_dump() if aq else None,
        "constant": composed.model_dump() if composed else None,
        "status": "running",
    }


def run(cfg: RunConfig, name: str) -> RunResult:
    """
    Simulate, record and persist one run.

    Rows are written at t = 0, every ``cfg.monitor.cadence`` steps and at the
    final step. Identity residuals and the two sides of the differential
    inequality use the previous solver step and the recorded one, so they are
    NaN on the t = 0 row.

    Raises:
        LabError: the solver failed; series.csv keeps the rows written so far
            plus a terminal status row, and meta.json records the failure
    """
    params = criterion_params(cfg)
    seed = settings.default_seed if cfg.seed is None else cfg.seed
    directory = run_dir(name, cfg.monitor.output_dir)
    solver = cfg.solver
    logger.info(f"Run '{name}': grid {cfg.grid.shape}, {solver.n_steps} steps of dt={solver.dt}")

    state = make_initial_state(cfg.grid, cfg.initial, solver)
    aq = _calibrate(params, cfg, seed)
    try:
        composed: Optional[ComposedConstant] = compose_constant(params, cfg.serrin, state, solver.nu, aq)
        constant = composed.value
    except (ConstantUnavailableError, ParameterWindowError) as e:
        logger.warning(f"Constant unavailable, bounds will be NaN: {e.message}")
        composed, constant = None, math.nan

    meta = _meta(cfg, name, params, seed, aq, composed)
    write_meta(directory, meta)

    tracker = _Tracker(constant)
    records: List[MonitorRecord] = []
    cadence = cfg.monitor.cadence
    n_steps = solver.n_steps
    with SeriesWriter(directory / SERIES_FILE) as writer:
        fs = eval_functionals(state, params, cfg.serrin)
        records.append(make_record(state, fs, None, params, solver.nu, constant, tracker))
        writer.write(records[-1])
        last_step = 0
        try:
            for n in range(1, n_steps + 1):
                prev = state
                state = step(prev, solver)
                if n % cadence == 0 or n == n_steps:
                    fs_prev = fs if last_step == n - 1 else eval_functionals(prev, params, cfg.serrin)
                    fs = eval_functionals(state, params, cfg.serrin)
                    last_step = n
                    records.append(make_record(state, fs, fs_prev, params, solver.nu, constant, tracker))
                    writer.write(records[-1])
                    logger.info(f"t={state.t:.5g}: Omega_q={fs.omega_q:.6g}, "
                                f"bound={records[-1].gronwall_bound:.6g}, E={records[-1].kinetic_energy:.6g}")
                if cfg.monitor.checkpoint_every and n % cfg.monitor.checkpoint_every == 0:
                    save_checkpoint(directory, state, n)
        except LabError as e:
            writer.write_status(prev.t + solver.dt, f"error: {e.__class__.__name__}: {e.message}")
            save_checkpoint(directory, prev, n - 1)
            meta.update(status="failed", error=e.to_dict())
            write_meta(directory, meta)
            raise

    save_checkpoint(directory, state, n_steps)
    result_verdict = verdict(records, params, cfg.serrin, composed.value if composed else None)
    meta.update(status="completed", n_records=len(records), verdict=result_verdict.model_dump())
    write_meta(directory, meta)
    logger.info(f"Run '{name}' finished: {result_verdict.status}")
    return RunResult(name=name, directory=str(directory), records=records,
                     verdict=result_verdict, constant=composed)


def _gronwall_check(rows: List[MonitorRecord]) -> VerdictCheck:
    name = "omega_q below Gronwall bound"
    if any(math.isnan(r.gronwall_bound) for r in rows):
        return VerdictCheck(name=name, passed=False, inconclusive=True, detail="constant unavailable")
    for r in rows:
        if r.omega_q > r.gronwall_bound * (1.0 + BOUND_RTOL):
            return VerdictCheck(name=name, passed=False,
                                detail=f"t={r.t:.6g}: omega_q={r.omega_q:.6g} > {r.gronwall_bound:.6g}")
    return VerdictCheck(name=name, passed=True,
                        detail=f"max omega_q {max(r.omega_q for r in rows):.6g}")


def _al_check(rows: List[MonitorRecord]) -> VerdictCheck:
    name = "weighted u_r / omega_theta ratio stable"
    ratios = np.array([r.al_ratio for r in rows])
    if np.any(np.isinf(ratios)):
        return VerdictCheck(name=name, passed=False, detail="ratio infinite")
    finite = ratios[np.isfinite(ratios)]
    if finite.size == 0:
        return VerdictCheck(name=name, passed=True, detail="u_r and omega_theta vanish")
    first = finite[0]
    growth = float(np.max(finite) / first) if first > 0 else math.inf
    if growth > AL_GROWTH_LIMIT:
        return VerdictCheck(name=name, passed=False, detail=f"ratio grew by {growth:.3g}")
    return VerdictCheck(name=name, passed=True, detail=f"max/first = {growth:.3g}")


def _bounds_check(rows: List[MonitorRecord]) -> VerdictCheck:
    name = "Gronwall bounds informative"
    bounds = np.array([[r.gronwall_bound, r.loglog_bound] for r in rows])
    if np.all(np.isnan(bounds[:, 0])):
        return VerdictCheck(name=name, passed=False, inconclusive=True, detail="constant unavailable")
    overflow = [r for r in rows if not (math.isfinite(r.gronwall_bound) and math.isfinite(r.loglog_bound))]
    if overflow:
        return VerdictCheck(name=name, passed=False, inconclusive=True,
                            detail=f"bound not finite from t={overflow[0].t:.6g}")
    y0 = rows[0].phi_p + rows[0].omega_q
    if y0 > 0.0:
        growth = float(np.max(bounds[:, 0])) / y0
        if growth > BOUND_GROWTH_LIMIT:
            return VerdictCheck(name=name, passed=False, inconclusive=True,
                                detail=f"bound grew by {growth:.3g} over y(0)")
        return VerdictCheck(name=name, passed=True, detail=f"bound growth {growth:.3g}")
    return VerdictCheck(name=name, passed=True, detail="zero initial data")


def _identity_check(rows: List[MonitorRecord]) -> VerdictCheck:
    name = "energy identities balance"
    worst, where = 0.0, None
    for r in rows:
        for residual, scale in ((r.identity_d_residual, r.identity_d_scale),
                                (r.identity_i_residual, r.identity_i_scale)):
            if not (math.isfinite(residual) and math.isfinite(scale)):
                continue
            relative = abs(residual) / scale if scale > 0.0 else 0.0
            if relative > worst:
                worst, where = relative, r.t
    if worst > IDENTITY_RTOL:
        return VerdictCheck(name=name, passed=False, inconclusive=True,
                            detail=f"t={where:.6g}: residual {worst:.3g} of the term scale, run under-resolved")
    return VerdictCheck(name=name, passed=True, detail=f"worst relative residual {worst:.3g}")


def _window_checks(params: CriterionParams, cond: SerrinCondition) -> List[VerdictCheck]:
    results = validate_all(params, cond) + [validate_b_window(params)]
    return [VerdictCheck(name=r.name, passed=r.passed, detail=None if r.passed else "; ".join(r.violations))
            for r in results]


def verdict(records: List[MonitorRecord], params: CriterionParams, cond: SerrinCondition,
            constant: Optional[float] = None) -> Verdict:
    """
    Checks: Omega_q stays below the Gronwall bound, the weighted ratio stays
    finite and within AL_GROWTH_LIMIT of its first value, and every exponent
    window (scaling gap and A_q included) holds. Bounds that overflow or grow
    past BOUND_GROWTH_LIMIT, and identity residuals above IDENTITY_RTOL of
    their term scale, make the run inconclusive.
    """
    rows = [r for r in records if r.status == "ok"]
    if not rows:
        return Verdict(status="inconclusive", summary="empty trajectory", constant=constant)
    checks = [_gronwall_check(rows), _al_check(rows), _bounds_check(rows), _identity_check(rows)] \
        + _window_checks(params, cond)
    tail = "" if constant is None else f" (C = {constant:.6g})"
    failed = [c for c in checks if not c.passed and not c.inconclusive]
    if failed:
        first = failed[0]
        return Verdict(status="violated", summary=f"first violated check: {first.name}{tail}",
                       checks=checks, first_violation=f"{first.name}: {first.detail}", constant=constant)
    if len(rows) != len(records):
        return Verdict(status="inconclusive", summary=f"trajectory incomplete{tail}", checks=checks,
                       constant=constant)
    undecided = [c for c in checks if c.inconclusive]
    if undecided:
        return Verdict(status="inconclusive", summary=f"not evaluated: {undecided[0].name}{tail}",
                       checks=checks, constant=constant)
    return Verdict(status="consistent", summary=f"criterion hypotheses numerically consistent{tail}",
                   checks=checks, constant=constant)
