"""
Tests for the run verdict.
"""

import math

import pytest

from domains.exponents.ledger import params_from_epsilon
from domains.monitor import MonitorRecord, verdict
from domains.monitor.schemas import EXTERNAL_STEP_NOTE

FIELDS = [n for n in MonitorRecord.model_fields if n not in ("t", "status")]


def _record(t, **values):
    base = {n: 0.0 for n in FIELDS}
    base.update(al_ratio=math.nan, gronwall_bound=1.0, loglog_bound=1.0)
    base.update(values)
    return MonitorRecord(t=t, **base)


@pytest.fixture
def params():
    return params_from_epsilon(0.05, 0.2)


def test_empty_trajectory(params, serrin):
    result = verdict([], params, serrin)
    assert result.status == "inconclusive"
    assert result.summary == "empty trajectory"
    assert result.external_step == EXTERNAL_STEP_NOTE


def test_consistent_rows(params, serrin):
    rows = [_record(0.0, omega_q=0.5, al_ratio=1.0), _record(0.1, omega_q=0.7, al_ratio=2.0)]
    result = verdict(rows, params, serrin)
    assert result.status == "consistent"
    assert result.first_violation is None
    assert all(c.passed for c in result.checks)


def test_omega_above_bound(params, serrin):
    rows = [_record(0.0, omega_q=0.5), _record(0.1, omega_q=1.5)]
    result = verdict(rows, params, serrin)
    assert result.status == "violated"
    assert result.first_violation.startswith("omega_q below Gronwall bound: t=0.1")


def test_infinite_ratio(params, serrin):
    rows = [_record(0.0, al_ratio=1.0), _record(0.1, al_ratio=math.inf)]
    result = verdict(rows, params, serrin)
    assert result.status == "violated"
    assert "ratio infinite" in result.first_violation


def test_ratio_growth(params, serrin):
    rows = [_record(0.0, al_ratio=0.1), _record(0.1, al_ratio=1.5)]
    assert verdict(rows, params, serrin).status == "violated"


def test_unavailable_constant(params, serrin):
    rows = [_record(0.0, gronwall_bound=math.nan)]
    result = verdict(rows, params, serrin)
    assert result.status == "inconclusive"
    assert result.checks[0].inconclusive


def test_misset_alpha_reports_window(params, serrin):
    bad = params.model_copy(update={"alpha": 0.5})
    result = verdict([_record(0.0)], bad, serrin)
    assert result.status == "violated"
    assert any(c.name == "aq_window" and not c.passed for c in result.checks)


def test_incomplete_trajectory(params, serrin):
    rows = [_record(0.0), _record(0.1).model_copy(update={"status": "error: CFLViolationError: too fast"})]
    result = verdict(rows, params, serrin)
    assert result.status == "inconclusive"
    assert result.summary == "trajectory incomplete"


def test_b_window_is_checked(serrin):
    result = verdict([_record(0.0)], params_from_epsilon(0.05, 0.05), serrin)
    assert result.status == "violated"
    assert result.first_violation.startswith("b_window")


def _check(result, name):
    return next(c for c in result.checks if c.name == name)


def test_overflowing_bound_is_inconclusive(params, serrin):
    rows = [_record(0.0, omega_q=0.5), _record(0.1, omega_q=0.6, gronwall_bound=math.inf, loglog_bound=math.inf)]
    result = verdict(rows, params, serrin, constant=452.0)
    assert result.status == "inconclusive"
    check = _check(result, "Gronwall bounds informative")
    assert check.inconclusive
    assert "not finite" in check.detail


def test_runaway_bound_is_inconclusive(params, serrin):
    rows = [_record(0.0, omega_q=1.0), _record(0.1, omega_q=1.0, gronwall_bound=1e13, loglog_bound=1e13)]
    result = verdict(rows, params, serrin)
    assert result.status == "inconclusive"
    assert _check(result, "Gronwall bounds informative").inconclusive


def test_identity_residual_above_tolerance(params, serrin):
    rows = [_record(0.0, omega_q=0.5), _record(0.1, omega_q=0.5, identity_d_residual=1.0, identity_d_scale=4.0)]
    result = verdict(rows, params, serrin)
    assert result.status == "inconclusive"
    check = _check(result, "energy identities balance")
    assert check.inconclusive
    assert "t=0.1" in check.detail


def test_small_identity_residual(params, serrin):
    rows = [_record(0.0, omega_q=0.5), _record(0.1, omega_q=0.5, identity_i_residual=0.01, identity_i_scale=4.0)]
    assert verdict(rows, params, serrin).status == "consistent"


def test_constant_is_reported(params, serrin):
    rows = [_record(0.0, omega_q=0.5, al_ratio=1.0)]
    result = verdict(rows, params, serrin, constant=452.0)
    assert result.constant == 452.0
    assert "C = 452" in result.summary
