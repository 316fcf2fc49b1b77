"""
Tests for the shared error hierarchy and its HTTP mapping.
"""

import logging

import pytest
from fastapi import HTTPException

from domains.core.errors import (
    CFLViolationError,
    CheckpointFormatError,
    GridMismatchError,
    LabError,
    NonFiniteFieldError,
    ParameterWindowError,
    PoissonConvergenceError,
    RunConfigError,
)
from domains.core.http import to_http_exception
from domains.core.log_setup import configure_logging


class TestToDict:
    def test_base(self):
        err = LabError("boom", {"where": "here"})
        assert err.to_dict() == {"error": "LabError", "message": "boom", "where": "here"}
        assert str(err) == "boom"

    def test_non_finite_node(self):
        err = NonFiniteFieldError("NaN at (2, 7)", (2, 7))
        assert err.node == (2, 7)
        assert err.to_dict()["node"] == [2, 7]

    def test_cfl(self):
        err = CFLViolationError("too fast", cfl=0.8, suggested_dt=0.001)
        assert err.to_dict()["suggested_dt"] == 0.001

    def test_poisson_history(self):
        err = PoissonConvergenceError("stalled", [1.0, 0.5])
        assert err.to_dict()["residual_history"] == [1.0, 0.5]

    def test_min_delta0_only_when_known(self):
        assert "min_delta0" not in ParameterWindowError("bad", ["q>p"]).to_dict()
        assert ParameterWindowError("bad", ["b<1"], min_delta0=0.04).to_dict()["min_delta0"] == 0.04


@pytest.mark.parametrize("err,code", [
    (ParameterWindowError("bad", []), 422),
    (RunConfigError("bad"), 422),
    (GridMismatchError("bad"), 400),
    (CheckpointFormatError("bad"), 400),
])
def test_http_codes(err, code):
    http = to_http_exception(err)
    assert isinstance(http, HTTPException)
    assert http.status_code == code
    assert http.detail["error"] == err.__class__.__name__


def test_configure_logging_accepts_level_names():
    configure_logging("debug")
    configure_logging()
    assert logging.getLogger().level in (logging.DEBUG, logging.INFO, logging.WARNING)
