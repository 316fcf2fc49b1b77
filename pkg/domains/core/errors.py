"""
Error hierarchy shared by every domain.

Service code raises these; routers turn them into HTTP errors and the CLI
turns them into exit codes.
"""

from typing import Any, Dict, List, Optional


class LabError(Exception):
    """Base class for all laboratory errors."""

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.__class__.__name__, "message": self.message, **self.detail}


class NonFiniteFieldError(LabError):
    """A field or integrand contains NaN/Inf."""

    def __init__(self, message: str, node: tuple):
        super().__init__(message, {"node": list(node)})
        self.node = node


class GridMismatchError(LabError):
    """Fields that must share a grid do not."""


class AxisRegularityError(LabError):
    """A field that must vanish on r = 0 does not."""


class CFLViolationError(LabError):
    """Advective CFL number above the configured safety fraction."""

    def __init__(self, message: str, cfl: float, suggested_dt: float):
        super().__init__(message, {"cfl": cfl, "suggested_dt": suggested_dt})
        self.cfl = cfl
        self.suggested_dt = suggested_dt


class PoissonConvergenceError(LabError):
    """Pressure projection did not reach projection_tol."""

    def __init__(self, message: str, residual_history: List[float]):
        super().__init__(message, {"residual_history": residual_history})
        self.residual_history = residual_history


class ParameterWindowError(LabError):
    """Exponent parameters outside an admissible window."""

    def __init__(self, message: str, violations: List[str], min_delta0: Optional[float] = None):
        detail: Dict[str, Any] = {"violations": violations}
        if min_delta0 is not None:
            detail["min_delta0"] = min_delta0
        super().__init__(message, detail)
        self.violations = violations
        self.min_delta0 = min_delta0


class ConstantUnavailableError(LabError):
    """An estimate constant cannot be assembled for the given inputs."""


class CheckpointFormatError(LabError):
    """Checkpoint bytes do not follow the AXRG layout."""


class RunConfigError(LabError):
    """Run configuration file or override could not be applied."""
