"""
Exponents Domain Schemas - criterion exponents, Serrin condition, window reports
"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

IDENTITY_TOL = 1e-12


class WeightExponents(BaseModel):
    """The four exponents every weighted functional needs."""
    model_config = ConfigDict(frozen=True)

    p: float
    mu: float
    q: float
    alpha: float


class CriterionParams(BaseModel):
    """
    Exponent tuple of the swirl/vorticity criterion.

    Values are stored as given; validity is reported by the ledger validators
    rather than enforced here, so out-of-window tuples can still be inspected.
    """
    model_config = ConfigDict(frozen=True)

    eps: Optional[float] = Field(None, description="family parameter, None for hand-built tuples")
    delta0: float = Field(description="swirl decay exponent in ||r^(1-delta) u_theta||_inf")
    gamma: float
    q: float
    p: float
    mu: float
    a: float
    alpha: float
    kappa: float
    eps0: float
    b: float

    @classmethod
    def build(cls, gamma: float, q: float, mu: float, a: float, delta0: float,
              eps: Optional[float] = None, alpha: Optional[float] = None) -> "CriterionParams":
        """Derive p, kappa, eps0, b (and alpha unless given) from the free exponents."""
        p = (4.0 - gamma) * q / 2.0
        kappa = -(2.0 * (q - 1.0) / q) * (1.0 - a)
        if alpha is None:
            alpha = 2.0 * mu - (gamma / 2.0) * (1.0 + mu) + kappa
        eps0 = kappa + delta0 * p / q
        return cls(eps=eps, delta0=delta0, gamma=gamma, q=q, p=p, mu=mu, a=a,
                   alpha=alpha, kappa=kappa, eps0=eps0, b=1.0 - q * eps0 / 2.0)

    @property
    def exponents(self) -> WeightExponents:
        return WeightExponents(p=self.p, mu=self.mu, q=self.q, alpha=self.alpha)


class SerrinCondition(BaseModel):
    """Weighted Serrin-type integrability exponents for u_r^+ near the axis."""
    model_config = ConfigDict(frozen=True)

    s: float = Field(description="spatial exponent")
    w: float = Field(description="temporal exponent")
    d: float = Field(description="radial weight exponent")
    delta1: float = Field(description="near-axis cutoff radius")

    @property
    def a(self) -> float:
        return 2.0 / (2.0 - (2.0 / self.w + 3.0 / self.s))

    @property
    def b(self) -> float:
        return 2.0 * self.s / self.w + 3.0


class WindowCheck(BaseModel):
    """One interval or identity check."""
    name: str
    passed: bool
    value: float
    lower: Optional[float] = None
    upper: Optional[float] = None
    margin: Optional[float] = Field(None, description="distance to the nearest bound, negative when violated")
    note: Optional[str] = None


class ValidationResult(BaseModel):
    """Outcome of one validator: pass/fail plus every individual check."""
    name: str
    passed: bool
    checks: List[WindowCheck] = []

    @property
    def violations(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


class ValidateRequest(BaseModel):
    """Request body of the validation endpoint"""
    eps: float
    delta0: float
    s: float = 6.0
    w: float = 4.0
    d: float = 0.0
    delta1: float = 0.5
