"""
Verifier Domain Schemas - inequality reports and constant provenance
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

PASS_RTOL = 1e-10

Provenance = Literal["explicit", "empirical", "literature", "measured"]


class ConstantUsed(BaseModel):
    """One constant entering an estimate, with where its value comes from."""
    model_config = ConfigDict(frozen=True)

    label: str
    value: float
    provenance: Provenance


class InequalityReport(BaseModel):
    """lhs <= rhs evaluated on one field."""
    model_config = ConfigDict(frozen=True)

    name: str
    lhs: float
    rhs: float
    margin: float = Field(description="rhs - lhs")
    constants_used: List[ConstantUsed] = []
    passed: bool
    inconclusive: bool = False
    note: Optional[str] = None
    branches: List["InequalityReport"] = Field(default_factory=list, description="sub-estimates that must hold as well")

    @property
    def explicit_only(self) -> bool:
        return all(c.provenance in ("explicit", "measured") for c in self.constants_used)


InequalityReport.model_rebuild()


class AqEstimate(BaseModel):
    """Empirical sup-ratio for the weighted u_r / omega_theta estimate."""
    model_config = ConfigDict(frozen=True)

    q: float
    alpha: float
    eps0: float
    constant: float = Field(description="sup of the ratio over the ensemble")
    constant_first_half: float
    growth: float = Field(description="relative increase of the sup over the second half")
    n_used: int
    n_skipped: int


class VerifyRequest(BaseModel):
    """Request body of the ensemble verification endpoint"""
    eps: float = 0.05
    delta0: float = 0.2
    ensemble_size: int = Field(20, ge=1, le=500)
    seed: Optional[int] = None
    eps1: float = Field(0.1, gt=0)
    eps2: float = Field(0.1, gt=0)
    eps3: float = Field(0.1, gt=0)
    eps4: float = Field(0.1, gt=0)
    eps5: float = Field(0.1, gt=0)
    s: float = 6.0
    w: float = 4.0
    d: float = 0.0
    delta1: float = 0.5
