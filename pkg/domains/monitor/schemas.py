"""
Monitor Domain Schemas - run configuration, per-row records and the verdict
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from domains.exponents.schemas import SerrinCondition
from domains.functionals.schemas import FunctionalSet
from domains.grid.schemas import CylGrid
from domains.solver.schemas import InitialData, SolverConfig
from domains.verifier.schemas import ConstantUsed

VerdictStatus = Literal["consistent", "violated", "inconclusive"]

EXTERNAL_STEP_NOTE = "external theorem invoked, not verified here"


class CriterionConfig(BaseModel):
    """Family parameters of the criterion; alpha may be overridden to test the windows."""
    model_config = ConfigDict(frozen=True)

    eps: float = Field(0.05, gt=0, description="family parameter in (0, 1/14)")
    delta0: float = Field(0.2, gt=0, description="swirl decay exponent in (0, 1/3)")
    alpha: Optional[float] = Field(None, description="replaces the family alpha when set")


class MonitorConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    cadence: int = Field(10, ge=1, description="solver steps between recorded rows")
    checkpoint_every: int = Field(0, ge=0, description="steps between checkpoints, 0 for the final state only")
    calibration_size: Optional[int] = Field(None, ge=1, description="A_q calibration ensemble size")
    output_dir: Optional[str] = Field(None, description="parent directory of run folders")


class RunConfig(BaseModel):
    """Everything one monitored simulation needs."""
    model_config = ConfigDict(frozen=True)

    grid: CylGrid
    solver: SolverConfig
    initial: InitialData = InitialData()
    criterion: CriterionConfig = CriterionConfig()
    serrin: SerrinCondition = SerrinCondition(s=6.0, w=4.0, d=0.0, delta1=0.5)
    monitor: MonitorConfig = MonitorConfig()
    seed: Optional[int] = None


class MonitorRecord(FunctionalSet):
    """One CSV row: the functionals at t plus the balance and bound columns."""

    kinetic_energy: float
    al_ratio: float = Field(description="int |u_r/r^(1+alpha)|^q / int |Omega|^q")
    identity_d_residual: float
    identity_i_residual: float
    identity_d_scale: float = Field(description="sum of the swirl identity term magnitudes")
    identity_i_scale: float = Field(description="sum of the vorticity identity term magnitudes")
    bookkeeping_gap: float = Field(description="|(d)+(i) - (main)| over both sides")
    bf_lhs: float
    bf_rhs: float
    gronwall_bound: float
    loglog_bound: float
    status: str = "ok"


class ComposedConstant(BaseModel):
    """The constant C of the differential inequality with its ingredients."""
    value: float
    epsilons: dict = {}
    components: dict = {}
    constants_used: List[ConstantUsed] = []


class VerdictCheck(BaseModel):
    name: str
    passed: bool
    inconclusive: bool = False
    detail: Optional[str] = None


class Verdict(BaseModel):
    """Outcome of a run; never a regularity claim by itself."""
    status: VerdictStatus
    summary: str
    checks: List[VerdictCheck] = []
    first_violation: Optional[str] = None
    constant: Optional[float] = Field(None, description="C used for the Gronwall bounds")
    external_step: str = EXTERNAL_STEP_NOTE


class RunResult(BaseModel):
    """What run() hands back after persisting a run."""
    name: str
    directory: str
    records: List[MonitorRecord]
    verdict: Verdict
    constant: Optional[ComposedConstant] = None
