"""
Solver domain schemas - time stepping configuration and initial data recipes.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

BoundaryCondition = Literal["homogeneous", "frozen"]
Recipe = Literal["rest", "pure_swirl", "ring_swirl", "inward_radial", "manufactured", "checkpoint"]


class SolverConfig(BaseModel):
    """Time integration settings."""
    model_config = ConfigDict(frozen=True)

    nu: float = Field(gt=0, description="kinematic viscosity")
    dt: float = Field(gt=0, description="time step")
    t_end: float = Field(gt=0, description="final time")
    cfl_safety: float = Field(default=0.5, gt=0, le=1, description="admissible advective CFL number")
    projection_tol: float = Field(default=1e-10, gt=0, description="max |div u| after projection")
    bc: BoundaryCondition = Field(
        default="homogeneous",
        description="homogeneous: zero velocity on the outer boundary; frozen: boundary held at initial values",
    )
    max_refinements: int = Field(default=20, ge=1, description="iterative-refinement sweeps in the Poisson solve")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))


class InitialData(BaseModel):
    """Analytic recipe with its parameters, or a checkpoint to resume from."""
    model_config = ConfigDict(frozen=True)

    recipe: Recipe = "pure_swirl"
    amplitude: float = Field(default=1.0, description="velocity amplitude A")
    sigma: float = Field(default=1.0, gt=0, description="Gaussian width")
    swirl_amplitude: float = Field(default=0.0, description="added swirl amplitude for ring_swirl")
    length: float = Field(default=1.0, gt=0, description="axial length scale for inward_radial")
    checkpoint_path: Optional[str] = None

    @model_validator(mode="after")
    def _checkpoint_needs_path(self):
        if self.recipe == "checkpoint" and not self.checkpoint_path:
            raise ValueError("checkpoint_path is required when recipe is 'checkpoint'")
        return self
