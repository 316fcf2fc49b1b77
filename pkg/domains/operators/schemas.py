"""
Operator domain schemas
"""

from pydantic import BaseModel, ConfigDict, Field


class StencilSpec(BaseModel):
    """Accuracy description of the discrete operators."""
    model_config = ConfigDict(frozen=True)

    order: int = Field(default=2, ge=2, description="interior accuracy order")
    boundary_scheme: str = Field(
        default="parity ghosts at r = 0; one-sided second order at r = r_max and |z| = z_half",
        description="closure used on the domain boundary",
    )


SECOND_ORDER = StencilSpec()
