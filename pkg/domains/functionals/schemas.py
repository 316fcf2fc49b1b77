"""
Functionals Domain Schemas - functional values and energy identity records
"""

from pydantic import BaseModel, ConfigDict, Field

from domains.exponents.schemas import WeightExponents


class FunctionalSet(BaseModel):
    """Every weighted functional evaluated on one state."""
    model_config = ConfigDict(frozen=True)

    t: float
    phi_p: float = Field(description="int |u_theta/r^mu|^p")
    omega_q: float = Field(description="int |omega_theta/r^alpha|^q")
    grad_phi: float = Field(description="int |grad |u_theta/r^mu|^(p/2)|^2")
    grad_omega: float = Field(description="int |grad |omega_theta/r^alpha|^(q/2)|^2")
    axis_phi: float = Field(description="int |u_theta/r^mu|^p / r^2")
    axis_omega: float = Field(description="int |omega_theta/r^alpha|^q / r^2")
    I1: float = Field(description="int (u_r^-/r) |u_theta/r^mu|^p")
    I2: float = Field(description="int (u_r^+/r) |omega_theta/r^alpha|^q")
    I3: float = Field(description="int (u_theta/r) d_z u_theta |Omega|^(q-2) Omega / r^alpha")
    J1plus: float = Field(description="int (u_r^+/r) |u_theta/r^mu|^p")
    J2minus: float = Field(description="int (u_r^-/r) |omega_theta/r^alpha|^q")
    f_serrin: float
    g_ur: float = Field(description="int (u_r^+)^(10/3)")
    varpi: float = Field(description="max |r^(1-delta0) u_theta|")
    r_ut_inf: float = Field(description="max |r u_theta|")


class IdentityTerms(BaseModel):
    """Discrete terms of one weighted energy identity between two states."""
    model_config = ConfigDict(frozen=True)

    name: str
    rate: float = Field(description="(1/exponent) d/dt of the weighted norm")
    gradient: float
    axis: float
    advection: float = Field(description="the transport term kept on the left")
    rhs: float
    lhs: float
    residual: float = Field(description="lhs - rhs")

    @property
    def scale(self) -> float:
        """Sum of the term magnitudes, the yardstick for the residual."""
        return abs(self.rate) + abs(self.gradient) + abs(self.axis) + abs(self.advection) + abs(self.rhs)


class MainBalance(BaseModel):
    """Sum of the two identities, assembled from the raw functionals."""
    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    residual: float


__all__ = ["FunctionalSet", "IdentityTerms", "MainBalance", "WeightExponents"]
