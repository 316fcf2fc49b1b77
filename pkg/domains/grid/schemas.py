"""
Grid domain schemas - the truncated cylindrical domain.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class CylGrid(BaseModel):
    """
    Truncated axisymmetric domain [0, r_max] x [-z_half, z_half].

    Nodes are uniform and include the axis r = 0. Quadrature is the composite
    trapezoid rule in r and z with the measure 2*pi*r dr dz folded into the
    per-node weights, so axis nodes carry zero weight.
    """
    model_config = ConfigDict(frozen=True)

    r_max: float = Field(gt=0, description="outer radius R")
    z_half: float = Field(gt=0, description="half height Z, domain is z in [-Z, Z]")
    n_r: int = Field(ge=8, description="node count in r")
    n_z: int = Field(ge=8, description="node count in z")

    @property
    def dr(self) -> float:
        return self.r_max / (self.n_r - 1)

    @property
    def dz(self) -> float:
        return 2.0 * self.z_half / (self.n_z - 1)

    @property
    def shape(self) -> tuple:
        return (self.n_r, self.n_z)

    @property
    def r(self) -> np.ndarray:
        return np.arange(self.n_r) * self.dr

    @property
    def z(self) -> np.ndarray:
        return -self.z_half + np.arange(self.n_z) * self.dz

    def mesh(self):
        """(R, Z) node coordinate arrays of shape (n_r, n_z)."""
        return np.meshgrid(self.r, self.z, indexing="ij")

    @property
    def quad_weights(self) -> np.ndarray:
        wr = self.r * self.dr
        wr[-1] *= 0.5
        wz = np.full(self.n_z, self.dz)
        wz[0] *= 0.5
        wz[-1] *= 0.5
        return 2.0 * math.pi * np.outer(wr, wz)

    @property
    def volume(self) -> float:
        return 2.0 * math.pi * self.r_max ** 2 / 2.0 * 2.0 * self.z_half

    def refined(self, factor: int) -> "CylGrid":
        """Grid whose nodes contain this grid's nodes (spacing divided by factor)."""
        return CylGrid(
            r_max=self.r_max,
            z_half=self.z_half,
            n_r=(self.n_r - 1) * factor + 1,
            n_z=(self.n_z - 1) * factor + 1,
        )
