"""
Grid Domain - truncated cylindrical grid, axisymmetric fields and quadrature
"""

from .schemas import CylGrid
from .quadrature import Sample, StateQuadrature
from .fields import (
    AxisymState,
    ScalarField2D,
    integrate_cyl,
    integrate_values,
    negative_part,
    positive_part,
    weighted_lp,
)

__all__ = [
    'CylGrid',
    'AxisymState',
    'ScalarField2D',
    'integrate_cyl',
    'integrate_values',
    'negative_part',
    'positive_part',
    'weighted_lp',
    'Sample',
    'StateQuadrature',
]
