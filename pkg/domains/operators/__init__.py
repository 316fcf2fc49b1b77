"""
Operators Domain - discrete cylindrical derivatives
"""

from .schemas import SECOND_ORDER, StencilSpec
from .operators import (
    EVEN,
    ODD,
    axial_laplacian,
    build_state,
    curl_cyl,
    divergence_cyl,
    gradient_cyl,
    swirl_laplacian,
)

__all__ = [
    'StencilSpec',
    'SECOND_ORDER',
    'EVEN',
    'ODD',
    'axial_laplacian',
    'build_state',
    'curl_cyl',
    'divergence_cyl',
    'gradient_cyl',
    'swirl_laplacian',
]
