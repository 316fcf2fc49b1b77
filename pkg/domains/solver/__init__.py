"""
Solver Domain - axisymmetric Navier-Stokes time stepping
"""

from .schemas import InitialData, SolverConfig
from .initial_data import make_initial_state
from .manufactured import ManufacturedSolution
from .projection import PressureProjector, interior_divergence
from .solver import kinetic_energy, step, vorticity_residual

__all__ = [
    'InitialData',
    'SolverConfig',
    'ManufacturedSolution',
    'PressureProjector',
    'interior_divergence',
    'kinetic_energy',
    'make_initial_state',
    'step',
    'vorticity_residual',
]
