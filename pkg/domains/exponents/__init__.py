"""
Exponents Domain - criterion exponents and their admissibility windows
"""

from .router import router
from .schemas import CriterionParams, SerrinCondition, ValidationResult, WeightExponents
from .ledger import (
    build_report,
    check_serrin_scaling_gap,
    derived_ab,
    params_from_epsilon,
    validate_all,
    validate_aq_window,
    validate_b_window,
    validate_prop_I1,
    validate_prop_I3,
    validate_serrin,
)

__all__ = [
    'router',
    'CriterionParams',
    'SerrinCondition',
    'ValidationResult',
    'WeightExponents',
    'build_report',
    'check_serrin_scaling_gap',
    'derived_ab',
    'params_from_epsilon',
    'validate_all',
    'validate_aq_window',
    'validate_b_window',
    'validate_prop_I1',
    'validate_prop_I3',
    'validate_serrin',
]
