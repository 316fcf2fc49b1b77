"""
Verifier Domain - Young/Hoelder bookkeeping and the I1, I2, I3 estimate chains
"""

from .router import router
from .schemas import AqEstimate, ConstantUsed, InequalityReport
from .young import holder, multi_young_scalings, young, young_constant
from .chains import (
    SOBOLEV_K2,
    combine_I1_I3,
    estimate_aq_constant,
    verify_ensemble,
    verify_I1_chain,
    verify_I2_chain,
    verify_I3_chain,
    verify_sobolev_step,
)

__all__ = [
    'router',
    'AqEstimate',
    'ConstantUsed',
    'InequalityReport',
    'holder',
    'multi_young_scalings',
    'young',
    'young_constant',
    'SOBOLEV_K2',
    'combine_I1_I3',
    'estimate_aq_constant',
    'verify_ensemble',
    'verify_I1_chain',
    'verify_I2_chain',
    'verify_I3_chain',
    'verify_sobolev_step',
]
