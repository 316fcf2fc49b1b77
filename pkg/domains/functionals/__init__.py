"""
Functionals Domain - weighted norms, I1/I2/I3 and the energy identities
"""

from .schemas import FunctionalSet, IdentityTerms, MainBalance, WeightExponents
from .functionals import (
    assemble_main,
    eval_al_ratio,
    eval_f_serrin,
    eval_functionals,
    eval_g,
    eval_I1,
    eval_I2,
    eval_I3,
    eval_identity_d_terms,
    eval_identity_i_terms,
    identity_d_terms,
    identity_i_terms,
    smooth_cutoff,
)

__all__ = [
    'FunctionalSet',
    'IdentityTerms',
    'MainBalance',
    'WeightExponents',
    'assemble_main',
    'eval_al_ratio',
    'eval_f_serrin',
    'eval_functionals',
    'eval_g',
    'eval_I1',
    'eval_I2',
    'eval_I3',
    'eval_identity_d_terms',
    'eval_identity_i_terms',
    'identity_d_terms',
    'identity_i_terms',
    'smooth_cutoff',
]
