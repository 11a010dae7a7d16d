"""
Grassmann 流形 G(2,4) 上的二次型模块
"""

from .quadric import (
    C_VARS, INVARIANT, PLUCKER, PLUCKER_RELATION,
    CataneseNormalization, CoisotropyCertificate, InvariantVector, PlueckerVector, QuadricCoeffs,
    NoUniqueLambda, NotCoisotropic, NotQuadratic, PlueckerMultiple, ZeroQuadric,
    bracket, catanese_normalize, coisotropy_check, fig1_matrix, fig1_rank,
    is_coisotropic, quadric_poly, symmetric_coefficients,
)
from .generators import (
    InvarianceViolation, catanese_generators, coisotropic_ideal_generators,
    gauge_transform, is_gauge_invariant, to_invariant,
)
