"""
分次理想计算模块
"""

from .evaluation import CompiledPolys, vanishes_mod
from .graded import (
    MONOMIAL_ORDER, DegreeMismatch, DegreeTooSmall, GeneratorSet, GradedPiece,
    IdealIntersection, PieceResult, VariableDivisors,
    colon_irrelevant_piece, colon_piece, consensus_piece, ideal_piece, intersect,
    minimal_generator_count, minimal_generator_count_at, monomial_count, monomial_table,
)
from .interpolation import InterpolatedIdeal, Unstabilized, evaluation_rows, vanishing_piece
from .catalog import (
    COMPONENT_FAMILIES, catanese_ideal, coisotropic_ideal, component_ideal, component_ideals,
    integrability_ideal, triple_intersection,
)
