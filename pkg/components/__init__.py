"""
余迷向簇分支族模块
"""

from .families import (
    DegenerateLimit, NotALine, RankNotOne, SymMatrix4, ZeroForm,
    chow_conic, chow_line_pair, hurwitz_form, linear_form, meet_form, meet_pairing,
    plucker_action, square_form, transform_quadric,
)
from .sampler import (
    CHOW_CONIC, CHOW_LINES, FAMILIES, HURWITZ, SQUARES,
    SamplingExhausted, WitnessPoint, build_quadric, parametrization,
    sample, sample_batch, tangent_dimension,
)
