"""
精确计算核心
"""

from .scalars import Fp, Rat, UnluckyPrime, to_fp, rational_reconstruct, reconstruct_vector
from .linalg import (
    ConsensusFailure, EchelonForm, FpMatrix, RankKernel,
    consensus, consensus_rank, matmul_mod, rank, rank_and_kernel, rational_rank, rational_solve,
)

__all__ = [
    'Fp', 'Rat', 'UnluckyPrime', 'to_fp', 'rational_reconstruct', 'reconstruct_vector',
    'ConsensusFailure', 'EchelonForm', 'FpMatrix', 'RankKernel',
    'consensus', 'consensus_rank', 'matmul_mod', 'rank', 'rank_and_kernel', 'rational_rank', 'rational_solve',
]
