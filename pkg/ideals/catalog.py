"""
标准理想目录
Catalog of the Standard Ideals

余迷向理想 I、Catanese 理想、可积性理想 J 由符号构造得到；四个分支的素理想
以及 ChowConic ∪ ChowLines、三重交由见证点插值得到。
"""

from functools import lru_cache
from typing import Dict, Optional

from components.sampler import CHOW_CONIC, CHOW_LINES, HURWITZ, SQUARES
from grassmann.generators import catanese_generators, coisotropic_ideal_generators
from grassmann.quadric import C_VARS, INVARIANT
from ideals.graded import GeneratorSet, IdealIntersection
from integrability.jideal import j_generators
from ideals.interpolation import InterpolatedIdeal

COMPONENT_FAMILIES = {
    'P_Hurwitz': (HURWITZ,),
    'P_ChowLines': (CHOW_LINES,),
    'P_ChowConic': (CHOW_CONIC,),
    'P_Squares': (SQUARES,),
    'P_ChowUnion': (CHOW_CONIC, CHOW_LINES),
}

# 作为除式时的生成次数
COMPONENT_GENERATOR_DEGREES = {
    'P_Hurwitz': (2,),
    'P_ChowLines': (3,),
    'P_ChowConic': (2, 3),
    'P_Squares': (2,),
    'P_ChowUnion': (3,),
}


@lru_cache(maxsize=None)
def coisotropic_ideal() -> GeneratorSet:
    """I：余迷向矩阵的 1330 个 3×3 子式"""
    return GeneratorSet('I', INVARIANT, coisotropic_ideal_generators(), zero_degree=3)


@lru_cache(maxsize=None)
def catanese_ideal() -> GeneratorSet:
    """Catanese 理想：210 个 2×2 子式，21 个 c 变量"""
    return GeneratorSet('Catanese', C_VARS, catanese_generators())


def integrability_ideal(threads: Optional[int] = None) -> GeneratorSet:
    """J：六个图卡上正规形系数去重后的全部生成元"""
    return GeneratorSet('J', INVARIANT, j_generators(threads=threads).distinct())


def component_ideal(label: str, seed: int = 1, samples: Optional[int] = None) -> InterpolatedIdeal:
    if label not in COMPONENT_FAMILIES:
        raise ValueError(f"未知分支理想: {label}. 可用: {list(COMPONENT_FAMILIES)}")
    return InterpolatedIdeal(label, COMPONENT_FAMILIES[label], seed=seed, samples=samples,
                             generator_degrees=COMPONENT_GENERATOR_DEGREES[label])


def component_ideals(seed: int = 1, samples: Optional[int] = None) -> Dict[str, InterpolatedIdeal]:
    return {label: component_ideal(label, seed, samples) for label in COMPONENT_FAMILIES}


def triple_intersection(components: Dict[str, InterpolatedIdeal], first: str) -> IdealIntersection:
    """
    first ∩ P_ChowLines ∩ P_Squares

    first 取 P_Hurwitz 时即 I 的分解，取 P_ChowConic 时即 √J
    """
    parts = [components[first], components['P_ChowLines'], components['P_Squares']]
    return IdealIntersection(f"{first}∩P_ChowLines∩P_Squares", parts)
