"""
余迷向理想与 Catanese 理想的生成元
Generators of the Coisotropic and Catanese Ideals

余迷向理想由符号余迷向矩阵的 1330 个 3×3 子式生成，子式都是规范不变量，
检验后改写到 20 个不变量坐标；Catanese 理想由删去中间列后的 210 个 2×2 子式生成，
保留在 21 个 c 变量中。
"""

import logging
from itertools import combinations
from typing import List, Sequence

from poly.mpoly import MPoly, VarSet
from grassmann.quadric import C_VARS, GAUGE_INDICES, GAUGE_SIGNS, INVARIANT, fig1_matrix

logger = logging.getLogger(__name__)

# 带规范参数 λ 的扩展变量集，仅用于显式代换检验
C_LAMBDA = VarSet(C_VARS.names + ('lam',))


class InvarianceViolation(RuntimeError):
    """子式不满足规范不变性"""


def det3(m: Sequence[Sequence]):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def gauge_derivative(f: MPoly) -> MPoly:
    """规范作用的无穷小生成元 ∂/∂c5 − ∂/∂c9 + ∂/∂c12 作用于 f"""
    result = f.varset.zero()
    for k, sign in zip(GAUGE_INDICES, GAUGE_SIGNS):
        partial = f.differentiate(k)
        result = result + partial if sign > 0 else result - partial
    return result


def is_gauge_invariant(f: MPoly) -> bool:
    """
    对加法群作用 c5 += λ, c9 -= λ, c12 += λ 不变

    特征零时，多项式在整条轨道上不变当且仅当无穷小生成元把它映为零
    """
    return not gauge_derivative(f)


def gauge_transform(f: MPoly) -> MPoly:
    """f(c5 + λ, c9 − λ, c12 + λ, ...)，结果位于 C_LAMBDA"""
    lam = C_LAMBDA.var('lam')
    images = {}
    for k in range(21):
        image = C_LAMBDA.var(k)
        if k in GAUGE_INDICES:
            image = image + lam * GAUGE_SIGNS[GAUGE_INDICES.index(k)]
        images[k] = image
    return f.substitute(images, C_LAMBDA)


def embed_in_lambda(f: MPoly) -> MPoly:
    return f.substitute({k: C_LAMBDA.var(k) for k in range(21)}, C_LAMBDA)


def invariant_images() -> dict:
    """改写到不变量坐标的代换：c12 ↦ 0，c_k ↦ v_k (k ≤ 11)，c_k ↦ v_{k−1} (k ≥ 13)"""
    images = {}
    for k in range(21):
        if k < 12:
            images[k] = INVARIANT.var(k)
        elif k == 12:
            images[k] = INVARIANT.zero()
        else:
            images[k] = INVARIANT.var(k - 1)
    return images


_INVARIANT_IMAGES = invariant_images()


def to_invariant(f: MPoly) -> MPoly:
    """把 c 变量上的规范不变多项式改写到 20 个不变量坐标"""
    return f.substitute(_INVARIANT_IMAGES, INVARIANT)


def coisotropic_ideal_generators(check_invariance: bool = True) -> List[MPoly]:
    """
    符号余迷向矩阵的全部 C(21,3) = 1330 个 3×3 子式，改写到不变量坐标

    行三元组按字典序排列；前 20 行不含常数列非零元的三元组给出零子式，仍保留在结果中。

    Raises:
        InvarianceViolation: 某个子式不是规范不变量
    """
    matrix = fig1_matrix()
    generators = []
    for rows in combinations(range(21), 3):
        minor = det3([matrix[r] for r in rows])
        if check_invariance and not is_gauge_invariant(minor):
            raise InvarianceViolation(f"行 {rows} 的子式不是规范不变量")
        generators.append(to_invariant(minor))
    logger.info("余迷向理想生成元: %d 个, 非零 %d 个",
                len(generators), sum(1 for g in generators if g))
    return generators


def catanese_generators() -> List[MPoly]:
    """删去中间列后 21×2 矩阵的 C(21,2) = 210 个 2×2 子式（c 变量上）"""
    matrix = fig1_matrix()
    generators = []
    for a, b in combinations(range(21), 2):
        generators.append(matrix[a][0] * matrix[b][2] - matrix[b][0] * matrix[a][2])
    return generators
