"""
分支族见证点采样
Witness Sampling for the Component Families

每个见证点由 (family, seed) 唯一决定：参数取 [-50, 50] 内的整数，遇到退化抽样时
在同一随机流中重抽，最多 100 次。切空间维数通过参数化的精确雅可比矩阵求得。
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import SAMPLING_CONFIG, select_primes
from exact.linalg import FpMatrix, consensus_rank
from grassmann.quadric import InvariantVector, PlueckerVector, QuadricCoeffs, invariant_from_coeffs
from poly.mpoly import MPoly, VarSet
from components.families import (
    SymMatrix4, chow_conic, chow_line_pair, hurwitz_form, linear_form, meet_weights,
    mixed_compound, plucker_minors, product_coeffs, second_compound, square_form,
    sym_from_upper, upper_of,
)

logger = logging.getLogger(__name__)

HURWITZ = 'hurwitz'
CHOW_LINES = 'chow_lines'
CHOW_CONIC = 'chow_conic'
SQUARES = 'squares'
FAMILIES = (HURWITZ, CHOW_LINES, CHOW_CONIC, SQUARES)

# 每族参数的名字与长度，顺序即雅可比矩阵的列序
PARAM_LAYOUT = {
    HURWITZ: (('m', 10),),
    CHOW_LINES: (('frame1', 8), ('frame2', 8)),
    CHOW_CONIC: (('u', 4), ('m1', 10)),
    SQUARES: (('ell', 6),),
}


class SamplingExhausted(RuntimeError):
    """重抽次数用尽仍是退化样本"""


def check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"未知分支族: {family}. 可用: {list(FAMILIES)}")
    return family


@dataclass(frozen=True)
class WitnessPoint:
    """分支族中的一个精确构造点"""

    family: str
    seed: int
    params: Dict[str, Tuple[int, ...]] = field(hash=False)
    v: InvariantVector

    @property
    def quadric(self) -> QuadricCoeffs:
        return self.v.to_quadric()

    def flat_params(self) -> List[int]:
        return [x for name, _ in PARAM_LAYOUT[self.family] for x in self.params[name]]


# ===== 由参数构造 =====

def build_quadric(family: str, params: Dict[str, Sequence[int]]) -> QuadricCoeffs:
    """
    按族的构造函数由参数得到二次型

    Raises:
        ValueError 的子类: 参数退化（奇异曲面、重合点、零极限、零线性型）
    """
    check_family(family)
    if family == HURWITZ:
        m = SymMatrix4.from_upper(params['m'])
        if m.det() == 0:
            raise ValueError("奇异二次曲面")
        return hurwitz_form(m)
    if family == CHOW_LINES:
        f1, f2 = params['frame1'], params['frame2']
        l1 = PlueckerVector.from_frame([f1[:4], f1[4:]])
        l2 = PlueckerVector.from_frame([f2[:4], f2[4:]])
        return chow_line_pair(l1, l2)
    if family == CHOW_CONIC:
        return chow_conic(SymMatrix4.outer(params['u']), SymMatrix4.from_upper(params['m1']))
    return square_form(linear_form(params['ell']))


def parametrization(family: str, x: Sequence) -> list:
    """
    参数 → c0..c20，只用环运算，可代入数或多项式

    与 build_quadric 是同一个映射（不含退化检查）
    """
    check_family(family)
    if family == HURWITZ:
        return upper_of(second_compound(sym_from_upper(x[0:10])))
    if family == CHOW_LINES:
        w1 = meet_weights(plucker_minors([x[0:4], x[4:8]]))
        w2 = meet_weights(plucker_minors([x[8:12], x[12:16]]))
        return product_coeffs(w1, w2)
    if family == CHOW_CONIC:
        u = x[0:4]
        m0 = [[u[i] * u[j] for j in range(4)] for i in range(4)]
        return upper_of(mixed_compound(m0, sym_from_upper(x[4:14])))
    w = x[0:6]
    return product_coeffs(w, w)


# ===== 采样 =====

def _family_index(family: str) -> int:
    return FAMILIES.index(check_family(family))


def _draw(rng: np.random.Generator, family: str) -> Dict[str, Tuple[int, ...]]:
    low, high = SAMPLING_CONFIG['param_low'], SAMPLING_CONFIG['param_high']
    return {name: tuple(int(x) for x in rng.integers(low, high + 1, size=size))
            for name, size in PARAM_LAYOUT[family]}


def sample(family: str, seed: int) -> WitnessPoint:
    """
    以 (family, seed) 为种子采一个见证点

    Raises:
        SamplingExhausted: 连续 max_retries 次都是退化样本
    """
    rng = np.random.default_rng([seed, _family_index(family)])
    max_retries = SAMPLING_CONFIG['max_retries']
    for attempt in range(max_retries):
        params = _draw(rng, family)
        try:
            c = build_quadric(family, params)
        except ValueError as e:
            logger.debug("%s 种子 %d 第 %d 次抽样退化: %s", family, seed, attempt + 1, e)
            continue
        v = c.invariant()
        if v.is_zero():
            continue
        return WitnessPoint(family, seed, params, v)
    raise SamplingExhausted(f"{family} 种子 {seed}: {max_retries} 次抽样均退化")


def sample_batch(family: str, count: int, start_seed: int = 1) -> List[WitnessPoint]:
    """种子 start_seed .. start_seed + count - 1 的见证点"""
    return [sample(family, seed) for seed in range(start_seed, start_seed + count)]


# ===== 切空间维数 =====

@lru_cache(maxsize=None)
def symbolic_jacobian(family: str) -> Tuple[VarSet, Tuple[Tuple[MPoly, ...], ...]]:
    """参数化 params → v 的雅可比矩阵（20 × 参数个数），元素为参数的多项式"""
    n = sum(size for _, size in PARAM_LAYOUT[check_family(family)])
    varset = VarSet(f'x{i}' for i in range(n))
    v = invariant_from_coeffs(parametrization(family, varset.gens()))
    return varset, tuple(tuple(vi.differentiate(j) for j in range(n)) for vi in v)


def tangent_dimension(family: str, seed: int = 1,
                      primes: Optional[Sequence[int]] = None,
                      threads: Optional[int] = None) -> int:
    """
    在种子见证点处的雅可比矩阵秩，即仿射锥维数（射影维数 + 1）

    Returns:
        Hurwitz 10，两类 Chow 形式 9，平方 6
    """
    witness = sample(family, seed)
    _, jac = symbolic_jacobian(family)
    point = witness.flat_params()
    values = [[entry.evaluate(point) for entry in row] for row in jac]
    builder: Callable[[int], FpMatrix] = lambda p: FpMatrix.from_rows(values, p)
    return consensus_rank(builder, primes or select_primes(seed), threads)
