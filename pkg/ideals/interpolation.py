"""
由见证点插值消失理想
Interpolating Vanishing Ideals from Witness Points

d 次消失片是求值矩阵（行 = 见证点，列 = d 次单项式）的右核。结果是蒙特卡罗正确的：
维数是真实值的上界，样本足够时稳定。稳定性检验先用去掉余量的样本求核，
再补上余量样本，维数下降即说明样本不足。
"""

import logging
import threading
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import EXACT_CONFIG, margin_for
from exact.linalg import EchelonForm, check_prime
from exact.scalars import to_fp
from components.sampler import WitnessPoint, check_family, sample
from ideals.graded import GradedPiece, monomial_count, monomial_table

logger = logging.getLogger(__name__)


class Unstabilized(RuntimeError):
    """补上余量样本后核维数仍在下降"""

    def __init__(self, degree: int, before: int, after: int):
        super().__init__(f"{degree} 次消失片未稳定: 补充余量样本后维数 {before} → {after}")
        self.degree = degree
        self.before = before
        self.after = after


def _coordinates(point) -> Sequence:
    if isinstance(point, WitnessPoint):
        return point.v.v
    return point


def evaluation_rows(points: Sequence, degree: int, p: int) -> np.ndarray:
    """
    见证点处全部 d 次单项式的模 p 值

    Returns:
        (点数, 单项式个数) 矩阵
    """
    coords = [_coordinates(x) for x in points]
    n_vars = len(coords[0]) if coords else 0
    table = monomial_table(n_vars, degree)
    values = np.array([[to_fp(x, p) for x in row] for row in coords], dtype=np.int64)
    values = values.reshape(len(coords), n_vars)

    out = np.ones((len(coords), len(table)), dtype=np.int64)
    powers = np.ones((len(coords), degree + 1), dtype=np.int64)
    for var in range(n_vars):
        column = table.exps[:, var]
        if not column.any():
            continue
        for e in range(1, degree + 1):
            powers[:, e] = powers[:, e - 1] * values[:, var] % p
        out = out * powers[:, column] % p
    return out


def vanishing_piece(witnesses: Sequence, degree: int, margin: int, p: int,
                    block_rows: Optional[int] = None) -> GradedPiece:
    """
    在全部见证点处为零的 d 次形式

    Args:
        witnesses: WitnessPoint 或坐标序列；最后 margin 个作为稳定性检验的补充样本
        degree: 次数 d
        margin: 余量
        p: 素数

    Returns:
        求值矩阵的右核（行最简形）

    Raises:
        ValueError: 见证点少于单项式个数 + 余量
        Unstabilized: 补充余量样本后维数下降
    """
    check_prime(p)
    if not witnesses:
        raise ValueError("没有见证点")
    n_vars = len(_coordinates(witnesses[0]))
    n_monomials = monomial_count(n_vars, degree)
    if len(witnesses) < n_monomials + margin:
        raise ValueError(f"见证点不足: {len(witnesses)} < {n_monomials} 个单项式 + 余量 {margin}")

    block_rows = block_rows or EXACT_CONFIG['block_rows']
    form = EchelonForm(n_monomials, p, block_rows)
    head = len(witnesses) - margin
    for start in range(0, head, block_rows):
        form.add_rows(evaluation_rows(witnesses[start:min(start + block_rows, head)], degree, p))
    before = n_monomials - form.rank
    for start in range(head, len(witnesses), block_rows):
        form.add_rows(evaluation_rows(witnesses[start:start + block_rows], degree, p))
    after = n_monomials - form.rank
    if after < before:
        raise Unstabilized(degree, before, after)
    logger.debug("%d 次消失片 (p=%d): %d 个见证点, 维数 %d", degree, p, len(witnesses), after)
    return GradedPiece(degree, n_vars, p, form.kernel())


class InterpolatedIdeal:
    """
    若干分支族并集的消失理想（即各族消失理想之交），按 (d, p) 缓存分次片

    每族取 单项式个数 个见证点作为主样本，外加 余量 个补充样本；
    主样本按族依次排列，补充样本统一放在最后。

    Attributes:
        label: 名称
        families: 分支族
        seed: 起始种子
        samples: 每族见证点总数（None 为 单项式个数 + 余量）
        generator_degrees: 作为除式时取这些次数的片
    """

    n_vars = 20
    min_degree = 1

    def __init__(self, label: str, families: Sequence[str], seed: int = 1,
                 samples: Optional[int] = None, generator_degrees: Sequence[int] = (2,)):
        if not families:
            raise ValueError("至少需要一个分支族")
        self.label = label
        self.families = tuple(check_family(f) for f in families)
        self.seed = seed
        self.samples = samples
        self.generator_degrees = tuple(generator_degrees)
        self._witnesses: Dict[str, List[WitnessPoint]] = {f: [] for f in self.families}
        self._pieces: Dict[tuple, GradedPiece] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"InterpolatedIdeal({self.label!r}, {self.families})"

    def sample_sizes(self, degree: int):
        """(每族主样本数, 每族余量)"""
        n_monomials = monomial_count(self.n_vars, degree)
        margin = margin_for(n_monomials)
        if self.samples is None:
            return n_monomials, margin
        if self.samples < n_monomials + margin:
            raise ValueError(f"{self.label}: 每族样本数 {self.samples} < 单项式个数 {n_monomials} + 余量 {margin}")
        return self.samples - margin, margin

    def witnesses(self, family: str, count: int) -> List[WitnessPoint]:
        """该族种子 seed .. seed + count − 1 的见证点"""
        with self._lock:
            cached = self._witnesses[family]
            for k in range(len(cached), count):
                cached.append(sample(family, self.seed + k))
            return cached[:count]

    def witness_sequence(self, degree: int) -> Tuple[List[WitnessPoint], int]:
        main, margin = self.sample_sizes(degree)
        batches = {f: self.witnesses(f, main + margin) for f in self.families}
        ordered = [w for f in self.families for w in batches[f][:main]]
        ordered += [w for f in self.families for w in batches[f][main:]]
        return ordered, margin * len(self.families)

    def piece(self, degree: int, p: int) -> GradedPiece:
        key = (degree, p)
        if key not in self._pieces:
            if degree < self.min_degree:
                raise ValueError(f"{self.label}: 消失理想没有 {degree} 次元素")
            points, margin = self.witness_sequence(degree)
            self._pieces[key] = vanishing_piece(points, degree, margin, p)
            logger.info("%s 的 %d 次片 (p=%d): 维数 %d", self.label, degree, p, self._pieces[key].dim)
        return self._pieces[key]

    def divisor_rows(self, p: int):
        """作为除式：generator_degrees 各次数片的基"""
        return [(d, row) for d in self.generator_degrees for row in self.piece(d, p).basis]
