"""
多项式组的模素数批量求值
Batched Modular Evaluation of Polynomial Families
"""

from typing import List, Sequence

import numpy as np

from exact.scalars import to_fp
from poly.mpoly import MPoly


class CompiledPolys:
    """
    把一组同变量集的多项式压成指数矩阵 + 系数数组，在 F_p 上向量化求值

    Attributes:
        exps: (项数, 变量数) 指数矩阵
        owner: 每一项所属多项式的下标
        coeffs: 每一项的有理系数
    """

    def __init__(self, polys: Sequence[MPoly]):
        polys = list(polys)
        if not polys:
            raise ValueError("至少需要一个多项式")
        self.varset = polys[0].varset
        self.count = len(polys)
        exps, owner, coeffs = [], [], []
        for i, f in enumerate(polys):
            if f.varset != self.varset:
                raise ValueError(f"变量集不一致: {f.varset} vs {self.varset}")
            for e, c in f.terms.items():
                exps.append(e)
                owner.append(i)
                coeffs.append(c)
        n = len(self.varset)
        self.exps = np.array(exps, dtype=np.int64).reshape(len(exps), n)
        self.owner = np.array(owner, dtype=np.int64)
        self.coeffs = coeffs
        self.max_exp = int(self.exps.max()) if len(exps) else 0
        self._coeff_cache = {}

    def coefficients_mod(self, p: int) -> np.ndarray:
        if p not in self._coeff_cache:
            self._coeff_cache[p] = np.array([to_fp(c, p) for c in self.coeffs], dtype=np.int64)
        return self._coeff_cache[p]

    def evaluate(self, points: Sequence[Sequence], p: int) -> np.ndarray:
        """
        在若干点处求值

        Args:
            points: 每个点一组坐标（int / Fraction），长度为变量数
            p: 素数

        Returns:
            (点数, 多项式个数) 的模 p 值矩阵

        Raises:
            UnluckyPrime: 坐标或系数的分母被 p 整除
        """
        coeffs = self.coefficients_mod(p)
        out = np.zeros((len(points), self.count), dtype=np.int64)
        for row, point in enumerate(points):
            values = np.array([to_fp(x, p) for x in point], dtype=np.int64)
            term = coeffs.copy()
            for var in range(self.exps.shape[1]):
                column = self.exps[:, var]
                if not column.any():
                    continue
                table = power_table(values[var], self.max_exp, p)
                term = term * table[column] % p
            sums = np.zeros(self.count, dtype=np.int64)
            np.add.at(sums, self.owner, term)
            out[row] = sums % p
        return out


def power_table(x: int, max_exp: int, p: int) -> np.ndarray:
    table = np.ones(max_exp + 1, dtype=np.int64)
    for e in range(1, max_exp + 1):
        table[e] = table[e - 1] * x % p
    return table


def vanishes_mod(polys: Sequence[MPoly], point: Sequence, primes: Sequence[int]) -> List[bool]:
    """每个多项式在 point 处是否在所有给定素数下都为零"""
    compiled = CompiledPolys(polys)
    zero = np.ones(len(polys), dtype=bool)
    for p in primes:
        zero &= compiled.evaluate([point], p)[0] == 0
    return zero.tolist()
