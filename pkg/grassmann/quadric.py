"""
Plücker 坐标下的二次型
Quadrics in Plücker Coordinates

二次型 Q(p) = p·C·pᵀ，C 为 6×6 对称矩阵，上三角按行依次记作 c0..c20。
c 只在模 Plücker 关系的意义下确定：c5 += λ, c9 -= λ, c12 += λ 给出同一个二次曲面，
不变量坐标 v（20 个）是这一加法群作用的不变量。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from exact.linalg import rational_rank, rational_solve
from poly.mpoly import MPoly, VarSet

logger = logging.getLogger(__name__)

PLUCKER_NAMES = ('p01', 'p02', 'p03', 'p12', 'p13', 'p23')
PLUCKER = VarSet(PLUCKER_NAMES)
PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
C_VARS = VarSet(f'c{k}' for k in range(21))
INVARIANT = VarSet(f'v{k}' for k in range(20))

# 上三角 (i, j) ↔ c 下标，按行排列
UPPER = tuple((i, j) for i in range(6) for j in range(i, 6))
C_INDEX = {pair: k for k, pair in enumerate(UPPER)}

# 规范代表 c12 = 0；其余 c 与 v 的对应
GAUGE_INDICES = (5, 9, 12)
GAUGE_SIGNS = (1, -1, 1)


class NotQuadratic(ValueError):
    """多项式不是 Plücker 变量的二次型"""


class ZeroQuadric(ValueError):
    """系数全为零"""


class PlueckerMultiple(ValueError):
    """二次型是 Plücker 关系的倍数（不变量坐标为零）"""


def _frac_tuple(values: Sequence, length: int, label: str) -> Tuple[Fraction, ...]:
    values = tuple(Fraction(x) for x in values)
    if len(values) != length:
        raise ValueError(f"{label} 需要 {length} 个分量，得到 {len(values)} 个")
    return values


def c_index(i: int, j: int) -> int:
    """对称矩阵位置 (i, j) 对应的 c 下标"""
    return C_INDEX[(min(i, j), max(i, j))]


def invariant_from_coeffs(c: Sequence) -> list:
    """c0..c20 → v0..v19（任意系数环）"""
    c = list(c)
    return c[0:5] + [c[5] - c[12]] + c[6:9] + [c[9] + c[12]] + c[10:12] + c[13:21]


def coeffs_from_invariant(v: Sequence, zero=0) -> list:
    """v0..v19 → 规范代表 c（c12 = 0）"""
    v = list(v)
    return v[0:12] + [zero] + v[12:20]


def quadric_poly(coeffs: Sequence, varset: VarSet = PLUCKER) -> MPoly:
    """
    由 21 个系数构造 Q(p) = Σ C_ij p_i p_j

    系数可以是数，也可以是 c 变量上的多项式（得到系数为多项式的符号二次型）
    """
    terms = {}
    for k, (i, j) in enumerate(UPPER):
        value = coeffs[k] if i == j else coeffs[k] * 2
        if not value:
            continue
        exps = [0] * 6
        exps[i] += 1
        exps[j] += 1
        terms[tuple(exps)] = value
    return MPoly(varset, terms)


def symmetric_coefficients(q: MPoly) -> list:
    """
    二次型 → 对称矩阵上三角坐标：对角元取 p_i² 的系数，非对角元取混合单项式系数的一半

    Raises:
        NotQuadratic: 不是二次齐次式
    """
    if q and not (q.is_homogeneous() and q.degree == 2):
        raise NotQuadratic(f"需要二次齐次式，得到次数 {q.degree}")
    if q.varset != PLUCKER:
        raise NotQuadratic(f"变量集必须是 Plücker 变量: {q.varset}")
    result = []
    for i, j in UPPER:
        exps = [0] * 6
        exps[i] += 1
        exps[j] += 1
        coeff = q.coefficient(tuple(exps))
        result.append(coeff if i == j or not coeff else coeff * Fraction(1, 2))
    return result


PLUCKER_RELATION = MPoly.from_text(PLUCKER, "p01*p23 - p02*p13 + p03*p12")


# ===== 数据类型 =====

@dataclass(frozen=True)
class PlueckerVector:
    """对偶 Plücker 坐标 (q01, q02, q03, q12, q13, q23)"""

    q: Tuple[Fraction, ...]

    def __post_init__(self):
        values = _frac_tuple(self.q, 6, "PlueckerVector")
        if not any(values):
            raise ValueError("Plücker 向量不能为零")
        object.__setattr__(self, 'q', values)

    @classmethod
    def from_frame(cls, rows: Sequence[Sequence]) -> 'PlueckerVector':
        """2×4 矩阵的行张成直线，坐标为各 2×2 子式"""
        r0 = [Fraction(x) for x in rows[0]]
        r1 = [Fraction(x) for x in rows[1]]
        return cls(tuple(r0[i] * r1[j] - r0[j] * r1[i] for i, j in PLUCKER_PAIRS))

    @classmethod
    def basis_line(cls, i: int, j: int) -> 'PlueckerVector':
        """span(e_i, e_j)"""
        frame = [[1 if k == i else 0 for k in range(4)], [1 if k == j else 0 for k in range(4)]]
        return cls.from_frame(frame)

    def relation(self) -> Fraction:
        q = self.q
        return q[0] * q[5] - q[1] * q[4] + q[2] * q[3]

    def is_line(self) -> bool:
        return self.relation() == 0


@dataclass(frozen=True, eq=False)
class QuadricCoeffs:
    """
    二次型的 21 个系数

    相等性按规范作用取模：两组系数相等当且仅当不变量坐标相同
    """

    c: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'c', _frac_tuple(self.c, 21, "QuadricCoeffs"))

    @classmethod
    def from_poly(cls, q: MPoly) -> 'QuadricCoeffs':
        return cls(tuple(symmetric_coefficients(q)))

    def to_poly(self) -> MPoly:
        return quadric_poly(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def invariant(self) -> 'InvariantVector':
        return InvariantVector(tuple(invariant_from_coeffs(self.c)))

    def gauge_shift(self, lam) -> 'QuadricCoeffs':
        """c5 += λ, c9 -= λ, c12 += λ（即 Q + 2λP）"""
        c = list(self.c)
        for k, sign in zip(GAUGE_INDICES, GAUGE_SIGNS):
            c[k] += sign * Fraction(lam)
        return QuadricCoeffs(tuple(c))

    def plus_plucker(self, lam) -> 'QuadricCoeffs':
        """Q + λP"""
        return self.gauge_shift(Fraction(lam) / 2)

    def canonical(self) -> 'QuadricCoeffs':
        """规范代表 c12 = 0"""
        return self.invariant().to_quadric()

    def scaled(self, factor) -> 'QuadricCoeffs':
        return QuadricCoeffs(tuple(x * Fraction(factor) for x in self.c))

    def __eq__(self, other):
        if not isinstance(other, QuadricCoeffs):
            return NotImplemented
        return self.invariant() == other.invariant()

    def __hash__(self):
        return hash(self.invariant())


@dataclass(frozen=True)
class InvariantVector:
    """20 个规范不变量坐标"""

    v: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'v', _frac_tuple(self.v, 20, "InvariantVector"))

    def to_quadric(self) -> QuadricCoeffs:
        return QuadricCoeffs(tuple(coeffs_from_invariant(self.v, Fraction(0))))

    def is_zero(self) -> bool:
        return not any(self.v)


@dataclass(frozen=True)
class CoisotropyCertificate:
    """Λ(Q) = s·Q + t·P 的系数"""
    s: Fraction
    t: Fraction


# ===== 括号与余迷向检验 =====

def bracket(q: MPoly) -> MPoly:
    """
    Λ(Q) = ∂01Q·∂23Q − ∂02Q·∂13Q + ∂03Q·∂12Q

    Raises:
        NotQuadratic: Q 不是 Plücker 变量的二次型
    """
    if q.varset != PLUCKER:
        raise NotQuadratic(f"变量集必须是 Plücker 变量: {q.varset}")
    if q and not (q.is_homogeneous() and q.degree == 2):
        raise NotQuadratic(f"需要二次齐次式，得到次数 {q.degree}")
    d = [q.differentiate(i) for i in range(6)]
    return d[0] * d[5] - d[1] * d[4] + d[2] * d[3]


def _require_proper(c: QuadricCoeffs):
    if c.is_zero():
        raise ZeroQuadric("二次型系数全为零")
    if c.invariant().is_zero():
        raise PlueckerMultiple("二次型是 Plücker 关系的倍数")


def coisotropy_check(c: QuadricCoeffs) -> Optional[CoisotropyCertificate]:
    """
    余迷向检验：Λ(Q) 是否落在 span{Q, P} 中

    在对称坐标下精确解 21×2 线性方程组，解出后再做一次多项式恒等式验证

    Returns:
        证书 (s, t)；不是余迷向时返回 None

    Raises:
        ZeroQuadric: 系数全为零
        PlueckerMultiple: Q 是 Plücker 关系的倍数
    """
    _require_proper(c)
    q = c.to_poly()
    lam = bracket(q)
    plucker = symmetric_coefficients(PLUCKER_RELATION)
    rhs = symmetric_coefficients(lam)
    solution = rational_solve([[ck, pk] for ck, pk in zip(c.c, plucker)], rhs)
    if solution is None:
        return None

    s, t = solution
    if lam - q * s - PLUCKER_RELATION * t:
        raise ArithmeticError("证书未通过多项式恒等式验证")
    return CoisotropyCertificate(s, t)


def is_coisotropic(c: QuadricCoeffs) -> bool:
    return coisotropy_check(c) is not None


# ===== 余迷向矩阵 =====

def _fig1_rows(coeffs: Sequence, one, zero) -> List[list]:
    q = quadric_poly(coeffs)
    third = [x * Fraction(1, 2) if x else x for x in symmetric_coefficients(bracket(q))]
    first = [one * GAUGE_SIGNS[GAUGE_INDICES.index(k)] if k in GAUGE_INDICES else zero
             for k in range(21)]
    return [[first[k], coeffs[k], third[k] if third[k] else zero] for k in range(21)]


def fig1_matrix(c: Optional[QuadricCoeffs] = None) -> List[list]:
    """
    21×3 矩阵 [2P 的系数列, c, Λ(Q)/2 的系数列]

    秩 ≤ 2 当且仅当 c 给出的二次曲面余迷向；证书 (s, t) 对应核向量 (t/4, s/2, −1)。

    Args:
        c: 数值系数；为 None 时返回 c 变量上的符号矩阵

    Returns:
        21 行、每行 3 个元素（Fraction 或 MPoly）
    """
    if c is None:
        zero = C_VARS.zero()
        return _fig1_rows(C_VARS.gens(), C_VARS.one(), zero)
    return _fig1_rows(list(c.c), Fraction(1), Fraction(0))


def fig1_rank(c: QuadricCoeffs) -> int:
    return rational_rank(fig1_matrix(c))


@dataclass(frozen=True)
class CataneseNormalization:
    """λ 使 Λ(Q + λP) = t·P"""
    lam: Fraction
    t: Fraction
    normalized: QuadricCoeffs


class NotCoisotropic(ValueError):
    """二次型不是余迷向的"""


class NoUniqueLambda(RuntimeError):
    """不存在唯一的 λ"""


def catanese_normalize(c: QuadricCoeffs) -> CataneseNormalization:
    """
    求唯一的 λ 使 Λ(Q + λP) = t·P

    证书的 s 分量是 λ 的仿射函数 s(λ) = s + 2λ：取 λ = 0, 1 两点解出零点，再验证残差

    Raises:
        NotCoisotropic: 没有证书
        NoUniqueLambda: s(λ) 斜率为零或归一化后 s 不为零
    """
    base = coisotropy_check(c)
    if base is None:
        raise NotCoisotropic("二次型不是余迷向的，无法做 λ 归一化")
    shifted = coisotropy_check(c.plus_plucker(1))
    if shifted is None:
        raise NoUniqueLambda("Q + P 没有证书")

    slope = shifted.s - base.s
    if slope == 0:
        raise NoUniqueLambda(f"s(λ) 与 λ 无关 (s = {base.s})")
    lam = -base.s / slope

    normalized = c.plus_plucker(lam)
    cert = coisotropy_check(normalized)
    if cert is None or cert.s != 0:
        raise NoUniqueLambda(f"λ = {lam} 归一化后 s 仍不为零")
    return CataneseNormalization(lam, cert.t, normalized)
