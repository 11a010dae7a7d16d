"""
余迷向簇各分支的构造
Component Family Constructors

Hurwitz 形式 p (∧₂M) pᵀ、直线对的 Chow 形式、平面二次曲线的 Chow 形式
（∧₂(M0 + εM1) 的 ε¹ 系数）以及线性型的平方。
底层辅助函数只用环运算，数值构造和雅可比矩阵的符号参数化共用同一份代码。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from exact.linalg import rational_rank
from grassmann.quadric import PLUCKER, PLUCKER_PAIRS, UPPER, PlueckerVector, QuadricCoeffs, c_index
from poly.mpoly import MPoly


class NotALine(ValueError):
    """Plücker 关系不成立"""


class RankNotOne(ValueError):
    """M0 的秩不是 1"""


class DegenerateLimit(ValueError):
    """退化极限为零"""


class ZeroForm(ValueError):
    """线性型为零"""


@dataclass(frozen=True)
class SymMatrix4:
    """4×4 对称矩阵（P³ 中的二次曲面）"""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("SymMatrix4 需要 4×4 矩阵")
        if any(rows[i][j] != rows[j][i] for i in range(4) for j in range(4)):
            raise ValueError("矩阵不对称")
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_upper(cls, values: Sequence) -> 'SymMatrix4':
        """上三角 10 个元素，按行排列"""
        return cls(tuple(tuple(r) for r in sym_from_upper(values)))

    @classmethod
    def diag(cls, values: Sequence) -> 'SymMatrix4':
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(4)) for i in range(4)))

    @classmethod
    def outer(cls, v: Sequence) -> 'SymMatrix4':
        """v vᵀ"""
        return cls(tuple(tuple(Fraction(a) * b for b in v) for a in v))

    def rank(self) -> int:
        return rational_rank(self.rows)

    def det(self) -> Fraction:
        return determinant(self.rows)

    def congruence(self, g: Sequence[Sequence]) -> 'SymMatrix4':
        """g M gᵀ"""
        return SymMatrix4(tuple(tuple(r) for r in matmul(matmul(g, self.rows), transpose(g))))

    def __add__(self, other: 'SymMatrix4') -> 'SymMatrix4':
        return SymMatrix4(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scaled(self, factor) -> 'SymMatrix4':
        return SymMatrix4(tuple(tuple(a * Fraction(factor) for a in r) for r in self.rows))


# ===== 环上的通用辅助函数 =====

def sym_from_upper(values: Sequence) -> List[list]:
    values = list(values)
    if len(values) != 10:
        raise ValueError(f"需要 10 个上三角元素，得到 {len(values)} 个")
    m = [[None] * 4 for _ in range(4)]
    k = 0
    for i in range(4):
        for j in range(i, 4):
            m[i][j] = m[j][i] = values[k]
            k += 1
    return m


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[list]:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: Sequence[Sequence]) -> List[list]:
    return [list(col) for col in zip(*a)]


def determinant(m: Sequence[Sequence]) -> Fraction:
    """有理方阵的行列式（分数消元）"""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            factor = a[i][col] / a[col][col]
            a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    return det


def second_compound(m: Sequence[Sequence]) -> List[list]:
    """∧₂M：行列都按 (01, 02, 03, 12, 13, 23) 编号的 2×2 子式矩阵"""
    return [[m[i][k] * m[j][l] - m[i][l] * m[j][k] for k, l in PLUCKER_PAIRS]
            for i, j in PLUCKER_PAIRS]


def mixed_compound(m0: Sequence[Sequence], m1: Sequence[Sequence]) -> List[list]:
    """∧₂(M0 + εM1) 的 ε¹ 系数"""
    return [[m0[i][k] * m1[j][l] + m1[i][k] * m0[j][l] - m0[i][l] * m1[j][k] - m1[i][l] * m0[j][k]
             for k, l in PLUCKER_PAIRS]
            for i, j in PLUCKER_PAIRS]


def upper_of(c6: Sequence[Sequence]) -> list:
    """6×6 对称矩阵 → c0..c20"""
    return [c6[i][j] for i, j in UPPER]


def plucker_minors(frame: Sequence[Sequence]) -> list:
    r0, r1 = frame
    return [r0[i] * r1[j] - r0[j] * r1[i] for i, j in PLUCKER_PAIRS]


def meet_weights(q: Sequence) -> list:
    """与直线 q 相交的线性型 Σ w_i p_i 的系数：q01p23 − q02p13 + q03p12 + q12p03 − q13p02 + q23p01"""
    return [q[5], -q[4], q[3], q[2], -q[1], q[0]]


def product_coeffs(w1: Sequence, w2: Sequence) -> list:
    """两个线性型乘积的对称坐标"""
    half = Fraction(1, 2)
    return [w1[i] * w2[i] if i == j else (w1[i] * w2[j] + w1[j] * w2[i]) * half for i, j in UPPER]


# ===== 数值构造 =====

def hurwitz_form(m: SymMatrix4) -> QuadricCoeffs:
    """二次曲面 M 的 Hurwitz 形式：c 取 ∧₂M 的上三角"""
    return QuadricCoeffs(tuple(upper_of(second_compound(m.rows))))


def meet_form(line: PlueckerVector) -> MPoly:
    """
    与直线 L 相交的直线构成的超平面截面

    Raises:
        NotALine: Plücker 关系不成立
    """
    if not line.is_line():
        raise NotALine(f"Plücker 关系不成立: {line.relation()}")
    return MPoly(PLUCKER, {tuple(1 if k == i else 0 for k in range(6)): w
                           for i, w in enumerate(meet_weights(line.q))})


def meet_pairing(a: PlueckerVector, b: PlueckerVector) -> Fraction:
    """两条直线的配对，为零当且仅当相交"""
    return sum((x * y for x, y in zip(meet_weights(a.q), b.q)), Fraction(0))


def chow_line_pair(l1: PlueckerVector, l2: PlueckerVector) -> QuadricCoeffs:
    """直线对 L1 ∪ L2 的 Chow 形式"""
    return QuadricCoeffs.from_poly(meet_form(l1) * meet_form(l2))


def chow_conic(m0: SymMatrix4, m1: SymMatrix4) -> QuadricCoeffs:
    """
    平面二次曲线的 Chow 形式：∧₂(M0 + εM1) 的 ε¹ 系数

    Raises:
        RankNotOne: rank(M0) ≠ 1
        DegenerateLimit: ε¹ 系数为零或为 Plücker 关系的倍数
    """
    if m0.rank() != 1:
        raise RankNotOne(f"M0 的秩为 {m0.rank()}，需要 1")
    c = QuadricCoeffs(tuple(upper_of(mixed_compound(m0.rows, m1.rows))))
    if c.invariant().is_zero():
        raise DegenerateLimit("退化极限的 ε¹ 系数为零")
    return c


def square_form(ell: MPoly) -> QuadricCoeffs:
    """
    线性型的平方

    Raises:
        ZeroForm: ell = 0
    """
    if not ell:
        raise ZeroForm("线性型为零")
    if ell.varset != PLUCKER or not (ell.is_homogeneous() and ell.degree == 1):
        raise ValueError("需要 Plücker 变量的线性型")
    return QuadricCoeffs.from_poly(ell * ell)


def plucker_action(g: Sequence[Sequence]) -> List[list]:
    """GL(4) 在 Plücker 坐标上的诱导作用 ∧₂g"""
    return second_compound([[Fraction(x) for x in row] for row in g])


_C_LAYOUT = [[c_index(i, j) for j in range(6)] for i in range(6)]


def transform_quadric(c: QuadricCoeffs, action: Sequence[Sequence]) -> QuadricCoeffs:
    """C ↦ A C Aᵀ"""
    c6 = [[c.c[k] for k in row] for row in _C_LAYOUT]
    return QuadricCoeffs(tuple(upper_of(matmul(matmul(action, c6), transpose(action)))))


def linear_form(weights: Sequence) -> MPoly:
    return MPoly(PLUCKER, {tuple(1 if k == i else 0 for k in range(6)): Fraction(w)
                           for i, w in enumerate(weights)})
