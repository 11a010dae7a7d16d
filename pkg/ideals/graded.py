"""
齐次理想的分次片
Graded Pieces of Homogeneous Ideals

齐次理想在次数 d 的部分是 d 次单项式空间（grevlex 降序编号）的一个子空间，
这里在 F_p 上用行最简形基表示。同一子空间的行最简形基唯一，所以相等、包含、
交、商理想都化成消元。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config import EXACT_CONFIG
from exact.linalg import EchelonForm, check_prime, consensus, matmul_mod
from exact.scalars import UnluckyPrime, reconstruct_vector, to_fp
from poly.mpoly import MPoly, VarSet, monomial_basis

logger = logging.getLogger(__name__)

MONOMIAL_ORDER = 'grevlex'


class DegreeTooSmall(ValueError):
    """次数低于所有生成元次数，或为负"""


class DegreeMismatch(ValueError):
    """两个分次片的次数或变量数不同"""


# ===== 单项式表 =====

class MonomialTable:
    """n 个变量的 d 次单项式（grevlex 降序）及其下标"""

    def __init__(self, n_vars: int, degree: int):
        self.n_vars = n_vars
        self.degree = degree
        self.monomials = monomial_basis(n_vars, degree)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.exps = np.array(self.monomials, dtype=np.int64).reshape(len(self.monomials), n_vars)

    def __len__(self):
        return len(self.monomials)


@lru_cache(maxsize=None)
def monomial_table(n_vars: int, degree: int) -> MonomialTable:
    if degree < 0:
        raise DegreeTooSmall(f"次数不能为负: {degree}")
    return MonomialTable(n_vars, degree)


def monomial_count(n_vars: int, degree: int) -> int:
    """C(n + d - 1, d)"""
    return comb(n_vars + degree - 1, degree)


@lru_cache(maxsize=None)
def product_columns(n_vars: int, degree: int, shift: Tuple[int, ...]) -> np.ndarray:
    """d 次单项式 m 的下标 ↦ m·x^shift 在 d + |shift| 次单项式中的下标"""
    source = monomial_table(n_vars, degree)
    target = monomial_table(n_vars, degree + sum(shift)).index
    return np.array([target[tuple(a + b for a, b in zip(m, shift))] for m in source.monomials],
                    dtype=np.int64)


def unit_shift(n_vars: int, var: int) -> Tuple[int, ...]:
    return tuple(1 if i == var else 0 for i in range(n_vars))


def poly_vector_mod(f: MPoly, p: int) -> np.ndarray:
    """齐次多项式 → 其次数的单项式空间中的模 p 系数向量"""
    table = monomial_table(len(f.varset), f.degree)
    vector = np.zeros(len(table), dtype=np.int64)
    for exps, coeff in f.terms.items():
        vector[table.index[exps]] = to_fp(coeff, p)
    return vector


def multiply_rows(rows: np.ndarray, n_vars: int, degree: int,
                  factor: np.ndarray, factor_degree: int, p: int) -> np.ndarray:
    """
    行向量（d 次形式）逐个乘以同一个 e 次形式

    Args:
        rows: (k, N_d) 模 p 系数
        factor: e 次形式的系数向量

    Returns:
        (k, N_{d+e}) 的乘积系数
    """
    out = np.zeros((rows.shape[0], monomial_count(n_vars, degree + factor_degree)), dtype=np.int64)
    if not rows.shape[0]:
        return out
    monomials = monomial_table(n_vars, factor_degree).monomials
    for t in np.flatnonzero(factor):
        cols = product_columns(n_vars, degree, monomials[t])
        out[:, cols] = (out[:, cols] + rows * int(factor[t]) % p) % p
    return out


def left_kernel(matrix: np.ndarray, p: int) -> np.ndarray:
    """{y : y · matrix = 0} 的行最简形基"""
    form = EchelonForm(matrix.shape[0], p)
    form.add_rows(matrix.T)
    return form.kernel()


# ===== 分次片 =====

@dataclass(frozen=True, eq=False)
class GradedPiece:
    """
    理想在 d 次的部分，F_p 上的行最简形基

    Attributes:
        degree: 次数 d
        n_vars: 变量个数
        p: 素数
        basis: (维数, 单项式个数) 行最简形矩阵
    """

    degree: int
    n_vars: int
    p: int
    basis: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        arr = np.asarray(self.basis, dtype=np.int64).reshape(-1, monomial_count(self.n_vars, self.degree))
        arr.setflags(write=False)
        object.__setattr__(self, 'basis', arr)

    @classmethod
    def from_echelon(cls, degree: int, n_vars: int, form: EchelonForm) -> 'GradedPiece':
        return cls(degree, n_vars, form.p, form.basis.copy())

    @classmethod
    def from_rows(cls, degree: int, n_vars: int, p: int, rows) -> 'GradedPiece':
        """任意张成行 → 规范基"""
        form = EchelonForm(monomial_count(n_vars, degree), p)
        form.add_rows(rows)
        return cls.from_echelon(degree, n_vars, form)

    @classmethod
    def zero(cls, degree: int, n_vars: int, p: int) -> 'GradedPiece':
        return cls(degree, n_vars, p, np.zeros((0, monomial_count(n_vars, degree)), dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def n_monomials(self) -> int:
        return self.basis.shape[1]

    @property
    def codim(self) -> int:
        return self.n_monomials - self.dim

    @property
    def pivots(self) -> List[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def echelon(self) -> EchelonForm:
        form = EchelonForm(self.n_monomials, self.p)
        form.basis = np.array(self.basis)
        form.pivots = self.pivots
        return form

    def _check_compatible(self, other: 'GradedPiece'):
        if (self.degree, self.n_vars) != (other.degree, other.n_vars):
            raise DegreeMismatch(
                f"分次片不匹配: (d={self.degree}, n={self.n_vars}) vs (d={other.degree}, n={other.n_vars})")
        if self.p != other.p:
            raise ValueError(f"素数不同: {self.p} vs {other.p}")

    def contains(self, other) -> bool:
        """other 为分次片或行向量组"""
        if isinstance(other, GradedPiece):
            self._check_compatible(other)
            other = other.basis
        if not np.asarray(other).size:
            return True
        return self.echelon().contains(other)

    def __eq__(self, other):
        if not isinstance(other, GradedPiece):
            return NotImplemented
        return ((self.degree, self.n_vars, self.p) == (other.degree, other.n_vars, other.p)
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.degree, self.n_vars, self.p, self.basis.tobytes()))

    def __repr__(self):
        return f"GradedPiece(d={self.degree}, dim={self.dim}/{self.n_monomials}, p={self.p})"

    def raise_degree(self) -> 'GradedPiece':
        """R₁ · 本片：乘以每个变量后张成的 d+1 次子空间"""
        form = EchelonForm(monomial_count(self.n_vars, self.degree + 1), self.p)
        for block in variable_multiples(self):
            form.add_rows(block)
        return GradedPiece.from_echelon(self.degree + 1, self.n_vars, form)

    def rational_basis(self, *others: 'GradedPiece') -> List[List[Fraction]]:
        """
        由多个素数下的同一行最简形基做中国剩余与有理重构

        Raises:
            ValueError: 主元位置不一致（某素数不幸运），或模数不足以重构
        """
        pieces = (self,) + others
        for other in others:
            self._check_compatible_shape(other)
            if other.pivots != self.pivots:
                raise ValueError(f"素数 {other.p} 下主元位置不同，无法重构")
        primes = [piece.p for piece in pieces]
        return [reconstruct_vector([piece.basis[r].tolist() for piece in pieces], primes)
                for r in range(self.dim)]

    def _check_compatible_shape(self, other: 'GradedPiece'):
        if (self.degree, self.n_vars, self.dim) != (other.degree, other.n_vars, other.dim):
            raise DegreeMismatch("分次片形状不同，无法合并")

    def to_dict(self, rational: Optional[List[List[Fraction]]] = None) -> Dict:
        data = {
            'degree': self.degree,
            'n_vars': self.n_vars,
            'order': MONOMIAL_ORDER,
            'prime': self.p,
            'dim': self.dim,
            'basis': self.basis.tolist(),
        }
        if rational is not None:
            data['rational_basis'] = [[str(x) for x in row] for row in rational]
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'GradedPiece':
        if data.get('order') != MONOMIAL_ORDER:
            raise ValueError(f"不支持的单项式序: {data.get('order')}")
        piece = cls(int(data['degree']), int(data['n_vars']), int(data['prime']),
                    np.array(data['basis'], dtype=np.int64))
        if piece.dim != int(data['dim']):
            raise ValueError(f"维数字段 {data['dim']} 与基的行数 {piece.dim} 不符")
        return piece


def variable_multiples(piece: GradedPiece, block_rows: Optional[int] = None) -> Iterator[np.ndarray]:
    """逐块产生 x_i · (基的若干行)"""
    block_rows = block_rows or EXACT_CONFIG['block_rows']
    n_cols = monomial_count(piece.n_vars, piece.degree + 1)
    for var in range(piece.n_vars):
        cols = product_columns(piece.n_vars, piece.degree, unit_shift(piece.n_vars, var))
        for start in range(0, piece.dim, block_rows):
            rows = piece.basis[start:start + block_rows]
            block = np.zeros((rows.shape[0], n_cols), dtype=np.int64)
            block[:, cols] = rows
            yield block


def intersect(a: GradedPiece, b: GradedPiece) -> GradedPiece:
    """
    行空间之交

    取 [A; B] 的左核 (x, y)，xA = −yB 即交中的向量

    Raises:
        DegreeMismatch: 次数或变量数不同
    """
    a._check_compatible(b)
    if not a.dim or not b.dim:
        return GradedPiece.zero(a.degree, a.n_vars, a.p)
    stacked = np.vstack([a.basis, b.basis])
    kernel = left_kernel(stacked, a.p)
    if not kernel.shape[0]:
        return GradedPiece.zero(a.degree, a.n_vars, a.p)
    rows = matmul_mod(kernel[:, :a.dim], a.basis, a.p)
    return GradedPiece.from_rows(a.degree, a.n_vars, a.p, rows)


# ===== 生成元集合 =====

class GeneratorSet:
    """
    齐次生成元集合

    Attributes:
        label: 名称（如 I、J）
        varset: 变量集
        polys: 生成元（可含零多项式，求分次片时忽略）
        provenance: constructed 或 interpolated
        zero_degree: 零生成元在统计中计入的名义次数（None 表示不计）
    """

    def __init__(self, label: str, varset: VarSet, polys: Sequence[MPoly],
                 provenance: str = 'constructed', zero_degree: Optional[int] = None):
        polys = list(polys)
        for f in polys:
            if f.varset != varset:
                raise ValueError(f"{label}: 生成元的变量集与 {varset} 不一致")
            if f and not f.is_homogeneous():
                raise ValueError(f"{label}: 生成元不是齐次的: {f}")
        self.label = label
        self.varset = varset
        self.polys = polys
        self.provenance = provenance
        self.zero_degree = zero_degree
        self._pieces: Dict[Tuple[int, int], GradedPiece] = {}

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return f"GeneratorSet({self.label!r}, {len(self.polys)} 个, {self.provenance})"

    @property
    def n_vars(self) -> int:
        return len(self.varset)

    def degrees(self) -> List[int]:
        return sorted({f.degree for f in self.polys if f})

    @property
    def min_degree(self) -> int:
        degrees = self.degrees()
        if not degrees:
            raise DegreeTooSmall(f"{self.label}: 没有非零生成元")
        return degrees[0]

    def census(self) -> Dict[int, int]:
        histogram: Dict[int, int] = {}
        for f in self.polys:
            degree = f.degree if f else self.zero_degree
            if degree is not None:
                histogram[degree] = histogram.get(degree, 0) + 1
        return dict(sorted(histogram.items()))

    def generator_rows(self, degree: int, p: int) -> np.ndarray:
        vectors = [poly_vector_mod(f, p) for f in self.polys if f and f.degree == degree]
        if not vectors:
            return np.zeros((0, monomial_count(self.n_vars, degree)), dtype=np.int64)
        return np.vstack(vectors)

    def divisor_rows(self, p: int) -> List[Tuple[int, np.ndarray]]:
        """(次数, 系数向量)，作为商理想的除式"""
        return [(f.degree, poly_vector_mod(f, p)) for f in self.polys if f]

    def piece(self, degree: int, p: int) -> GradedPiece:
        """d 次片 = R₁·(d−1 次片) + d 次生成元，按 (d, p) 缓存"""
        if degree < self.min_degree:
            raise DegreeTooSmall(f"{self.label}: 次数 {degree} 低于最低生成元次数 {self.min_degree}")
        key = (degree, p)
        if key not in self._pieces:
            form = EchelonForm(monomial_count(self.n_vars, degree), p)
            if degree > self.min_degree:
                for block in variable_multiples(self.piece(degree - 1, p)):
                    form.add_rows(block)
            form.add_rows(self.generator_rows(degree, p))
            self._pieces[key] = GradedPiece.from_echelon(degree, self.n_vars, form)
            logger.debug("%s 的 %d 次片 (p=%d): 维数 %d", self.label, degree, p, form.rank)
        return self._pieces[key]


class IdealIntersection:
    """若干理想之交，逐次取分次片之交"""

    def __init__(self, label: str, sources: Sequence):
        if not sources:
            raise ValueError("至少需要一个理想")
        n_vars = {s.n_vars for s in sources}
        if len(n_vars) != 1:
            raise ValueError(f"变量数不一致: {n_vars}")
        self.label = label
        self.sources = list(sources)
        self.n_vars = n_vars.pop()

    @property
    def min_degree(self) -> int:
        return max(s.min_degree for s in self.sources)

    def piece(self, degree: int, p: int) -> GradedPiece:
        result = self.sources[0].piece(degree, p)
        for source in self.sources[1:]:
            result = intersect(result, source.piece(degree, p))
        return result


def piece_or_zero(source, degree: int, p: int) -> GradedPiece:
    """低于最低次数时为零片"""
    if degree < source.min_degree:
        return GradedPiece.zero(degree, source.n_vars, p)
    return source.piece(degree, p)


# ===== 理想运算（单个素数） =====

def ideal_piece(g, degree: int, p: int) -> GradedPiece:
    """
    d 次片：{m·f : f 为生成元, deg m = d − deg f} 张成的空间

    Raises:
        DegreeTooSmall: d 低于所有生成元次数
    """
    return g.piece(degree, check_prime(p))


def minimal_generator_count_at(g, degree: int, p: int) -> int:
    """β_d = dim I_d − dim R₁·I_{d−1}"""
    current = g.piece(degree, p)
    if degree - 1 < g.min_degree:
        return current.dim
    return current.dim - g.piece(degree - 1, p).raise_degree().dim


def colon_piece(g, divisors, degree: int, p: int) -> GradedPiece:
    """
    商理想 (g : divisors) 的 d 次片：{f : f·q ∈ g_{d+deg q}，对每个除式 q}

    依次对每个除式把当前候选空间 K 收缩为 K·q 模 g 的左核

    Args:
        g: 被除理想（提供 piece）
        divisors: 除式来源（提供 divisor_rows）
        degree: 次数 d
        p: 素数

    Raises:
        DegreeTooSmall: d 为负
    """
    if degree < 0:
        raise DegreeTooSmall(f"次数不能为负: {degree}")
    n_vars = g.n_vars
    candidates = np.eye(monomial_count(n_vars, degree), dtype=np.int64)
    for factor_degree, factor in divisors.divisor_rows(p):
        if not candidates.shape[0]:
            break
        target = piece_or_zero(g, degree + factor_degree, p)
        products = multiply_rows(candidates, n_vars, degree, factor, factor_degree, p)
        residue = target.echelon().reduce(products) if target.dim else products
        kernel = left_kernel(residue, p)
        candidates = matmul_mod(kernel, candidates, p)
    return GradedPiece.from_rows(degree, n_vars, p, candidates)


class VariableDivisors:
    """无关理想 m = ⟨x₀, ..., x_{n−1}⟩ 作为除式"""

    def __init__(self, n_vars: int):
        self.n_vars = n_vars

    def divisor_rows(self, p: int) -> List[Tuple[int, np.ndarray]]:
        eye = np.eye(self.n_vars, dtype=np.int64)
        # 1 次单项式按 grevlex 降序即 x0, x1, ...
        return [(1, eye[var]) for var in range(self.n_vars)]


def colon_irrelevant_piece(g, degree: int, p: int) -> GradedPiece:
    """(g : m) 的 d 次片：{f : x_i·f ∈ g_{d+1}，对所有变量}"""
    return colon_piece(g, VariableDivisors(g.n_vars), degree, p)


# ===== 多素数一致 =====

@dataclass
class PieceResult:
    """多素数一致的分次片：维数与维数一致的各素数下的片"""

    dim: int
    pieces: Dict[int, GradedPiece]

    @property
    def piece(self) -> GradedPiece:
        return self.pieces[min(self.pieces)]

    def rational_basis(self) -> List[List[Fraction]]:
        ordered = [self.pieces[p] for p in sorted(self.pieces)]
        return ordered[0].rational_basis(*ordered[1:])


def consensus_piece(build: Callable[[int], GradedPiece], primes: Sequence[int],
                    threads: Optional[int] = None,
                    prefer: Callable[[Iterable[int]], int] = max,
                    label: str = '维数') -> PieceResult:
    """
    在多个素数下构造同一分次片，维数须一致

    Args:
        build: 素数 → 分次片
        primes: 至少两个素数
        threads: 按素数并行的线程数
        prefer: 不一致时的取舍（张成的片取 max，核取 min）

    Raises:
        ConsensusFailure: 重试后仍不一致
    """
    built: Dict[int, GradedPiece] = {}

    def dim_at(p: int) -> Optional[int]:
        try:
            piece = build(p)
        except UnluckyPrime as e:
            logger.warning("素数 %d 不可用: %s", p, e)
            return None
        built[p] = piece
        return piece.dim

    dim = consensus(dim_at, primes, threads, label, prefer)
    return PieceResult(dim, {p: piece for p, piece in built.items() if piece.dim == dim})


def minimal_generator_count(g, degree: int, primes: Sequence[int],
                            threads: Optional[int] = None) -> int:
    """多素数一致的 β_d"""
    return consensus(lambda p: minimal_generator_count_at(g, degree, p), primes, threads, 'β')
