"""
模素数稠密线性代数
Dense Modular Linear Algebra

分块行最简形消元（矩阵乘法部分拆成8位分肢交给 float64 BLAS，结果精确），
秩与核、多素数一致性检验，以及小规模的有理数精确求解。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from config import EXACT_CONFIG, get_thread_count, select_primes
from exact.scalars import UnluckyPrime, to_fp

logger = logging.getLogger(__name__)

_PRIME_LIMIT = 2 ** 31
# 8位分肢 × 31位元素，4096项求和 < 2^51，float64 精确
_K_CHUNK = 4096
_LIMB_SHIFTS = (0, 8, 16, 24)


class ConsensusFailure(RuntimeError):
    """换新素数重试后各素数的秩仍不一致"""

    def __init__(self, message: str, ranks: Dict[int, Optional[int]]):
        super().__init__(message)
        self.ranks = ranks


def check_prime(p: int) -> int:
    if not 2 <= p < _PRIME_LIMIT:
        raise ValueError(f"素数必须位于 [2, 2^31): {p}")
    return p


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """F_p 上的稠密矩阵，构造后只读"""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        check_prime(self.p)
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError(f"FpMatrix 需要二维数组，得到 ndim={arr.ndim}")
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, 'entries', arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], p: int, cols: Optional[int] = None) -> 'FpMatrix':
        """由 int / Fraction / Fp 组成的行构造（逐项模约化，可能抛出 UnluckyPrime）"""
        if not rows:
            return cls(p, np.zeros((0, cols or 0), dtype=np.int64))
        data = [[to_fp(x, p) for x in row] for row in rows]
        return cls(p, np.array(data, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def transpose(self) -> 'FpMatrix':
        return FpMatrix(self.p, self.entries.T)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.shape, self.entries.tobytes()))


# ===== 模乘法 =====

def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    (a @ b) mod p，要求元素已在 [0, p)，p < 2^31

    a 按8位拆成4个分肢，每个分肢与 b 的乘积在 float64 中精确，逐肢移位合并
    """
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.int64)
    if m == 0 or n == 0 or k == 0:
        return out

    for start in range(0, k, _K_CHUNK):
        a_part = a[:, start:start + _K_CHUNK]
        b_part = b[start:start + _K_CHUNK].astype(np.float64)
        for shift in _LIMB_SHIFTS:
            limb = ((a_part >> shift) & 0xFF).astype(np.float64)
            partial = np.rint(limb @ b_part).astype(np.int64) % p
            out = (out + (partial << shift) % p) % p
    return out


def _rref_block(block: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """小块的完全行最简形（逐列主元消元）"""
    a = block.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    if rows == 0 or not a.any():
        return np.zeros((0, cols), dtype=np.int64), pivots

    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(a[r:, col])
        if nonzero.size == 0:
            continue
        i = r + int(nonzero[0])
        if i != r:
            a[[r, i]] = a[[i, r]]

        inv = pow(int(a[r, col]), -1, p)
        a[r, col:] = a[r, col:] * inv % p

        factors = a[:, col].copy()
        factors[r] = 0
        targets = np.flatnonzero(factors)
        if targets.size:
            update = factors[targets, None] * a[r, col:] % p
            a[targets, col:] = (a[targets, col:] - update) % p

        pivots.append(col)
        r += 1
        if not a[r:].any():
            break

    return a[:r], pivots


class EchelonForm:
    """
    增量行最简形

    逐块加入行，始终维护完全约化的基（主元为1，其他行在主元列为0），
    因此同一子空间得到唯一的基，可直接比较。
    """

    def __init__(self, cols: int, p: int, block_rows: Optional[int] = None):
        self.cols = cols
        self.p = check_prime(p)
        self.block_rows = block_rows or EXACT_CONFIG['block_rows']
        self.basis = np.zeros((0, cols), dtype=np.int64)
        self.pivots: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _as_rows(self, rows) -> np.ndarray:
        arr = np.asarray(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else np.zeros((0, self.cols), dtype=np.int64)
        if arr.shape[1] != self.cols:
            raise ValueError(f"列数不一致: {arr.shape[1]} vs {self.cols}")
        return arr % self.p

    def reduce(self, rows) -> np.ndarray:
        """对当前基约化，结果在主元列上为0；属于行空间当且仅当结果为零"""
        arr = self._as_rows(rows)
        if self.pivots and arr.shape[0]:
            arr = (arr - matmul_mod(arr[:, self.pivots], self.basis, self.p)) % self.p
        return arr

    def add_rows(self, rows) -> int:
        """
        加入若干行

        Returns:
            新增主元个数
        """
        arr = self._as_rows(rows)
        added = 0
        for start in range(0, arr.shape[0], self.block_rows):
            chunk = self.reduce(arr[start:start + self.block_rows])
            new_rows, new_pivots = _rref_block(chunk, self.p)
            if not new_pivots:
                continue
            if self.pivots:
                self.basis = (self.basis - matmul_mod(self.basis[:, new_pivots], new_rows, self.p)) % self.p
            merged = self.pivots + new_pivots
            order = np.argsort(merged, kind='stable')
            self.basis = np.vstack([self.basis, new_rows])[order]
            self.pivots = [merged[i] for i in order]
            added += len(new_pivots)
        return added

    def contains(self, rows) -> bool:
        return not self.reduce(rows).any()

    def kernel(self) -> np.ndarray:
        """右核 {x : basis · x = 0} 的行最简形基"""
        free = [c for c in range(self.cols) if c not in set(self.pivots)]
        k = np.zeros((len(free), self.cols), dtype=np.int64)
        if not free:
            return k
        k[np.arange(len(free)), free] = 1
        if self.pivots:
            k[:, self.pivots] = (-self.basis[:, free].T) % self.p
        canonical = EchelonForm(self.cols, self.p, self.block_rows)
        canonical.add_rows(k)
        return canonical.basis

    def copy(self) -> 'EchelonForm':
        clone = EchelonForm(self.cols, self.p, self.block_rows)
        clone.basis = self.basis.copy()
        clone.pivots = list(self.pivots)
        return clone


class RankKernel(NamedTuple):
    """秩与核的计算结果"""
    rank: int
    kernel: np.ndarray      # 每行一个核向量，行最简形


def echelonize(m: FpMatrix) -> EchelonForm:
    form = EchelonForm(m.cols, m.p)
    form.add_rows(m.entries)
    return form


def rank_and_kernel(m: FpMatrix) -> RankKernel:
    """
    秩与右核

    Args:
        m: F_p 上的矩阵

    Returns:
        RankKernel(rank, kernel)，rank + 核维数 = 列数
    """
    form = echelonize(m)
    return RankKernel(form.rank, form.kernel())


def rank(m: FpMatrix) -> int:
    return echelonize(m).rank


# ===== 多素数一致性 =====

def _rank_at(m_builder: Callable[[int], FpMatrix], p: int) -> Optional[int]:
    try:
        matrix = m_builder(p)
    except UnluckyPrime as e:
        logger.warning("素数 %d 不可用: %s", p, e)
        return None
    return rank(matrix)


def _values_at(fn: Callable[[int], Optional[int]], primes: Sequence[int],
               threads: int) -> Dict[int, Optional[int]]:
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(fn, primes))
    return dict(zip(primes, results))


def consensus(fn: Callable[[int], Optional[int]],
              primes: Sequence[int],
              threads: Optional[int] = None,
              label: str = '秩',
              prefer: Callable[[Iterable[int]], int] = max) -> int:
    """
    多素数一致的整数值（秩、维数）

    各素数的值一致时直接返回；不一致时记录诊断，换同样个数的新素数重试，
    新素数彼此一致且等于观察到的最可信值（秩取最大，核维数取最小）则采用之，否则抛出 ConsensusFailure。

    Args:
        fn: 素数 → 该素数下的值；返回 None 表示该素数不可用
        primes: 至少两个不同素数
        threads: 并行线程数
        label: 日志中的名称
        prefer: 不一致时的取舍，坏素数只会让秩变小、核变大

    Returns:
        一致的值
    """
    primes = list(dict.fromkeys(check_prime(p) for p in primes))
    if len(primes) < 2:
        raise ValueError("一致性检验至少需要两个不同素数")
    threads = get_thread_count(threads)

    values = _values_at(fn, primes, threads)
    distinct = set(values.values())
    if None not in distinct and len(distinct) == 1:
        return distinct.pop()

    logger.warning("素数间%s不一致: %s", label, values)
    used = list(primes)
    for attempt in range(EXACT_CONFIG['consensus_retries']):
        fresh = select_primes(seed=attempt, count=len(primes), exclude=used)
        used.extend(fresh)
        fresh_values = _values_at(fn, fresh, threads)
        values.update(fresh_values)

        observed = [v for v in values.values() if v is not None]
        best = prefer(observed) if observed else None
        if best is not None and set(fresh_values.values()) == {best}:
            logger.warning("采用%s %d（新素数 %s 一致）", label, best, fresh)
            return best

    raise ConsensusFailure(f"重试后{label}仍不一致: {values}", values)


def consensus_rank(m_builder: Callable[[int], FpMatrix],
                   primes: Sequence[int],
                   threads: Optional[int] = None) -> int:
    """
    多素数一致的秩

    Args:
        m_builder: 素数 → 该素数下的矩阵
        primes: 至少两个不同素数
        threads: 并行线程数
    """
    return consensus(lambda p: _rank_at(m_builder, p), primes, threads)


# ===== 有理数精确求解 =====

def _rational_rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    aug = [[Fraction(x) for x in row] for row in rows]
    cols = len(aug[0]) if aug else 0
    r = 0
    pivots = []
    for col in range(cols):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    return aug, pivots


def rational_rank(matrix: Sequence[Sequence]) -> int:
    """有理矩阵的精确秩（小矩阵用）"""
    return len(_rational_rref(matrix)[1])


def rational_solve(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """
    精确求解 matrix · x = rhs（有理数，Gauss-Jordan）

    Args:
        matrix: 行列表
        rhs: 右端

    Returns:
        唯一解；方程组无解时返回 None

    Raises:
        ValueError: 解不唯一
    """
    n = len(matrix[0]) if matrix else 0
    aug, pivots = _rational_rref([list(row) + [b] for row, b in zip(matrix, rhs)])

    if pivots and pivots[-1] == n:
        return None
    if len(pivots) < n:
        raise ValueError(f"解不唯一: 秩 {len(pivots)} < 未知数 {n}")
    return [aug[i][-1] for i in range(n)]
