"""
精确标量
Exact Scalars

有理数使用 fractions.Fraction；素域元素 Fp 满足同一套运算约定（+ - * / 与布尔零判断），
多项式代码因此只写一遍，同时服务于精确和模素数两条计算路径。
"""

import numbers
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

Rat = Fraction


class UnluckyPrime(ValueError):
    """分母被素数整除：调用方应换一个素数重试"""

    def __init__(self, value: Fraction, p: int):
        super().__init__(f"分母 {value.denominator} 被素数 {p} 整除")
        self.value = value
        self.p = p


def to_fp(x, p: int) -> int:
    """
    有理数模约化

    Args:
        x: int / Fraction / Fp
        p: 素数

    Returns:
        [0, p) 内的整数

    Raises:
        UnluckyPrime: 分母被 p 整除
    """
    if isinstance(x, Fp):
        if x.p != p:
            raise ValueError(f"素域不一致: F_{x.p} 与 F_{p}")
        return x.value
    if isinstance(x, numbers.Integral):
        return int(x) % p
    x = Fraction(x)
    den = x.denominator % p
    if den == 0:
        raise UnluckyPrime(x, p)
    return x.numerator % p * pow(den, -1, p) % p


class Fp:
    """素域 F_p 中的元素，值固定在 [0, p)"""

    __slots__ = ('value', 'p')

    def __init__(self, value, p: int):
        self.p = p
        self.value = to_fp(value, p)

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"素域不一致: F_{self.p} 与 F_{other.p}")
            return other.value
        if isinstance(other, numbers.Rational):
            return to_fp(other, self.p)
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError(f"F_{self.p} 中除以零")
        return Fp(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Fp(v, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        return Fp(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.value == v

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


# ===== 中国剩余定理与有理重构 =====

def crt_pair(r1: int, m1: int, r2: int, m2: int) -> Tuple[int, int]:
    """合并 x ≡ r1 (mod m1), x ≡ r2 (mod m2)，返回 (x, m1*m2)，x 在 [0, m1*m2)"""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return (r1 + m1 * t) % (m1 * m2), m1 * m2


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """
    有理重构：寻找 n/d ≡ a (mod m)，|n|, d ≤ sqrt(m/2)

    Args:
        a: 剩余
        m: 模数

    Returns:
        重构出的有理数；不存在时返回 None
    """
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def reconstruct_vector(residues: Sequence[Sequence[int]], primes: Sequence[int]) -> List[Fraction]:
    """
    多素数下同一向量的剩余 → 有理向量

    Args:
        residues: 每个素数一组剩余，长度一致
        primes: 对应素数

    Returns:
        有理数列表

    Raises:
        ValueError: 任一分量无法重构（素数不够多）
    """
    result = []
    for column in zip(*residues):
        value, modulus = column[0], primes[0]
        for r, p in zip(column[1:], primes[1:]):
            value, modulus = crt_pair(value, modulus, int(r), p)
        frac = rational_reconstruct(value, modulus)
        if frac is None:
            raise ValueError(f"有理重构失败：模数 {modulus} 不足以确定分量")
        result.append(frac)
    return result
