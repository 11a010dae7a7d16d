"""
稀疏多元多项式
Sparse Multivariate Polynomials

项以 {指数元组: 系数} 字典保存，不存零系数；规范项序为分次反字典序（grevlex）。
系数只需满足 + - * 与布尔零判断：Fraction、int、Fp 以及另一个变量集上的 MPoly 都可以，
后者用于"系数是 c 的多项式"的图卡多项式。
"""

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

EXPONENT_LIMIT = 2 ** 16

Monomial = Tuple[int, ...]


class VarSetMismatch(ValueError):
    """两个多项式的变量集不同"""


class UnknownVariable(ValueError):
    """变量不在变量集中"""


class MissingImage(ValueError):
    """代换缺少某个出现的变量的像"""


class NotDivisible(ValueError):
    """精确除法余式非零"""


class ExponentOverflow(ValueError):
    """乘积的某个指数达到 2^16"""


class VarSet:
    """有序、不可变的变量名集合"""

    __slots__ = ('names', '_index')

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"变量名重复: {names}")
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, '_index', {name: i for i, name in enumerate(names)})

    def __setattr__(self, key, value):
        raise AttributeError("VarSet 不可修改")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        if not isinstance(other, VarSet):
            return NotImplemented
        return self is other or self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __reduce__(self):
        return (VarSet, (self.names,))

    def __repr__(self):
        return f"VarSet({', '.join(self.names)})"

    def index(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise UnknownVariable(f"变量下标越界: {var}")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariable(f"未知变量 {var!r}，变量集: {self.names}") from None

    def var(self, name: Union[str, int]) -> 'MPoly':
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return MPoly._make(self, {tuple(exps): 1})

    def gens(self) -> List['MPoly']:
        return [self.var(i) for i in range(len(self.names))]

    def zero(self) -> 'MPoly':
        return MPoly._make(self, {})

    def one(self) -> 'MPoly':
        return MPoly.constant(self, 1)


# ===== 单项式序 =====

def grevlex_key(exps: Monomial):
    """分次反字典序的排序键：键越大单项式越大"""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_basis(n_vars: int, degree: int) -> List[Monomial]:
    """
    n_vars 个变量的全部 degree 次单项式，按 grevlex 降序

    数量为 C(n_vars + degree - 1, degree)：20 个变量时 2 次 210 个，3 次 1540 个
    """
    basis = []
    for combo in combinations_with_replacement(range(n_vars), degree):
        exps = [0] * n_vars
        for i in combo:
            exps[i] += 1
        basis.append(tuple(exps))
    basis.sort(key=grevlex_key, reverse=True)
    return basis


def _add_exps(a: Monomial, b: Monomial) -> Monomial:
    exps = tuple(x + y for x, y in zip(a, b))
    if max(exps, default=0) >= EXPONENT_LIMIT:
        raise ExponentOverflow(f"乘积指数越界 [0, 2^16): {exps}")
    return exps


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MPoly:
    """
    稀疏多元多项式（不可变）

    Attributes:
        varset: 变量集
        terms: {指数元组: 非零系数}
    """

    __slots__ = ('varset', 'terms')

    def __init__(self, varset: VarSet, terms: Optional[Mapping[Monomial, object]] = None):
        n = len(varset)
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"指数长度 {len(exps)} 与变量数 {n} 不符")
            if any(e < 0 or e >= EXPONENT_LIMIT for e in exps):
                raise ValueError(f"指数越界 [0, 2^16): {exps}")
            if coeff:
                clean[exps] = clean[exps] + coeff if exps in clean else coeff
        object.__setattr__(self, 'varset', varset)
        object.__setattr__(self, 'terms', {k: v for k, v in clean.items() if v})

    @classmethod
    def _make(cls, varset: VarSet, terms: Dict[Monomial, object]) -> 'MPoly':
        """内部快速构造：terms 已合法且无零系数"""
        obj = object.__new__(cls)
        object.__setattr__(obj, 'varset', varset)
        object.__setattr__(obj, 'terms', terms)
        return obj

    @classmethod
    def constant(cls, varset: VarSet, value) -> 'MPoly':
        if not value:
            return cls._make(varset, {})
        return cls._make(varset, {(0,) * len(varset): value})

    @classmethod
    def monomial(cls, varset: VarSet, exps: Monomial, coeff=1) -> 'MPoly':
        return cls(varset, {tuple(exps): coeff})

    def __setattr__(self, key, value):
        raise AttributeError("MPoly 不可修改")

    def __reduce__(self):
        return (_rebuild, (self.varset, self.terms))

    # ----- 基本属性 -----

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        """总次数；零多项式为 -1"""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.varset), 0)

    def coefficient(self, exps: Monomial):
        return self.terms.get(tuple(exps), 0)

    def ordered_terms(self) -> List[Tuple[Monomial, object]]:
        """按 grevlex 降序排列的项"""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, object]:
        if not self.terms:
            raise ValueError("零多项式没有首项")
        return max(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    # ----- 运算 -----

    def _check_same(self, other: 'MPoly'):
        if other.varset != self.varset:
            raise VarSetMismatch(f"变量集不一致: {self.varset} vs {other.varset}")

    def _lift(self, other) -> 'MPoly':
        if isinstance(other, MPoly):
            self._check_same(other)
            return other
        return MPoly.constant(self.varset, other)

    def __add__(self, other):
        other = self._lift(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        result = dict(big)
        for exps, coeff in small.items():
            if exps in result:
                value = result[exps] + coeff
                if value:
                    result[exps] = value
                else:
                    del result[exps]
            else:
                result[exps] = coeff
        return MPoly._make(self.varset, result)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make(self.varset, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, factor) -> 'MPoly':
        """乘以系数环中的元素（包括作为系数的另一个变量集上的多项式）"""
        if not factor:
            return MPoly._make(self.varset, {})
        result = {}
        for exps, coeff in self.terms.items():
            value = coeff * factor
            if value:
                result[exps] = value
        return MPoly._make(self.varset, result)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check_same(other)
        result: Dict[Monomial, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = _add_exps(e1, e2)
                value = c1 * c2
                if exps in result:
                    result[exps] = result[exps] + value
                else:
                    result[exps] = value
        return MPoly._make(self.varset, {e: c for e, c in result.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("多项式不支持负指数")
        result = MPoly.constant(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.varset == other.varset and self.terms == other.terms
        try:
            return self.terms == MPoly.constant(self.varset, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.varset, frozenset(self.terms.items())))

    # ----- 微分、代换、求值 -----

    def differentiate(self, var: Union[str, int]) -> 'MPoly':
        """
        形式偏导数

        Raises:
            UnknownVariable: 变量不在变量集中
        """
        i = self.varset.index(var)
        result = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e:
                lowered = exps[:i] + (e - 1,) + exps[i + 1:]
                result[lowered] = coeff * e
        return MPoly._make(self.varset, {k: v for k, v in result.items() if v})

    def substitute(self, images: Mapping[Union[str, int], 'MPoly'],
                   target: Optional[VarSet] = None) -> 'MPoly':
        """
        环同态：每个变量替换为目标变量集上的多项式

        Args:
            images: 变量 → 像多项式（名字或下标均可）
            target: 目标变量集；images 为空时必须给出

        Raises:
            MissingImage: 出现的变量没有像
        """
        by_index = {self.varset.index(k): v for k, v in images.items()}
        if target is None:
            if not by_index:
                raise MissingImage("没有像，无法确定目标变量集")
            target = next(iter(by_index.values())).varset
        for img in by_index.values():
            if img.varset != target:
                raise VarSetMismatch(f"像的变量集不一致: {img.varset} vs {target}")

        used = {i for exps in self.terms for i, e in enumerate(exps) if e}
        missing = sorted(used - set(by_index))
        if missing:
            names = [self.varset.names[i] for i in missing]
            raise MissingImage(f"缺少变量的像: {names}")

        powers: Dict[Tuple[int, int], MPoly] = {}

        def power(i: int, e: int) -> MPoly:
            key = (i, e)
            if key not in powers:
                powers[key] = by_index[i] if e == 1 else power(i, e - 1) * by_index[i]
            return powers[key]

        result = MPoly._make(target, {})
        for exps, coeff in self.ordered_terms():
            term = MPoly.constant(target, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, point: Union[Sequence, Mapping]):
        """
        在一点处求值

        Args:
            point: 按变量顺序的值序列，或 变量名 → 值 的映射

        Returns:
            系数环中的值（系数为多项式时返回多项式）
        """
        if isinstance(point, Mapping):
            values = [point[name] for name in self.varset.names]
        else:
            values = list(point)
            if len(values) != len(self.varset):
                raise ValueError(f"点的维数 {len(values)} 与变量数 {len(self.varset)} 不符")
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term = term * v ** e
            total = term + total
        return total

    def homogeneous_components(self) -> Dict[int, 'MPoly']:
        parts: Dict[int, Dict[Monomial, object]] = {}
        for exps, coeff in self.terms.items():
            parts.setdefault(sum(exps), {})[exps] = coeff
        return {d: MPoly._make(self.varset, t) for d, t in sorted(parts.items())}

    def map_coefficients(self, fn: Callable) -> 'MPoly':
        result = {}
        for exps, coeff in self.terms.items():
            value = fn(coeff)
            if value:
                result[exps] = value
        return MPoly._make(self.varset, result)

    # ----- 除法 -----

    def divmod_by(self, divisor: 'MPoly') -> Tuple['MPoly', 'MPoly']:
        """
        对单个除式做 grevlex 多元除法（系数须在域中）

        Returns:
            (商, 余式)，满足 self = 商·divisor + 余式，余式没有被 LM(divisor) 整除的项
        """
        self._check_same(divisor)
        if not divisor:
            raise ZeroDivisionError("除式为零")
        lm, lc = divisor.leading_term()
        quotient: Dict[Monomial, object] = {}
        remainder: Dict[Monomial, object] = {}
        p = self
        while p:
            exps, coeff = p.leading_term()
            if _divides(lm, exps):
                shift = tuple(a - b for a, b in zip(exps, lm))
                factor = Fraction(coeff, lc) if isinstance(coeff, int) and isinstance(lc, int) else coeff / lc
                quotient[shift] = factor
                p = p - divisor.mul_term(shift, factor)
            else:
                remainder[exps] = coeff
                p = MPoly._make(self.varset, {e: c for e, c in p.terms.items() if e != exps})
        return MPoly._make(self.varset, quotient), MPoly._make(self.varset, remainder)

    def mul_term(self, shift: Monomial, factor) -> 'MPoly':
        """乘以单项式 factor·x^shift"""
        result = {}
        for exps, coeff in self.terms.items():
            value = coeff * factor
            if value:
                result[_add_exps(exps, shift)] = value
        return MPoly._make(self.varset, result)

    def exact_divide(self, divisor: 'MPoly') -> 'MPoly':
        """
        精确除法

        Raises:
            NotDivisible: 余式非零
        """
        quotient, remainder = self.divmod_by(divisor)
        if remainder:
            raise NotDivisible(f"不能整除：余式有 {len(remainder)} 项")
        return quotient

    def divides(self, other: 'MPoly') -> bool:
        """self 是否整除 other"""
        return not other.divmod_by(self)[1]

    # ----- 文本序列化 -----

    def to_text(self) -> str:
        """规范文本：grevlex 降序，系数为精确分数字符串，幂写作 ^"""
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.ordered_terms():
            if isinstance(coeff, MPoly):
                raise TypeError("嵌套多项式系数不支持文本序列化")
            coeff = Fraction(int(coeff)) if not isinstance(coeff, (int, Fraction)) else Fraction(coeff)
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            factors = []
            for name, e in zip(self.varset.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(magnitude)] + factors)
            pieces.append((sign, body))

        first_sign, first_body = pieces[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    @classmethod
    def from_text(cls, varset: VarSet, text: str) -> 'MPoly':
        """
        解析 to_text 的输出（也接受多余空格和省略的系数 1）

        Raises:
            ValueError: 格式错误
            UnknownVariable: 变量不在变量集中
        """
        compact = text.replace(' ', '')
        if not compact:
            raise ValueError("空多项式文本")
        if compact[0] not in '+-':
            compact = '+' + compact
        chunks = re.findall(r'([+-])([^+-]+)', compact)
        if ''.join(s + b for s, b in chunks) != compact:
            raise ValueError(f"无法解析多项式文本: {text!r}")

        n = len(varset)
        terms: Dict[Monomial, Fraction] = {}
        for sign, body in chunks:
            coeff = Fraction(1)
            exps = [0] * n
            for factor in body.split('*'):
                if not factor:
                    raise ValueError(f"空因子: {text!r}")
                if re.fullmatch(r'\d+(/\d+)?', factor):
                    coeff *= Fraction(factor)
                    continue
                name, _, power = factor.partition('^')
                exps[varset.index(name)] += int(power) if power else 1
            if sign == '-':
                coeff = -coeff
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        return cls(varset, terms)

    def __repr__(self):
        try:
            return f"MPoly({self.to_text()})"
        except TypeError:
            return f"MPoly(<{len(self.terms)} 项, 多项式系数>)"

    __str__ = __repr__


def coefficient_vector(poly: MPoly, index: Mapping[Monomial, int]) -> List:
    """按单项式下标表展开成稠密系数列表"""
    vector = [0] * len(index)
    for exps, coeff in poly.terms.items():
        vector[index[exps]] = coeff
    return vector


def from_coefficient_vector(varset: VarSet, basis: Sequence[Monomial], vector: Sequence) -> MPoly:
    return MPoly(varset, {exps: c for exps, c in zip(basis, vector) if c})


def _rebuild(varset: VarSet, terms: Dict[Monomial, object]) -> MPoly:
    return MPoly._make(varset, terms)
