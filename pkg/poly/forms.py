"""
图卡上的微分形式
Differential Forms on a Chart

k-形式保存为 {递增下标元组: MPoly 系数}，下标指向变量集中的微分 dx_i；
反对称性由"只存递增元组"隐式保证。
"""

from typing import Dict, Tuple

from poly.mpoly import MPoly, VarSet, VarSetMismatch

Basis = Tuple[int, ...]


class DegreeOverflow(ValueError):
    """形式次数超过变量个数"""


def _merge_sign(left: Basis, right: Basis) -> int:
    """dx_left ∧ dx_right 排成递增顺序时的符号（逆序对个数的奇偶）"""
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


class DiffForm:
    """
    微分 k-形式

    Attributes:
        varset: 图卡变量集，微分 dx_i 与变量一一对应
        degree: 形式次数 k
        terms: {递增下标元组: 非零系数多项式}
    """

    __slots__ = ('varset', 'degree', 'terms')

    def __init__(self, varset: VarSet, degree: int, terms: Dict[Basis, MPoly] = None):
        if not 0 <= degree <= len(varset):
            raise DegreeOverflow(f"{degree} 次形式超出 {len(varset)} 维图卡")
        clean = {}
        for basis, coeff in (terms or {}).items():
            basis = tuple(basis)
            if len(basis) != degree or list(basis) != sorted(set(basis)):
                raise ValueError(f"基 {basis} 必须是长度 {degree} 的严格递增下标")
            if coeff.varset != varset:
                raise VarSetMismatch(f"系数变量集 {coeff.varset} 与图卡 {varset} 不一致")
            if coeff:
                clean[basis] = coeff
        self.varset = varset
        self.degree = degree
        self.terms = clean

    @classmethod
    def zero(cls, varset: VarSet, degree: int) -> 'DiffForm':
        return cls(varset, degree)

    @classmethod
    def function(cls, f: MPoly) -> 'DiffForm':
        """0-形式"""
        return cls(f.varset, 0, {(): f})

    @classmethod
    def differential(cls, varset: VarSet, var) -> 'DiffForm':
        """坐标微分 dx_var"""
        return cls(varset, 1, {(varset.index(var),): varset.one()})

    @classmethod
    def one_form(cls, varset: VarSet, coefficients: Dict) -> 'DiffForm':
        """由 {变量: 系数} 构造 Σ f_i dx_i"""
        terms: Dict[Basis, MPoly] = {}
        for var, coeff in coefficients.items():
            key = (varset.index(var),)
            terms[key] = terms[key] + coeff if key in terms else coeff
        return cls(varset, 1, terms)

    def __bool__(self):
        return bool(self.terms)

    def _check_compatible(self, other: 'DiffForm'):
        if other.varset != self.varset:
            raise VarSetMismatch(f"图卡不一致: {self.varset} vs {other.varset}")
        if other.degree != self.degree:
            raise ValueError(f"次数不一致: {self.degree} vs {other.degree}")

    def __add__(self, other: 'DiffForm') -> 'DiffForm':
        self._check_compatible(other)
        terms = dict(self.terms)
        for basis, coeff in other.terms.items():
            terms[basis] = terms[basis] + coeff if basis in terms else coeff
        return DiffForm(self.varset, self.degree, terms)

    def __neg__(self) -> 'DiffForm':
        return DiffForm(self.varset, self.degree, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other: 'DiffForm') -> 'DiffForm':
        return self + (-other)

    def scale(self, f) -> 'DiffForm':
        """乘以函数（同图卡上的 MPoly）或系数"""
        return DiffForm(self.varset, self.degree, {b: c * f for b, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.varset == other.varset and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.varset, self.degree, frozenset(self.terms.items())))

    def top_coefficient(self) -> MPoly:
        """最高次形式 dx_0∧…∧dx_{n-1} 的系数"""
        n = len(self.varset)
        if self.degree != n:
            raise ValueError(f"{self.degree} 次形式不是 {n} 次最高形式")
        return self.terms.get(tuple(range(n)), self.varset.zero())

    def __repr__(self):
        names = self.varset.names
        parts = [f"({c})·" + '∧'.join(f"d{names[i]}" for i in b) for b, c in sorted(self.terms.items())]
        return f"DiffForm[{self.degree}](" + ' + '.join(parts or ['0']) + ")"


def wedge(u: DiffForm, v: DiffForm) -> DiffForm:
    """
    外积 u∧v

    Raises:
        DegreeOverflow: 次数之和超过图卡维数
    """
    if u.varset != v.varset:
        raise VarSetMismatch(f"图卡不一致: {u.varset} vs {v.varset}")
    degree = u.degree + v.degree
    if degree > len(u.varset):
        raise DegreeOverflow(f"{u.degree} + {v.degree} 次超出 {len(u.varset)} 维图卡")

    terms: Dict[Basis, MPoly] = {}
    for bu, cu in u.terms.items():
        for bv, cv in v.terms.items():
            if set(bu) & set(bv):
                continue
            basis = tuple(sorted(bu + bv))
            product = cu * cv
            if _merge_sign(bu, bv) < 0:
                product = -product
            terms[basis] = terms[basis] + product if basis in terms else product
    return DiffForm(u.varset, degree, terms)


def exterior_derivative(u: DiffForm) -> DiffForm:
    """
    外微分 d(f dx_I) = Σ_k ∂_k f dx_k ∧ dx_I

    Raises:
        DegreeOverflow: u 已是最高次形式
    """
    n = len(u.varset)
    if u.degree >= n:
        raise DegreeOverflow(f"{u.degree} 次形式的外微分超出 {n} 维图卡")

    terms: Dict[Basis, MPoly] = {}
    for basis, coeff in u.terms.items():
        for k in range(n):
            if k in basis:
                continue
            partial = coeff.differentiate(k)
            if not partial:
                continue
            if _merge_sign((k,), basis) < 0:
                partial = -partial
            key = tuple(sorted(basis + (k,)))
            terms[key] = terms[key] + partial if key in terms else partial
    return DiffForm(u.varset, u.degree + 1, terms)
