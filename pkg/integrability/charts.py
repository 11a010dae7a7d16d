"""
仿射图卡上的可积性条件
Chart-Local Integrability

图卡由 2×4 标架的两个主元列确定：标架两行为 e_i + a2·e_k + a3·e_l 与 e_j + b2·e_k + b3·e_l，
Plücker 坐标取各 2×2 子式。在图卡上构造四个 1-形式 α，并取
dQ ∧ dα^i_j ∧ α^k_l 的最高次系数 q_ijkl；Chow 形式的判据是 16 个 q_ijkl 都被 Q 整除。
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

from grassmann.quadric import C_VARS, QuadricCoeffs, coisotropy_check, quadric_poly, NotCoisotropic
from poly.forms import DiffForm, exterior_derivative, wedge
from poly.mpoly import MPoly, VarSet

logger = logging.getLogger(__name__)

CHART_VARS = VarSet(('a2', 'a3', 'b2', 'b3'))

# (i, j, k, l)，i, j, k, l ∈ {1, 2}，字典序
Q_INDICES = tuple(product((1, 2), repeat=4))


@dataclass(frozen=True)
class Chart:
    """主元列为 pivots 的仿射图卡"""

    pivots: Tuple[int, int]

    def __post_init__(self):
        i, j = self.pivots
        if not (0 <= i < j <= 3):
            raise ValueError(f"主元列必须是 0..3 中两个递增下标: {self.pivots}")

    @property
    def free(self) -> Tuple[int, int]:
        return tuple(c for c in range(4) if c not in self.pivots)

    @property
    def label(self) -> str:
        return f"{self.pivots[0]}{self.pivots[1]}"

    def frame(self) -> List[List[MPoly]]:
        i, j = self.pivots
        k, l = self.free
        a2, a3, b2, b3 = CHART_VARS.gens()
        one, zero = CHART_VARS.one(), CHART_VARS.zero()
        row0 = [zero] * 4
        row1 = [zero] * 4
        row0[i], row0[k], row0[l] = one, a2, a3
        row1[j], row1[k], row1[l] = one, b2, b3
        return [row0, row1]

    def images(self) -> Dict[int, MPoly]:
        """Plücker 变量 → 标架的 2×2 子式"""
        r0, r1 = self.frame()
        pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        return {n: r0[x] * r1[y] - r0[y] * r1[x] for n, (x, y) in enumerate(pairs)}


STANDARD_CHART = Chart((0, 1))
CHARTS = tuple(Chart(p) for p in combinations(range(4), 2))


@dataclass(frozen=True)
class QLocal:
    """二次型在图卡上的像"""
    chart: Chart
    poly: MPoly


@dataclass(frozen=True)
class QCoefficientSet:
    """16 个 q_ijkl，键为 (i, j, k, l)"""
    chart: Chart
    q: Dict[Tuple[int, int, int, int], MPoly]

    def ordered(self) -> List[MPoly]:
        return [self.q[idx] for idx in Q_INDICES]


def chart_substitute(c: Optional[QuadricCoeffs], chart: Chart = STANDARD_CHART) -> QLocal:
    """
    把 Q 代入图卡

    Args:
        c: 数值系数；为 None 时得到系数为 c 变量多项式的符号像
        chart: 图卡
    """
    coeffs = C_VARS.gens() if c is None else list(c.c)
    q = quadric_poly(coeffs)
    return QLocal(chart, q.substitute(chart.images(), CHART_VARS))


def alpha_forms(ql: QLocal) -> Tuple[DiffForm, DiffForm, DiffForm, DiffForm]:
    """
    (α¹₁, α¹₂, α²₁, α²₂)：
    α¹₁ = Q_a2 da2 + Q_a3 da3，α¹₂ = Q_a2 db2 + Q_a3 db3，
    α²₁ = Q_b2 da2 + Q_b3 da3，α²₂ = Q_b2 db2 + Q_b3 db3
    """
    q = ql.poly
    qa2, qa3, qb2, qb3 = (q.differentiate(v) for v in CHART_VARS.names)
    return (
        DiffForm.one_form(CHART_VARS, {'a2': qa2, 'a3': qa3}),
        DiffForm.one_form(CHART_VARS, {'b2': qa2, 'b3': qa3}),
        DiffForm.one_form(CHART_VARS, {'a2': qb2, 'a3': qb3}),
        DiffForm.one_form(CHART_VARS, {'b2': qb2, 'b3': qb3}),
    )


def q_coefficients(ql: QLocal) -> QCoefficientSet:
    """q_ijkl = dQ ∧ dα^i_j ∧ α^k_l 的最高次系数"""
    alphas = dict(zip(((1, 1), (1, 2), (2, 1), (2, 2)), alpha_forms(ql)))
    dq = exterior_derivative(DiffForm.function(ql.poly))
    result = {}
    for (i, j), alpha in alphas.items():
        three = wedge(dq, exterior_derivative(alpha))
        for (k, l), other in alphas.items():
            result[(i, j, k, l)] = wedge(three, other).top_coefficient()
    return QCoefficientSet(ql.chart, {idx: result[idx] for idx in Q_INDICES})


def chart_divisibility(c: QuadricCoeffs) -> Dict[str, bool]:
    """每个图卡上 16 个 q_ijkl 是否都被 Q 的像精确整除"""
    verdicts = {}
    for chart in CHARTS:
        ql = chart_substitute(c, chart)
        if not ql.poly:
            raise ValueError(f"Q 在图卡 {chart.label} 上恒为零")
        coeffs = q_coefficients(ql)
        verdicts[chart.label] = all(ql.poly.divides(q) for q in coeffs.ordered())
    return verdicts


def chow_membership_test(c: QuadricCoeffs) -> bool:
    """
    余迷向二次型是 Chow 形式（或平方）当且仅当在每个图卡上 16 个 q_ijkl 都被 Q 整除

    Raises:
        NotCoisotropic: 二次型不是余迷向的
    """
    if coisotropy_check(c) is None:
        raise NotCoisotropic("整除判据只适用于余迷向二次型")
    verdicts = chart_divisibility(c)
    logger.debug("图卡整除结果: %s", verdicts)
    return all(verdicts.values())
