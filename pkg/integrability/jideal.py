"""
可积性理想 J
Integrability Ideal

对每个图卡，把符号 q_ijkl 模主理想 ⟨Q⟩ 做伪除法：按图卡变量的 grevlex 序，每一步先把余下部分乘以
LC（Q 首项的 c 系数）再消去首项，得到 LC^K·f = h·Q + R。R 的各图卡单项式系数就是 J 的生成元，
同一个 f 给出的生成元 c 次数都是 3 + K。生成元改写到不变量坐标后汇总成次数统计。

另给出约去 LC 因子的约化统计：分式域上除法的余式系数 n / LC^k 中的 n 约去 LC 后的次数分布。
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from config import get_thread_count
from grassmann.generators import to_invariant
from poly.mpoly import MPoly, NotDivisible, grevlex_key
from integrability.charts import CHARTS, Chart, QLocal, chart_substitute, q_coefficients

logger = logging.getLogger(__name__)


def _histogram(polys: Sequence[MPoly]) -> Dict[int, int]:
    histogram: Dict[int, int] = {}
    for g in polys:
        histogram[g.degree] = histogram.get(g.degree, 0) + 1
    return dict(sorted(histogram.items()))


@dataclass
class ChartGenerators:
    """单个图卡上的约化结果"""

    chart: Chart
    generators: List[MPoly] = field(default_factory=list)   # 伪余式系数，不变量坐标，含重复
    reduced: List[MPoly] = field(default_factory=list)      # 约去 LC 因子后的分子

    def census(self) -> Dict[int, int]:
        return _histogram(self.generators)

    def reduced_census(self) -> Dict[int, int]:
        return _histogram(self.reduced)


@dataclass
class JGenerators:
    """J 的全部生成元与次数统计"""

    charts: List[ChartGenerators]

    def all_generators(self) -> List[MPoly]:
        return [g for cg in self.charts for g in cg.generators]

    def distinct(self) -> List[MPoly]:
        """按差一个非零常数去重，保持首次出现的顺序"""
        seen = set()
        result = []
        for g in self.all_generators():
            if not g:
                continue
            key = monic(g)
            if key not in seen:
                seen.add(key)
                result.append(g)
        return result

    def census(self) -> Dict:
        """
        伪除法统计（per_chart / total / distinct），以及约去 LC 后的每图卡统计（reduced_per_chart）
        """
        total: Dict[int, int] = {}
        for cg in self.charts:
            for d, n in cg.census().items():
                total[d] = total.get(d, 0) + n
        return {
            'per_chart': [{'chart': cg.chart.label, 'degree_histogram': cg.census(),
                           'count': len(cg.generators)} for cg in self.charts],
            'total': dict(sorted(total.items())),
            'distinct': _histogram(self.distinct()),
            'reduced_per_chart': [{'chart': cg.chart.label, 'degree_histogram': cg.reduced_census(),
                                   'count': len(cg.reduced)} for cg in self.charts],
        }


def monic(g: MPoly) -> MPoly:
    _, lc = g.leading_term()
    return g.scale(Fraction(1) / lc)


def leading_data(ql: QLocal) -> Tuple[Tuple[int, ...], object]:
    """图卡像的首项单项式与其 c 系数"""
    exps, lc = ql.poly.leading_term()
    return exps, lc


def _reduce(f: MPoly, ql: QLocal) -> Tuple[Dict[Tuple[int, ...], Tuple[object, int]], int]:
    """
    伪除法主循环

    Returns:
        ({图卡单项式: (移出时的系数, 移出前的步数 k)}, 总步数 K)
    """
    lm, lc = leading_data(ql)
    q = ql.poly
    removed: Dict[Tuple[int, ...], Tuple[object, int]] = {}
    p, k = f, 0
    while p:
        exps, coeff = p.leading_term()
        if all(a <= b for a, b in zip(lm, exps)):
            shift = tuple(b - a for a, b in zip(lm, exps))
            p = p.scale(lc) - q.mul_term(shift, coeff)
            k += 1
        else:
            removed[exps] = (coeff, k)
            p = MPoly._make(p.varset, {e: c for e, c in p.terms.items() if e != exps})
    return removed, k


def pseudo_remainder(f: MPoly, ql: QLocal) -> Tuple[Dict[Tuple[int, ...], object], int]:
    """
    f 模 ⟨Q⟩ 的伪余式：LC^K·f = h·Q + R

    k 步时移出的项此后不再参与乘 LC，因此它在 R 中的系数要补乘 LC^(K−k)

    Returns:
        ({图卡单项式: R 中的系数}, K)
    """
    _, lc = leading_data(ql)
    removed, steps = _reduce(f, ql)
    return {exps: coeff * lc ** (steps - k) for exps, (coeff, k) in removed.items()}, steps


def _cancel_leading(numerator: MPoly, lc: MPoly, k: int) -> Tuple[MPoly, int]:
    """反复约去 LC 因子"""
    while k > 0:
        try:
            numerator = numerator.exact_divide(lc)
        except NotDivisible:
            break
        k -= 1
    return numerator, k


def normal_form(f: MPoly, ql: QLocal) -> Dict[Tuple[int, ...], Tuple[MPoly, int]]:
    """
    f 模 ⟨Q⟩ 在 c 的分式域上的正规形（图卡变量 grevlex 序）

    Args:
        f: 图卡多项式，系数为 c 的多项式
        ql: 符号图卡像

    Returns:
        {图卡单项式: (分子 n, k)}，该项系数为 n / LC^k，已约去公因子 LC
    """
    _, lc = leading_data(ql)
    removed, _ = _reduce(f, ql)
    return {exps: _cancel_leading(coeff, lc, k) for exps, (coeff, k) in removed.items()}


def chart_generators(chart: Chart) -> ChartGenerators:
    """单个图卡：符号 q_ijkl 的伪余式系数与约化分子，改写到不变量坐标"""
    ql = chart_substitute(None, chart)
    coeffs = q_coefficients(ql)
    generators, reduced = [], []
    for f in coeffs.ordered():
        remainder, _ = pseudo_remainder(f, ql)
        for exps in sorted(remainder, key=grevlex_key, reverse=True):
            generators.append(to_invariant(remainder[exps]))
        cancelled = normal_form(f, ql)
        for exps in sorted(cancelled, key=grevlex_key, reverse=True):
            reduced.append(to_invariant(cancelled[exps][0]))
    logger.info("图卡 %s: %d 个生成元（约化后次数 %s）", chart.label, len(generators), _histogram(reduced))
    return ChartGenerators(chart, generators, reduced)


def j_generators(charts: Sequence[Chart] = CHARTS, threads: Optional[int] = None) -> JGenerators:
    """
    J 的生成元：每个图卡上 16 个 q_ijkl 正规形的全部系数

    图卡之间互相独立，threads > 1 时按进程并行；结果按图卡顺序组装
    """
    threads = get_thread_count(threads)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(charts))) as pool:
            results = list(pool.map(chart_generators, charts))
    else:
        results = [chart_generators(chart) for chart in charts]
    return JGenerators(results)
