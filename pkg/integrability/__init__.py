"""
图卡可积性与 Chow 形式判别模块
"""

from .charts import (
    CHART_VARS, CHARTS, STANDARD_CHART, Chart, QCoefficientSet, QLocal,
    alpha_forms, chart_divisibility, chart_substitute, chow_membership_test, q_coefficients,
)
from .jideal import ChartGenerators, JGenerators, chart_generators, j_generators, normal_form, pseudo_remainder
