"""
可视化工具
Visualization Toolkit

计算值与期望值的对比柱状图、生成元次数统计图
"""

import logging
from pathlib import Path
from typing import Dict, Optional

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from config import OUTPUT_CONFIG  # noqa: E402
from report.summary import VerificationReport  # noqa: E402

logger = logging.getLogger(__name__)

# 设置中文字体
plt.rcParams['font.sans-serif'] = ['SimHei', 'Microsoft YaHei', 'DejaVu Sans']
plt.rcParams['axes.unicode_minus'] = False


def _numeric(value) -> Optional[float]:
    if isinstance(value, bool) or value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        return None


def _save(fig, output_path: Optional[str]):
    if output_path:
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, dpi=OUTPUT_CONFIG['figure_dpi'], bbox_inches='tight')
        logger.info("图表已保存到: %s", path)


def plot_check_summary(report: VerificationReport, output_path: Optional[str] = None):
    """
    数值型子检查的计算值与期望值对比

    Args:
        report: 验证报告
        output_path: 输出路径，如None则不保存

    Returns:
        matplotlib.figure.Figure对象；没有数值型检查时返回 None
    """
    rows = [(c.name, _numeric(c.computed), _numeric(c.expected), c.passed) for c in report.checks]
    rows = [r for r in rows if r[1] is not None and r[2] is not None]
    if not rows:
        return None

    names, computed, expected, passed = zip(*rows)
    x = np.arange(len(names))
    width = 0.38

    fig, ax = plt.subplots(figsize=OUTPUT_CONFIG['figure_size'])
    ax.bar(x - width / 2, expected, width, color='gray', alpha=0.6, label='期望')
    ax.bar(x + width / 2, computed, width, alpha=0.8, label='计算',
           color=['green' if ok else 'red' for ok in passed])
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=45, ha='right', fontsize=8)
    ax.set_title(f"{report.target}: 计算值 vs 期望值")
    ax.grid(True, axis='y', alpha=0.3)
    ax.legend()

    for xi, value in zip(x, computed):
        ax.text(xi + width / 2, value, f'{value:g}', ha='center', va='bottom', fontsize=7)

    fig.tight_layout()
    _save(fig, output_path)
    return fig


def plot_census(per_chart: Dict[str, Dict[int, int]], output_path: Optional[str] = None):
    """
    各图卡生成元的次数分布

    Args:
        per_chart: 图卡标签 → {次数: 个数}
        output_path: 输出路径
    """
    if not per_chart:
        return None
    degrees = sorted({int(d) for hist in per_chart.values() for d in hist})
    labels = list(per_chart)
    x = np.arange(len(degrees))
    width = 0.8 / len(labels)

    fig, ax = plt.subplots(figsize=OUTPUT_CONFIG['figure_size'])
    for k, label in enumerate(labels):
        hist = {int(d): n for d, n in per_chart[label].items()}
        ax.bar(x + k * width, [hist.get(d, 0) for d in degrees], width, label=f'图卡 {label}')
    ax.set_xticks(x + width * (len(labels) - 1) / 2)
    ax.set_xticklabels([str(d) for d in degrees])
    ax.set_xlabel('c 次数')
    ax.set_ylabel('生成元个数')
    ax.set_title('可积性生成元次数统计')
    ax.grid(True, axis='y', alpha=0.3)
    ax.legend()

    fig.tight_layout()
    _save(fig, output_path)
    return fig


def close_all():
    plt.close('all')
