"""
验证报告
Verification Reports

每个验证套件产出一份报告：若干子检查（名称、计算值、期望值、是否通过）加上附带数据。
报告写成按键排序的 JSON，同时以表格形式打印到标准输出。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from config import OUTPUT_CONFIG
from data.archive import write_json


@dataclass
class SubCheck:
    """单项检查"""
    name: str
    computed: Any
    expected: Any
    passed: bool
    detail: str = ''


def jsonable(value):
    """把 Fraction、numpy 标量、元组与非字符串键转换成 JSON 友好的形式"""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
        return value.item()
    return value


@dataclass
class VerificationReport:
    """
    一个验证目标的结果

    Attributes:
        target: 目标名（prop1、counts 等）
        settings: 影响结果的运行参数（种子、素数）
        checks: 子检查
        extras: 附带数据（次数统计、片维数等）
    """

    target: str
    settings: Dict[str, Any] = field(default_factory=dict)
    checks: List[SubCheck] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, computed, expected=None, passed: Optional[bool] = None,
            detail: str = '') -> SubCheck:
        """记录一项检查；未给出 passed 时按 computed == expected 判定"""
        if passed is None:
            passed = computed == expected
        check = SubCheck(name, computed, expected, bool(passed), detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[SubCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict:
        return jsonable({
            'target': self.target,
            'settings': self.settings,
            'passed': self.passed,
            'checks': [
                {'name': c.name, 'computed': c.computed, 'expected': c.expected,
                 'passed': c.passed, 'detail': c.detail}
                for c in self.checks
            ],
            'extras': self.extras,
        })

    def to_frame(self) -> pd.DataFrame:
        rows = [{'检查项': c.name, '计算值': _cell(c.computed), '期望值': _cell(c.expected),
                 '结果': 'PASS' if c.passed else 'FAIL'} for c in self.checks]
        return pd.DataFrame(rows, columns=['检查项', '计算值', '期望值', '结果'])


def _cell(value) -> str:
    if value is None:
        return '-'
    if isinstance(value, (dict, list, tuple)):
        return str(jsonable(value))
    return str(value)


def print_report(report: VerificationReport, title: Optional[str] = None):
    """
    打印报告摘要

    Args:
        report: 验证报告
        title: 标题，默认用目标名
    """
    print("\n" + "=" * 100)
    print(title or f"验证目标: {report.target}")
    print("=" * 100)

    if report.settings:
        settings = ', '.join(f"{k}={jsonable(v)}" for k, v in sorted(report.settings.items()))
        print(f"\n运行参数: {settings}")

    if not report.checks:
        print("没有检查项")
        return

    print("\n子检查:")
    print("-" * 100)
    with pd.option_context('display.max_colwidth', 60, 'display.width', 100):
        print(report.to_frame().to_string(index=False))
    print("-" * 100)

    for check in report.checks:
        status = '[PASS]' if check.passed else '[FAIL]'
        line = f"{status} {check.name}"
        if check.detail:
            line += f"  ({check.detail})"
        print(line)

    print("=" * 100)
    print(f"结论: {'全部通过' if report.passed else f'{len(report.failures())} 项未通过'}")


def report_path(output_dir, target: str) -> Path:
    return Path(output_dir) / OUTPUT_CONFIG['report_pattern'].format(target=target)


def save_report(report: VerificationReport, output_dir) -> Path:
    """写出 JSON 报告与 CSV 检查表，返回 JSON 路径"""
    path = write_json(report_path(output_dir, report.target), report.to_dict())
    report.to_frame().to_csv(path.with_suffix('.csv'), index=False)
    return path
