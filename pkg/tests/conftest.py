"""
测试公共配置：--runslow 开关、共享素数与独立的 sympy 朴素展开
"""

from itertools import combinations

import pytest
import sympy
from sympy.combinatorics import Permutation

from config import select_primes
from poly.mpoly import MPoly


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='运行验收规模的慢测试')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='需要 --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def primes():
    return select_primes(1)


@pytest.fixture(scope='session')
def p(primes):
    return primes[0]


def to_sympy(f: MPoly):
    """MPoly → sympy 表达式（经由规范文本）"""
    symbols = {name: sympy.Symbol(name) for name in f.varset.names}
    return sympy.sympify(f.to_text().replace('^', '**'), locals=symbols)


def naive_top_coefficient(names, u, beta, w):
    """
    u ∧ β ∧ w 的最高次系数，逐个排列求符号展开

    Args:
        names: 变量名
        u, w: 1-形式，sympy 系数列表
        beta: 2-形式，{(i, j): 系数}，i < j
    """
    total = sympy.Integer(0)
    n = len(names)
    for a in range(n):
        for (i, j), b in beta.items():
            for c in range(n):
                indices = [a, i, j, c]
                if len(set(indices)) < 4:
                    continue
                total += Permutation(indices).signature() * u[a] * b * w[c]
    return sympy.expand(total)


def naive_exterior_derivative(names, coeffs):
    """Σ f_i dx_i 的外微分，{(k, i): ∂_k f_i − ∂_i f_k}"""
    symbols = [sympy.Symbol(n) for n in names]
    return {(k, i): sympy.expand(sympy.diff(coeffs[i], symbols[k]) - sympy.diff(coeffs[k], symbols[i]))
            for k, i in combinations(range(len(names)), 2)}


@pytest.fixture(scope='session')
def sympy_oracle():
    """独立实现的朴素展开，供微分形式与括号的对照"""
    return {
        'to_sympy': to_sympy,
        'top': naive_top_coefficient,
        'd': naive_exterior_derivative,
    }
