"""
配置文件
Configuration Module

统一管理素数池、采样、插值和运行参数，以及验证套件的期望数值
"""

import os
from typing import Dict, List, Optional

from sympy import isprime


# ===== 精确计算配置 =====
EXACT_CONFIG = {
    # 预生成素数池：全部位于 (2^30, 2^31)，保证 int64 乘积和分肢浮点乘法精确
    'prime_pool': [
        2147483647, 2147483629, 2147483587, 2147483579,
        2147483563, 2147483549, 2147483543, 2147483497,
        2147483489, 2147483477, 2147483423, 2147483399,
        2147483353, 2147483323, 2147483269, 2147483249,
    ],
    'default_prime_count': 2,   # 默认两素数一致性
    'block_rows': 512,          # 分块消元每块行数
    'consensus_retries': 1,     # 素数不一致时换新素数重试的轮数
}


# ===== 采样配置 =====
SAMPLING_CONFIG = {
    'param_low': -50,           # 整数参数区间 [-50, 50]
    'param_high': 50,
    'max_retries': 100,         # 退化样本的最大重采次数
}


# ===== 插值配置 =====
INTERPOLATION_CONFIG = {
    'margin_ratio': 0.10,       # 见证点余量：单项式个数的10%
    'degree_cap': 4,            # 默认次数上限
    'max_degree': 5,            # --degree 5 可选（42504个单项式）
}


# ===== 运行配置 =====
RUN_CONFIG = {
    'seed': 1,
    'samples': None,            # None表示按单项式个数+余量自动决定
    'degree_cap': INTERPOLATION_CONFIG['degree_cap'],
    'primes': None,             # None表示从素数池按种子选取
    'threads': None,            # None表示读取环境变量 CHOW_THREADS
    'output_dir': 'outputs',
    'rational_reconstruct': False,
}

THREADS_ENV_VAR = 'CHOW_THREADS'


# ===== 期望数值 =====
EXPECTED_COUNTS = {
    'fig1_rows': 21,
    'coisotropic_generators': 1330,
    'beta3_coisotropic': 175,
    'catanese_generators': 210,
    'catanese_span': 20,
    'beta2_hurwitz': 20,
    'beta2_squares': 84,
    'beta2_chow_lines': 0,
    'beta3_chow_lines': 265,
    'beta2_chow_conic': 21,
    'beta3_chow_conic': 35,
    'beta2_chow_union': 0,
    'beta3_chow_union': 230,
    'colon_dim3': 175,
    'colon_beta4': 20,
    'census_per_chart': {3: 58, 4: 340, 5: 322},
    'census_total': 720,
    'beta3_integrability': 210,
    'beta4_integrability': 0,
    'beta5_integrability': 0,
    'cone_dimensions': {'hurwitz': 10, 'chow_lines': 9, 'chow_conic': 9, 'squares': 6},
    'prop2_witnesses': 200,
    'catanese_witnesses': 100,
    'membership_witnesses': 20,
}


# ===== 输出配置 =====
OUTPUT_CONFIG = {
    'output_dir': 'outputs',
    'figure_dpi': 150,
    'figure_size': (12, 6),
    'report_pattern': '{target}_report.json',
}


# ===== 便捷函数 =====

def get_prime_pool() -> List[int]:
    """获取预生成素数池"""
    return list(EXACT_CONFIG['prime_pool'])


def select_primes(seed: int = 0, count: Optional[int] = None,
                  exclude: Optional[List[int]] = None) -> List[int]:
    """
    按种子从素数池选取素数

    Args:
        seed: 种子，决定起始位置
        count: 素数个数，默认 EXACT_CONFIG['default_prime_count']
        exclude: 需要跳过的素数（重试时使用）

    Returns:
        互不相同的素数列表
    """
    count = count or EXACT_CONFIG['default_prime_count']
    pool = [p for p in get_prime_pool() if p not in set(exclude or [])]
    if count > len(pool):
        raise ValueError(f"素数池不足: 需要{count}个, 剩余{len(pool)}个")

    start = seed % len(pool)
    rotated = pool[start:] + pool[:start]
    return rotated[:count]


def check_primes(primes: List[int]) -> List[int]:
    """
    校验显式给出的素数列表

    Raises:
        ValueError: 个数少于2、有重复、不是素数或不在 (2^30, 2^31) 区间
    """
    primes = [int(p) for p in primes]
    if len(primes) < 2:
        raise ValueError(f"至少需要两个素数: {primes}")
    if len(set(primes)) != len(primes):
        raise ValueError(f"素数重复: {primes}")
    for p in primes:
        if not (2 ** 30 < p < 2 ** 31) or not isprime(p):
            raise ValueError(f"{p} 不是 (2^30, 2^31) 区间内的素数")
    return primes


def get_thread_count(threads: Optional[int] = None) -> int:
    """线程数：显式参数 > 环境变量 > 1"""
    if threads is not None:
        return max(1, int(threads))
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        return max(1, int(env_value))
    return 1


def get_run_config(**overrides) -> Dict:
    """
    获取运行配置

    Args:
        **overrides: 覆盖默认值的键值对，键必须已存在于 RUN_CONFIG

    Returns:
        运行配置字典（副本）
    """
    config = dict(RUN_CONFIG)
    for key, value in overrides.items():
        if key not in config:
            raise ValueError(f"未知配置项: {key}. 可用配置项: {list(config.keys())}")
        if value is not None:
            config[key] = value

    if not 1 <= config['degree_cap'] <= INTERPOLATION_CONFIG['max_degree']:
        raise ValueError(f"次数上限须在 [1, {INTERPOLATION_CONFIG['max_degree']}] 内: {config['degree_cap']}")
    config['threads'] = get_thread_count(config['threads'])
    if config['primes'] is None:
        config['primes'] = select_primes(config['seed'])
    else:
        config['primes'] = check_primes(config['primes'])
    return config


def get_expected(key: str):
    """获取验证套件的期望数值"""
    if key not in EXPECTED_COUNTS:
        raise ValueError(f"未知期望项: {key}. 可用期望项: {list(EXPECTED_COUNTS.keys())}")
    return EXPECTED_COUNTS[key]


def margin_for(monomial_count: int) -> int:
    """见证点余量：单项式个数的10%，向上取整"""
    ratio = INTERPOLATION_CONFIG['margin_ratio']
    return max(1, -(-monomial_count * round(ratio * 1000) // 1000))


# ===== 配置验证 =====

def validate_config() -> bool:
    """验证配置的完整性和一致性"""
    issues = []

    pool = get_prime_pool()
    if len(set(pool)) != len(pool):
        issues.append("prime_pool 存在重复素数")
    for p in pool:
        if not (2 ** 30 < p < 2 ** 31):
            issues.append(f"素数 {p} 不在 (2^30, 2^31) 区间")
        if not isprime(p):
            issues.append(f"{p} 不是素数")

    if SAMPLING_CONFIG['param_low'] >= SAMPLING_CONFIG['param_high']:
        issues.append("采样区间为空")

    if INTERPOLATION_CONFIG['degree_cap'] > INTERPOLATION_CONFIG['max_degree']:
        issues.append("degree_cap 超过 max_degree")

    if issues:
        print("配置验证失败:")
        for issue in issues:
            print(f"  - {issue}")
        return False
    else:
        print("配置验证通过")
        return True


if __name__ == '__main__':
    validate_config()

    print("\n" + "=" * 80)
    print("配置摘要")
    print("=" * 80)
    print(f"  素数池: {len(get_prime_pool())} 个, 默认选取: {select_primes()}")
    print(f"  采样区间: [{SAMPLING_CONFIG['param_low']}, {SAMPLING_CONFIG['param_high']}]")
    print(f"  插值余量: {INTERPOLATION_CONFIG['margin_ratio']:.0%}, 次数上限: {INTERPOLATION_CONFIG['degree_cap']}")
