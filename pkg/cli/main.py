"""
命令行入口
Command-Line Front End

子命令：
    check INPUT           单个二次型的余迷向证书、余迷向矩阵秩、λ 归一化、图卡整除判据
    verify TARGET         运行一个验证套件，写出 JSON/CSV 报告与对比图
    sample                写出见证点存档
    gens KIND             写出生成元存档（coisotropic / catanese / j / component）
    interp LABEL          写出插值得到的分次片

退出码：0 通过，1 检查未通过，2 输入错误，3 多素数不一致或插值未稳定
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from config import INTERPOLATION_CONFIG, get_run_config
from components.sampler import FAMILIES, SamplingExhausted, check_family, sample_batch
from data.archive import ArchiveStore, ParseError, load_quadric, save_piece, save_witnesses, write_json
from exact.linalg import ConsensusFailure
from grassmann.quadric import (
    C_VARS, INVARIANT, NoUniqueLambda, NotCoisotropic, QuadricCoeffs,
    catanese_normalize, coisotropy_check, fig1_rank,
)
from ideals.catalog import (
    COMPONENT_FAMILIES, COMPONENT_GENERATOR_DEGREES,
    catanese_ideal, coisotropic_ideal, component_ideal, integrability_ideal,
)
from ideals.graded import DegreeTooSmall, GeneratorSet, PieceResult, consensus_piece, monomial_table
from ideals.interpolation import Unstabilized
from integrability.charts import chart_divisibility
from poly.mpoly import MPoly, from_coefficient_vector
from report.summary import jsonable, print_report, save_report
from report.visualizer import close_all, plot_census, plot_check_summary
from cli.verify import TARGETS, run_target

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CONSENSUS = 3

# 族名与分支理想标签的对应
FAMILY_LABELS = {
    'hurwitz': 'P_Hurwitz',
    'chow_lines': 'P_ChowLines',
    'chow_conic': 'P_ChowConic',
    'squares': 'P_Squares',
    'chow_union': 'P_ChowUnion',
}

GENERATOR_KINDS = ('coisotropic', 'catanese', 'j', 'component')


def component_label(name: str) -> str:
    """族名或 P_ 标签 → 分支理想标签"""
    label = FAMILY_LABELS.get(name, name)
    if label not in COMPONENT_FAMILIES:
        raise ValueError(f"未知分支: {name}. 可用: {list(FAMILY_LABELS)} 或 {list(COMPONENT_FAMILIES)}")
    return label


# ===== check =====

def _normalized_point(c: QuadricCoeffs) -> Optional[tuple]:
    """λ 归一化代表的 c 向量；不是余迷向二次型或 λ 不唯一时为 None"""
    try:
        return catanese_normalize(c).normalized.c
    except (NotCoisotropic, NoUniqueLambda):
        return None


def _evaluate_sets(c: QuadricCoeffs, generator_sets: Sequence[GeneratorSet]) -> Dict[str, Dict]:
    """
    存档的生成元集在该点处的精确取值

    不变量坐标的集在 v 处求值；c 变量的集（Catanese 子式）不是规范不变量，
    只在 λ 归一化代表处有意义，无法归一化时记为不适用
    """
    points = {INVARIANT.names: c.invariant().v}
    if any(g.varset.names == C_VARS.names for g in generator_sets):
        points[C_VARS.names] = _normalized_point(c)
    result = {}
    for g in generator_sets:
        if g.varset.names not in points:
            logger.warning("生成元集 %s 的变量不是 v 或 c，跳过", g.label)
            continue
        point = points[g.varset.names]
        if point is None:
            result[g.label] = {'count': len(g.polys), 'applicable': False}
            continue
        values = [f.evaluate(point) for f in g.polys]
        nonzero = sum(1 for value in values if value != 0)
        result[g.label] = {'count': len(values), 'applicable': True,
                           'nonzero': nonzero, 'all_vanish': nonzero == 0}
    return result


def check_quadric(c: QuadricCoeffs, generator_sets: Sequence[GeneratorSet] = ()) -> Dict:
    """
    单个二次型的检查报告

    Args:
        c: 二次型（已规范化）
        generator_sets: 需要在该点求值的生成元存档

    Returns:
        报告字典，分数以字符串表示

    Raises:
        PlueckerMultiple: 二次型是 Plücker 二次型的倍数
    """
    cert = coisotropy_check(c)
    report = {
        'quadric': [str(x) for x in c.c],
        'invariant': [str(x) for x in c.invariant().v],
        'coisotropic': cert is not None,
        'certificate': None if cert is None else {'s': cert.s, 't': cert.t},
        'fig1_rank': fig1_rank(c),
        'catanese': None,
        'chart_divisibility': None,
        'chow_membership': None,
    }
    if cert is None:
        report['catanese'] = {'refused': '不是余迷向二次型'}
    else:
        try:
            normalization = catanese_normalize(c)
            report['catanese'] = {'lambda': normalization.lam, 't': normalization.t}
        except NoUniqueLambda as e:
            report['catanese'] = {'refused': str(e)}
        try:
            verdicts = chart_divisibility(c)
            report['chart_divisibility'] = verdicts
            report['chow_membership'] = all(verdicts.values())
        except ValueError as e:
            report['chart_divisibility'] = {'refused': str(e)}

    report['generator_sets'] = _evaluate_sets(c, generator_sets)
    return jsonable(report)


def print_check(report: Dict):
    print("\n" + "=" * 100)
    print("二次型检查")
    print("=" * 100)
    print(f"\n不变量坐标: {report['invariant']}")
    if report['coisotropic']:
        cert = report['certificate']
        print(f"[PASS] 余迷向: Λ(Q) = ({cert['s']})·Q + ({cert['t']})·P")
    else:
        print("[FAIL] 不是余迷向二次型")
    print(f"余迷向矩阵的秩: {report['fig1_rank']}")

    catanese = report['catanese']
    if 'refused' in catanese:
        print(f"λ 归一化: 拒绝 ({catanese['refused']})")
    else:
        print(f"λ 归一化: λ = {catanese['lambda']}, t = {catanese['t']}")

    verdicts = report['chart_divisibility']
    if verdicts is not None:
        print("\n图卡整除判据:")
        print("-" * 100)
        for chart, ok in verdicts.items():
            print(f"  图卡 {chart}: {ok}")
        print(f"Chow 形式或平方: {report['chow_membership']}")

    if report['generator_sets']:
        print("\n存档生成元在该点处的取值:")
        print("-" * 100)
        for label, info in report['generator_sets'].items():
            if not info['applicable']:
                print(f"  [SKIP] {label}: 不是可归一化的余迷向二次型，不适用")
                continue
            status = '[PASS]' if info['all_vanish'] else '[FAIL]'
            print(f"  {status} {label}: {info['count']} 个生成元, {info['nonzero']} 个非零")
    print("=" * 100)


def cmd_check(path: str, cfg: Dict) -> int:
    c = load_quadric(path)
    store = ArchiveStore(cfg['output_dir'])
    report = check_quadric(c, store.generator_sets())
    print_check(report)
    out = write_json(store.root / 'check_report.json', report)
    logger.info("检查报告已写出: %s", out)
    return EXIT_PASS


# ===== verify =====

def _census_by_chart(census: Dict) -> Dict[str, Dict[int, int]]:
    return {entry['chart']: entry['degree_histogram'] for entry in census['per_chart']}


def cmd_verify(target: str, cfg: Dict) -> int:
    report = run_target(target, cfg)
    print_report(report)
    path = save_report(report, cfg['output_dir'])
    print(f"\n报告已写出: {path}")

    plot_check_summary(report, str(path.with_suffix('.png')))
    if 'census' in report.extras:
        plot_census(_census_by_chart(report.extras['census']),
                    str(path.with_name(f'{target}_census.png')))
    close_all()
    return EXIT_PASS if report.passed else EXIT_FAIL


# ===== sample / gens / interp =====

def cmd_sample(families: List[str], count: int, cfg: Dict) -> int:
    store = ArchiveStore(cfg['output_dir'])
    for family in families:
        witnesses = sample_batch(check_family(family), count, start_seed=cfg['seed'])
        path = save_witnesses(store.witness_path(family), witnesses)
        print(f"{family}: {len(witnesses)} 个见证点 → {path}")
    return EXIT_PASS


def _consensus_piece(source, degree: int, cfg: Dict) -> PieceResult:
    return consensus_piece(lambda p: source.piece(degree, p), cfg['primes'], cfg['threads'], prefer=min)


def interpolated_generators(label: str, cfg: Dict) -> GeneratorSet:
    """
    分支理想在各生成次数上的新生成元（有理重构）

    d 次片的行最简形基中，主元不在 R₁·(d-1 次片) 主元集合里的行恰好补足低次部分
    """
    source = component_ideal(label, cfg['seed'], cfg['samples'])
    polys: List[MPoly] = []
    for degree in COMPONENT_GENERATOR_DEGREES[label]:
        if degree > cfg['degree_cap']:
            logger.warning("%s 的 %d 次生成元超出次数上限 %d，未写出", label, degree, cfg['degree_cap'])
            continue
        result = _consensus_piece(source, degree, cfg)
        piece = result.piece
        lower = set(source.piece(degree - 1, piece.p).raise_degree().pivots)
        monomials = monomial_table(source.n_vars, degree).monomials
        for pivot, row in zip(piece.pivots, result.rational_basis()):
            if pivot not in lower:
                polys.append(from_coefficient_vector(INVARIANT, monomials, row))
    return GeneratorSet(label, INVARIANT, polys, provenance='interpolated')


def build_generators(kind: str, cfg: Dict, label: Optional[str] = None) -> GeneratorSet:
    if kind == 'coisotropic':
        return coisotropic_ideal()
    if kind == 'catanese':
        return catanese_ideal()
    if kind == 'j':
        return integrability_ideal(cfg['threads'])
    if kind == 'component':
        if label is None:
            raise ValueError("gens component 需要 --label")
        return interpolated_generators(component_label(label), cfg)
    raise ValueError(f"未知生成元类型: {kind}. 可用: {list(GENERATOR_KINDS)}")


def cmd_gens(kind: str, cfg: Dict, label: Optional[str] = None) -> int:
    g = build_generators(kind, cfg, label)
    path = ArchiveStore(cfg['output_dir']).save_generators(g)
    print(f"{g.label}: {len(g)} 个生成元, 次数统计 {g.census()} → {path}")
    return EXIT_PASS


def cmd_interp(name: str, cfg: Dict) -> int:
    label = component_label(name)
    degree = cfg['degree_cap']
    result = _consensus_piece(component_ideal(label, cfg['seed'], cfg['samples']), degree, cfg)
    rational = result.rational_basis() if cfg['rational_reconstruct'] else None
    path = save_piece(ArchiveStore(cfg['output_dir']).piece_path(label, degree), result.piece, rational)
    print(f"{label}: {degree} 次片维数 {result.dim} → {path}")
    return EXIT_PASS


# ===== 参数解析 =====

def _prime_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"素数列表格式错误: {text}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='随机种子（默认 1）')
    common.add_argument('--samples', type=int, help='每族见证点个数（默认按单项式个数加余量）')
    common.add_argument('--degree', type=int, dest='degree_cap',
                        help=f"次数上限（默认 {INTERPOLATION_CONFIG['degree_cap']}，"
                             f"最大 {INTERPOLATION_CONFIG['max_degree']}）")
    common.add_argument('--primes', type=_prime_list, help='逗号分隔的素数，每个在 (2^30, 2^31) 内')
    common.add_argument('--threads', type=int, help='线程数（默认读取 CHOW_THREADS）')
    common.add_argument('--out', dest='output_dir', help='输出目录（默认 outputs）')
    common.add_argument('--rational-reconstruct', action='store_true', default=None,
                        help='对导出的分次片做有理重构')
    common.add_argument('-v', '--verbose', action='store_true', help='输出调试日志')

    parser = argparse.ArgumentParser(prog='chow', description='G(2,4) 上余迷向二次型与 Chow 簇的计算与验证')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('check', parents=[common], help='检查单个二次型')
    p.add_argument('input', help='二次型 JSON 文件')

    p = sub.add_parser('verify', parents=[common], help='运行验证套件')
    p.add_argument('target', choices=list(TARGETS))

    p = sub.add_parser('sample', parents=[common], help='写出见证点存档')
    p.add_argument('--family', choices=list(FAMILIES), help='只采样一个族（默认全部）')
    p.add_argument('--count', type=int, default=10, help='每族见证点个数')

    p = sub.add_parser('gens', parents=[common], help='写出生成元存档')
    p.add_argument('kind', choices=list(GENERATOR_KINDS))
    p.add_argument('--label', help='component 时的分支（族名或 P_ 标签）')

    p = sub.add_parser('interp', parents=[common], help='写出插值分次片')
    p.add_argument('label', help='族名（hurwitz 等）、chow_union 或 P_ 标签')
    return parser


def run(args: argparse.Namespace) -> int:
    cfg = get_run_config(
        seed=args.seed, samples=args.samples, degree_cap=args.degree_cap, primes=args.primes,
        threads=args.threads, output_dir=args.output_dir, rational_reconstruct=args.rational_reconstruct,
    )
    logger.info("运行配置: %s", cfg)

    if args.command == 'check':
        return cmd_check(args.input, cfg)
    if args.command == 'verify':
        return cmd_verify(args.target, cfg)
    if args.command == 'sample':
        return cmd_sample([args.family] if args.family else list(FAMILIES), args.count, cfg)
    if args.command == 'gens':
        return cmd_gens(args.kind, cfg, args.label)
    return cmd_interp(args.label, cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        return run(args)
    except (ConsensusFailure, Unstabilized) as e:
        print(f"[ERROR] 多素数结果不一致: {e}", file=sys.stderr)
        return EXIT_CONSENSUS
    except SamplingExhausted as e:
        print(f"[ERROR] 采样失败: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, DegreeTooSmall) as e:
        print(f"[ERROR] 输入错误: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
