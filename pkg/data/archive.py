"""
数据存档模块
Archive Module

二次型输入文件、见证点 JSONL、生成元存档与分次片导出的读写。
所有 JSON 按键排序写出、不含时间戳，同样的输入总是得到字节相同的文件。
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

from components.sampler import PARAM_LAYOUT, WitnessPoint, build_quadric, check_family
from grassmann.quadric import InvariantVector, QuadricCoeffs, ZeroQuadric
from ideals.graded import GeneratorSet, GradedPiece
from poly.mpoly import MPoly, VarSet

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

GENERATOR_SUFFIX = '.gens.json'
PIECE_SUFFIX = '.piece.json'
WITNESS_SUFFIX = '.witnesses.jsonl'


class ParseError(ValueError):
    """存档内容不合法"""


def _fraction(text, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"{where}: 无法解析分数 {text!r}") from e


def _fractions(values, length: int, where: str) -> List[Fraction]:
    if not isinstance(values, list) or len(values) != length:
        raise ParseError(f"{where}: 需要 {length} 个分数字符串")
    return [_fraction(x, f"{where}[{i}]") for i, x in enumerate(values)]


def _read_json(path: PathLike):
    text = Path(path).read_text(encoding='utf-8')
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: JSON 格式错误: {e}") from e


def write_json(path: PathLike, data) -> Path:
    """按键排序、两格缩进写出 JSON"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n', encoding='utf-8')
    return path


# ===== 二次型 =====

def parse_quadric(data: Dict) -> QuadricCoeffs:
    """
    解析二次型记录，原始 c 向量规范化为 c12 = 0

    Args:
        data: {"kind": "quadric", "c": [21 个分数字符串]} 或 {"kind": "invariant", "v": [20 个]}

    Raises:
        ParseError: 格式错误
        ZeroQuadric: 系数全为零
    """
    if not isinstance(data, dict):
        raise ParseError("二次型记录必须是 JSON 对象")
    kind = data.get('kind')
    if kind == 'quadric':
        c = QuadricCoeffs(tuple(_fractions(data.get('c'), 21, 'c')))
        if c.is_zero():
            raise ZeroQuadric("输入二次型的系数全为零")
        return c.canonical()
    if kind == 'invariant':
        v = InvariantVector(tuple(_fractions(data.get('v'), 20, 'v')))
        if v.is_zero():
            raise ZeroQuadric("输入不变量向量全为零")
        return v.to_quadric()
    raise ParseError(f"未知记录类型: {kind!r}，应为 'quadric' 或 'invariant'")


def quadric_to_dict(c: QuadricCoeffs) -> Dict:
    return {'kind': 'quadric', 'c': [str(x) for x in c.c]}


def load_quadric(path: PathLike) -> QuadricCoeffs:
    return parse_quadric(_read_json(path))


def save_quadric(path: PathLike, c: QuadricCoeffs) -> Path:
    return write_json(path, quadric_to_dict(c))


# ===== 见证点 =====

def witness_to_dict(w: WitnessPoint) -> Dict:
    return {
        'family': w.family,
        'seed': w.seed,
        'params': {name: list(values) for name, values in w.params.items()},
        'v': [str(x) for x in w.v.v],
    }


def witness_from_dict(data: Dict) -> WitnessPoint:
    """
    由记录重建见证点，并按参数重新构造核对不变量坐标

    Raises:
        ParseError: 字段缺失，或坐标与参数不一致
    """
    try:
        family = check_family(data['family'])
        seed = int(data['seed'])
        params = {name: tuple(int(x) for x in data['params'][name]) for name, _ in PARAM_LAYOUT[family]}
        v = InvariantVector(tuple(_fractions(data['v'], 20, 'v')))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"见证点记录不完整: {e}") from e
    if build_quadric(family, params).invariant() != v:
        raise ParseError(f"{family} 种子 {seed}: 坐标与参数不一致")
    return WitnessPoint(family, seed, params, v)


def save_witnesses(path: PathLike, witnesses: Iterable[WitnessPoint]) -> Path:
    """每行一个见证点"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(witness_to_dict(w), sort_keys=True) for w in witnesses]
    path.write_text(''.join(line + '\n' for line in lines), encoding='utf-8')
    return path


def load_witnesses(path: PathLike) -> List[WitnessPoint]:
    result = []
    for number, line in enumerate(Path(path).read_text(encoding='utf-8').splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}:{number}: JSON 格式错误: {e}") from e
        result.append(witness_from_dict(record))
    return result


# ===== 生成元存档 =====

def generators_to_dict(g: GeneratorSet) -> Dict:
    return {
        'label': g.label,
        'provenance': g.provenance,
        'variables': list(g.varset.names),
        'census': {str(d): n for d, n in g.census().items()},
        'zero_degree': g.zero_degree,
        'generators': [f.to_text() for f in g.polys],
    }


def generators_from_dict(data: Dict) -> GeneratorSet:
    try:
        varset = VarSet(data['variables'])
        polys = [MPoly.from_text(varset, text) for text in data['generators']]
        return GeneratorSet(data['label'], varset, polys, data.get('provenance', 'constructed'),
                            data.get('zero_degree'))
    except KeyError as e:
        raise ParseError(f"生成元存档缺少字段: {e}") from e
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"生成元存档内容不合法: {e}") from e


def save_generators(path: PathLike, g: GeneratorSet) -> Path:
    return write_json(path, generators_to_dict(g))


def load_generators(path: PathLike) -> GeneratorSet:
    return generators_from_dict(_read_json(path))


# ===== 分次片导出 =====

def save_piece(path: PathLike, piece: GradedPiece,
               rational: Optional[Sequence[Sequence[Fraction]]] = None) -> Path:
    return write_json(path, piece.to_dict(rational))


def load_piece(path: PathLike) -> GradedPiece:
    try:
        return GradedPiece.from_dict(_read_json(path))
    except KeyError as e:
        raise ParseError(f"分次片文件缺少字段: {e}") from e


class ArchiveStore:
    """
    输出目录下的存档

    文件名约定：<名称>.gens.json、<名称>.piece.json、<族>.witnesses.jsonl
    """

    def __init__(self, root: PathLike):
        self.root = Path(root)

    def generator_path(self, label: str) -> Path:
        return self.root / f"{label}{GENERATOR_SUFFIX}"

    def piece_path(self, label: str, degree: int) -> Path:
        return self.root / f"{label}_d{degree}{PIECE_SUFFIX}"

    def witness_path(self, family: str) -> Path:
        return self.root / f"{family}{WITNESS_SUFFIX}"

    def save_generators(self, g: GeneratorSet) -> Path:
        path = save_generators(self.generator_path(g.label), g)
        logger.info("生成元存档已写出: %s", path)
        return path

    def generator_sets(self) -> List[GeneratorSet]:
        """目录中全部生成元存档，按文件名排序"""
        if not self.root.is_dir():
            return []
        return [load_generators(path) for path in sorted(self.root.glob(f"*{GENERATOR_SUFFIX}"))]
