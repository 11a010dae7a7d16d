import json
from fractions import Fraction

import pytest

from components import SQUARES, sample_batch
from data import (
    ArchiveStore, ParseError,
    generators_from_dict, generators_to_dict, load_generators, load_piece, load_quadric,
    load_witnesses, parse_quadric, save_generators, save_piece, save_quadric, save_witnesses,
    witness_from_dict, witness_to_dict,
)
from grassmann import QuadricCoeffs, ZeroQuadric
from ideals import GeneratorSet
from poly import MPoly, VarSet

V3 = VarSet(['x0', 'x1', 'x2'])
x0, x1, x2 = V3.gens()


def c_record(**entries):
    return {'kind': 'quadric', 'c': [entries.get(f'c{k}', '0') for k in range(21)]}


# ===== 二次型 =====

def test_parse_quadric_canonicalizes():
    c = parse_quadric(c_record(c12='1/2'))
    assert c.c[12] == 0
    assert c.c[5] == Fraction(-1, 2)
    assert c.c[9] == Fraction(1, 2)
    assert c == QuadricCoeffs(tuple(Fraction(1, 2) if k == 12 else 0 for k in range(21)))


def test_parse_invariant():
    v = ['0'] * 20
    v[0] = '3/4'
    c = parse_quadric({'kind': 'invariant', 'v': v})
    assert c.c[0] == Fraction(3, 4)
    assert len(c.c) == 21


@pytest.mark.parametrize('record', [
    {'kind': 'cubic', 'c': ['0'] * 21},
    {'kind': 'quadric', 'c': ['1'] * 20},
    {'kind': 'quadric', 'c': ['abc'] + ['0'] * 20},
    {'kind': 'quadric', 'c': ['1/0'] + ['0'] * 20},
    {'kind': 'invariant', 'v': '1'},
    ['quadric'],
])
def test_parse_quadric_rejects(record):
    with pytest.raises(ParseError):
        parse_quadric(record)


def test_parse_zero_quadric():
    with pytest.raises(ZeroQuadric):
        parse_quadric(c_record())
    with pytest.raises(ZeroQuadric):
        parse_quadric({'kind': 'invariant', 'v': ['0'] * 20})


def test_quadric_file_roundtrip(tmp_path):
    c = parse_quadric(c_record(c0='1', c5='-2/3', c20='7'))
    path = save_quadric(tmp_path / 'q.json', c)
    assert load_quadric(path).c == c.c
    first = path.read_bytes()
    save_quadric(path, c)
    assert path.read_bytes() == first


def test_load_quadric_bad_json(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{"kind": "quadric", ', encoding='utf-8')
    with pytest.raises(ParseError):
        load_quadric(path)


# ===== 见证点 =====

def test_witness_file_roundtrip(tmp_path):
    witnesses = sample_batch(SQUARES, 3)
    path = save_witnesses(tmp_path / 'w' / 'squares.witnesses.jsonl', witnesses)
    assert len(path.read_text(encoding='utf-8').splitlines()) == 3
    loaded = load_witnesses(path)
    assert [w.v for w in loaded] == [w.v for w in witnesses]
    assert [w.params for w in loaded] == [w.params for w in witnesses]


def test_witness_record_checked():
    record = witness_to_dict(sample_batch(SQUARES, 1)[0])
    assert witness_from_dict(record).v == sample_batch(SQUARES, 1)[0].v
    tampered = dict(record, v=['1/3'] + record['v'][1:])
    with pytest.raises(ParseError):
        witness_from_dict(tampered)
    with pytest.raises(ParseError):
        witness_from_dict({'family': SQUARES, 'seed': 1})
    with pytest.raises(ParseError):
        witness_from_dict(dict(record, family='planes'))


# ===== 生成元与分次片 =====

def test_generators_roundtrip(tmp_path):
    g = GeneratorSet('T', V3, [x0 * x1 - Fraction(1, 2) * x2 ** 2, V3.zero(), x2 ** 3], zero_degree=2)
    data = generators_to_dict(g)
    assert data['census'] == {'2': 2, '3': 1}
    assert data['generators'][0] == 'x0*x1 - 1/2*x2^2'
    restored = generators_from_dict(json.loads(json.dumps(data)))
    assert restored.polys == g.polys
    assert restored.census() == g.census()

    path = save_generators(tmp_path / 'T.gens.json', g)
    assert load_generators(path).polys == g.polys


def test_generators_rejects():
    with pytest.raises(ParseError):
        generators_from_dict({'label': 'T', 'generators': []})
    with pytest.raises(ParseError):
        generators_from_dict({'label': 'T', 'variables': ['x0'], 'generators': ['y^2']})


def test_piece_roundtrip(tmp_path, primes):
    g = GeneratorSet('T', V3, [x0 * x1 - Fraction(1, 2) * x2 ** 2])
    pieces = [g.piece(2, q) for q in primes]
    rational = pieces[0].rational_basis(*pieces[1:])
    path = save_piece(tmp_path / 'T_d2.piece.json', pieces[0], rational)
    assert load_piece(path) == pieces[0]
    data = json.loads(path.read_text(encoding='utf-8'))
    assert data['rational_basis'] == [['0', '1', '0', '0', '0', '-1/2']]
    assert data['order'] == 'grevlex'


def test_archive_store(tmp_path):
    store = ArchiveStore(tmp_path / 'out')
    assert store.generator_sets() == []
    assert store.piece_path('I', 3).name == 'I_d3.piece.json'
    assert store.witness_path(SQUARES).name == 'squares.witnesses.jsonl'
    store.save_generators(GeneratorSet('b', V3, [x0]))
    store.save_generators(GeneratorSet('a', V3, [x1 ** 2]))
    assert [g.label for g in store.generator_sets()] == ['a', 'b']
    assert store.generator_path('a').exists()
    assert MPoly.from_text(V3, 'x1^2') == store.generator_sets()[0].polys[0]
