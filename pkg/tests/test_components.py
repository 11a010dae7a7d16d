from fractions import Fraction

import pytest

from config import SAMPLING_CONFIG, get_expected
from components import (
    CHOW_CONIC, CHOW_LINES, FAMILIES, HURWITZ, SQUARES,
    DegenerateLimit, NotALine, RankNotOne, SamplingExhausted, SymMatrix4, ZeroForm,
    chow_conic, chow_line_pair, hurwitz_form, linear_form, meet_form, meet_pairing,
    plucker_action, sample, sample_batch, square_form, tangent_dimension, transform_quadric,
)
from components.sampler import build_quadric, parametrization
from grassmann import PLUCKER, PlueckerVector, QuadricCoeffs, coisotropic_ideal_generators, coisotropy_check
from ideals.evaluation import vanishes_mod

p01, p02, p03, p12, p13, p23 = PLUCKER.gens()

G = [[1, 2, 0, 0], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 2, 1]]


# ===== 构造 =====

def test_hurwitz_diagonal():
    c = hurwitz_form(SymMatrix4.diag([1, 2, 3, 4]))
    expected = {0: 2, 6: 3, 11: 4, 15: 6, 18: 8, 20: 12}
    assert c.c == tuple(Fraction(expected.get(k, 0)) for k in range(21))
    cert = coisotropy_check(c)
    assert cert.s == 0 and cert.t == 96


def test_hurwitz_functorial():
    m = SymMatrix4.from_upper([2, 1, 0, -1, 3, 0, 1, 1, 2, 5])
    left = hurwitz_form(m.congruence(G))
    right = transform_quadric(hurwitz_form(m), plucker_action(G))
    assert left.c == right.c


def test_sym_matrix_validation():
    with pytest.raises(ValueError):
        SymMatrix4(((1, 2, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    with pytest.raises(ValueError):
        SymMatrix4.from_upper([1, 2, 3])
    assert SymMatrix4.outer([1, 2, 0, 0]).rank() == 1
    assert SymMatrix4.diag([1, 2, 3, 4]).det() == 24


def test_meet_form():
    l01 = PlueckerVector.basis_line(0, 1)
    l23 = PlueckerVector.basis_line(2, 3)
    l02 = PlueckerVector.basis_line(0, 2)
    assert meet_form(l01) == p23
    assert meet_form(l23) == p01
    assert meet_pairing(l01, l02) == 0
    assert meet_pairing(l01, l23) == 1
    assert meet_form(l01).evaluate(l23.q) == meet_pairing(l01, l23)
    with pytest.raises(NotALine):
        meet_form(PlueckerVector((1, 0, 0, 0, 0, 1)))


def test_chow_line_pair():
    l01 = PlueckerVector.basis_line(0, 1)
    l23 = PlueckerVector.basis_line(2, 3)
    assert chow_line_pair(l01, l23) == QuadricCoeffs.from_poly(p01 * p23)
    a = PlueckerVector.from_frame([[1, 2, 0, 1], [0, 1, -1, 3]])
    b = PlueckerVector.from_frame([[2, 0, 1, 1], [1, 1, 0, -2]])
    assert chow_line_pair(a, b) == chow_line_pair(b, a)
    assert coisotropy_check(chow_line_pair(a, b)) is not None


def test_chow_conic():
    m0 = SymMatrix4.outer([1, 2, 0, -1])
    m1 = SymMatrix4.diag([1, -1, 2, 3])
    c = chow_conic(m0, m1)
    assert coisotropy_check(c) is not None
    # 平面内的二次曲线不依赖于 M1 加上 M0 的倍数
    assert chow_conic(m0, m1 + m0.scaled(5)).c == c.c
    assert chow_conic(m0.scaled(3), m1) == c.scaled(3)


def test_chow_conic_rejects():
    with pytest.raises(RankNotOne):
        chow_conic(SymMatrix4.diag([1, 1, 0, 0]), SymMatrix4.diag([1, 1, 1, 1]))
    with pytest.raises(DegenerateLimit):
        chow_conic(SymMatrix4.outer([1, 0, 0, 0]), SymMatrix4.diag([0, 0, 0, 0]))


def test_square_form():
    c = square_form(p01 + 2 * p23)
    assert c == QuadricCoeffs.from_poly((p01 + 2 * p23) ** 2)
    assert c.c[0] == 1 and c.c[20] == 4 and c.c[5] == 2
    assert coisotropy_check(c) is not None
    with pytest.raises(ZeroForm):
        square_form(linear_form([0] * 6))
    with pytest.raises(ValueError):
        square_form(p01 * p02)


# ===== 采样 =====

def test_sample_deterministic():
    for family in FAMILIES:
        first = sample(family, 5)
        second = sample(family, 5)
        assert first.v == second.v
        assert first.params == second.params
        assert not first.v.is_zero()
    assert sample(HURWITZ, 1).v != sample(HURWITZ, 2).v


def test_sample_matches_parametrization():
    for family in FAMILIES:
        w = sample(family, 3)
        assert build_quadric(family, w.params) == w.quadric
        assert QuadricCoeffs(tuple(parametrization(family, w.flat_params()))) == w.quadric


def test_sample_params_in_range():
    low, high = SAMPLING_CONFIG['param_low'], SAMPLING_CONFIG['param_high']
    for w in sample_batch(CHOW_LINES, 5):
        assert all(low <= x <= high for x in w.flat_params())
    assert [w.seed for w in sample_batch(SQUARES, 3, start_seed=7)] == [7, 8, 9]


def test_witnesses_are_coisotropic():
    for family in FAMILIES:
        for w in sample_batch(family, 4):
            assert coisotropy_check(w.quadric) is not None


def test_coisotropic_generators_vanish_on_witnesses(primes):
    generators = [f for f in coisotropic_ideal_generators() if f]
    for family in FAMILIES:
        for w in sample_batch(family, 2):
            assert all(vanishes_mod(generators, w.v.v, primes))


def test_sample_unknown_family():
    with pytest.raises(ValueError):
        sample('planes', 1)


def test_sampling_exhausted(monkeypatch):
    monkeypatch.setitem(SAMPLING_CONFIG, 'param_low', 0)
    monkeypatch.setitem(SAMPLING_CONFIG, 'param_high', 0)
    monkeypatch.setitem(SAMPLING_CONFIG, 'max_retries', 5)
    with pytest.raises(SamplingExhausted):
        sample(HURWITZ, 1)


# ===== 切空间维数 =====

@pytest.mark.parametrize('family', [HURWITZ, CHOW_LINES, CHOW_CONIC, SQUARES])
def test_tangent_dimension(family, primes):
    assert tangent_dimension(family, seed=1, primes=primes) == get_expected('cone_dimensions')[family]
