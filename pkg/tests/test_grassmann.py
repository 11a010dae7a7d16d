from fractions import Fraction

import pytest
import sympy

from config import get_expected, select_primes
from grassmann import (
    C_VARS, PLUCKER, PLUCKER_RELATION, CoisotropyCertificate, NoUniqueLambda, NotCoisotropic,
    NotQuadratic, PlueckerMultiple, PlueckerVector, QuadricCoeffs, ZeroQuadric,
    bracket, catanese_generators, catanese_normalize,
    coisotropy_check, fig1_matrix, fig1_rank, gauge_transform, is_gauge_invariant,
)
from grassmann.generators import det3, embed_in_lambda
from grassmann.reference import fig1_mismatches
from ideals.catalog import catanese_ideal, coisotropic_ideal
from ideals.graded import minimal_generator_count
from poly import MPoly

p01, p02, p03, p12, p13, p23 = PLUCKER.gens()
SUM_OF_SQUARES = sum((v ** 2 for v in PLUCKER.gens()), PLUCKER.zero())


def coeffs(q: MPoly) -> QuadricCoeffs:
    return QuadricCoeffs.from_poly(q)


# ===== 括号 =====

def test_bracket_examples():
    assert bracket(p01 * p23) == p01 * p23
    assert bracket(SUM_OF_SQUARES) == 4 * PLUCKER_RELATION
    assert bracket(PLUCKER_RELATION) == PLUCKER_RELATION
    assert bracket(p01 ** 2) == PLUCKER.zero()


def test_bracket_rejects():
    with pytest.raises(NotQuadratic):
        bracket(p01)
    with pytest.raises(NotQuadratic):
        bracket(p01 ** 2 + p02)
    with pytest.raises(NotQuadratic):
        bracket(C_VARS.var(0) ** 2)


def test_bracket_against_sympy(sympy_oracle):
    q = 3 * p01 ** 2 - p02 * p13 + Fraction(1, 2) * p03 * p23 + 5 * p12 * p13 - p23 ** 2
    s = {n: sympy.Symbol(n) for n in PLUCKER.names}
    q_sym = sympy_oracle['to_sympy'](q)
    expected = (sympy.diff(q_sym, s['p01']) * sympy.diff(q_sym, s['p23'])
                - sympy.diff(q_sym, s['p02']) * sympy.diff(q_sym, s['p13'])
                + sympy.diff(q_sym, s['p03']) * sympy.diff(q_sym, s['p12']))
    assert sympy.expand(sympy_oracle['to_sympy'](bracket(q)) - expected) == 0


# ===== 余迷向检验 =====

@pytest.mark.parametrize('q, certificate', [
    (p01 * p23, (1, 0)),
    (p01 ** 2, (0, 0)),
    (p01 ** 2 + p02 * p13, None),
    (SUM_OF_SQUARES, (0, 4)),
])
def test_coisotropy_check(q, certificate):
    result = coisotropy_check(coeffs(q))
    if certificate is None:
        assert result is None
    else:
        assert result == CoisotropyCertificate(Fraction(certificate[0]), Fraction(certificate[1]))


def test_coisotropy_rejects_degenerate():
    with pytest.raises(ZeroQuadric):
        coisotropy_check(QuadricCoeffs((0,) * 21))
    with pytest.raises(PlueckerMultiple):
        coisotropy_check(coeffs(PLUCKER_RELATION))
    with pytest.raises(PlueckerMultiple):
        coisotropy_check(coeffs(PLUCKER_RELATION * Fraction(-3, 2)))


def test_gauge_equality():
    c = coeffs(p01 * p23 + p02 ** 2)
    shifted = c.plus_plucker(Fraction(7, 3))
    assert shifted == c
    assert shifted.c != c.c
    assert shifted.canonical().c[12] == 0
    assert len(c.invariant().v) == 20


# ===== 余迷向矩阵 =====

def test_fig1_matches_reference():
    assert fig1_mismatches(fig1_matrix()) == []


def test_fig1_symbolic_entries():
    matrix = fig1_matrix()
    assert len(matrix) == 21
    assert matrix[9][0] == MPoly.constant(C_VARS, -1)
    assert matrix[5][0] == C_VARS.one()
    assert matrix[0][0] == C_VARS.zero()
    assert matrix[3][1] == C_VARS.var('c3')


@pytest.mark.parametrize('q, rank', [
    (p01 * p23, 2),
    (SUM_OF_SQUARES, 2),
    (p01 ** 2 + p02 * p13, 3),
])
def test_fig1_rank(q, rank):
    assert fig1_rank(coeffs(q)) == rank


def test_fig1_kernel_vector():
    for q in (p01 * p23, SUM_OF_SQUARES, (p01 + 2 * p13) * (p02 - p23)):
        c = coeffs(q)
        cert = coisotropy_check(c)
        assert cert is not None
        vector = (cert.t / 4, cert.s / 2, Fraction(-1))
        for row in fig1_matrix(c):
            assert sum(a * b for a, b in zip(row, vector)) == 0


def test_fig1_rank_consistent_with_check():
    # c 与第一列线性无关，所以秩 ≤ 2 即 Λ(Q) ∈ span{Q, P}
    samples = [
        p01 * p23 + p02 * p13, p01 ** 2 - 3 * p12 * p03, (p01 + p02 + p23) ** 2,
        p01 * p02 + p13 * p23 - p03 ** 2, 2 * p12 ** 2 + p01 * p23,
    ]
    for q in samples:
        c = coeffs(q)
        assert (fig1_rank(c) <= 2) == (coisotropy_check(c) is not None)


# ===== 生成元 =====

def test_gauge_invariance_by_substitution():
    matrix = fig1_matrix()
    for rows in [(0, 5, 9), (5, 9, 12), (1, 12, 20), (3, 7, 11)]:
        minor = det3([matrix[r] for r in rows])
        assert is_gauge_invariant(minor)
        assert gauge_transform(minor) == embed_in_lambda(minor)


def test_non_invariant_detected():
    c5 = C_VARS.var('c5')
    assert not is_gauge_invariant(c5)
    assert gauge_transform(c5) != embed_in_lambda(c5)
    assert is_gauge_invariant(c5 - C_VARS.var('c12'))


def test_coisotropic_generators():
    ideal = coisotropic_ideal()
    assert len(ideal) == get_expected('coisotropic_generators')
    assert ideal.census() == {3: 1330}
    assert ideal.degrees() == [3]
    assert any(not f for f in ideal.polys)


def test_catanese_generators():
    generators = catanese_generators()
    assert len(generators) == get_expected('catanese_generators')
    assert all(f.varset == C_VARS for f in generators)
    p = select_primes(1)[0]
    assert catanese_ideal().piece(2, p).dim == get_expected('catanese_span')


# ===== Catanese 归一化 =====

def test_catanese_line_pair():
    result = catanese_normalize(coeffs(p01 * p23))
    assert result.lam == Fraction(-1, 2)
    assert result.t == Fraction(1, 4)
    assert coisotropy_check(result.normalized).s == 0


def test_catanese_sum_of_squares():
    result = catanese_normalize(coeffs(SUM_OF_SQUARES))
    assert result.lam == 0
    assert result.t == 4


def test_catanese_idempotent():
    first = catanese_normalize(coeffs((p01 - p13) * (p02 + 3 * p23)))
    second = catanese_normalize(first.normalized)
    assert second.lam == 0
    assert second.t == first.t


def test_catanese_rejects():
    with pytest.raises(NotCoisotropic):
        catanese_normalize(coeffs(p01 ** 2 + p02 * p13))
    assert issubclass(NoUniqueLambda, RuntimeError)


def test_catanese_generators_vanish_on_normalized():
    normalized = catanese_normalize(coeffs((p01 - p13) * (p02 + 3 * p23))).normalized
    point = list(normalized.c)
    assert all(f.evaluate(point) == 0 for f in catanese_generators())


def test_plucker_vector():
    line = PlueckerVector.from_frame([[1, 0, 2, 0], [0, 1, 0, 3]])
    assert line.is_line()
    assert PlueckerVector.basis_line(0, 1).q == (1, 0, 0, 0, 0, 0)
    assert not PlueckerVector((1, 0, 0, 0, 0, 1)).is_line()
    with pytest.raises(ValueError):
        PlueckerVector((0,) * 6)


@pytest.mark.slow
def test_beta3_coisotropic(primes):
    assert minimal_generator_count(coisotropic_ideal(), 3, primes) == get_expected('beta3_coisotropic')
