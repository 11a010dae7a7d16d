import pytest
import sympy

from components import CHOW_CONIC, CHOW_LINES, HURWITZ, SQUARES, sample
from grassmann import PLUCKER, NotCoisotropic, QuadricCoeffs
from integrability import (
    CHART_VARS, CHARTS, STANDARD_CHART, Chart,
    alpha_forms, chart_divisibility, chart_substitute, chow_membership_test, j_generators,
    normal_form, pseudo_remainder, q_coefficients,
)
from integrability.charts import Q_INDICES
from ideals.evaluation import vanishes_mod
from poly import MPoly, exterior_derivative

p01, p02, p03, p12, p13, p23 = PLUCKER.gens()
a2, a3, b2, b3 = CHART_VARS.gens()
SUM_OF_SQUARES = sum((v ** 2 for v in PLUCKER.gens()), PLUCKER.zero())


def coeffs(q: MPoly) -> QuadricCoeffs:
    return QuadricCoeffs.from_poly(q)


# ===== 图卡 =====

def test_charts():
    assert len(CHARTS) == 6
    assert STANDARD_CHART.label == '01'
    assert Chart((1, 3)).free == (0, 2)
    with pytest.raises(ValueError):
        Chart((2, 1))


def test_chart_images_satisfy_relation():
    for chart in CHARTS:
        images = chart.images()
        relation = images[0] * images[5] - images[1] * images[4] + images[2] * images[3]
        assert not relation


def test_chart_substitute():
    assert chart_substitute(coeffs(p01 * p23)).poly == a2 * b3 - a3 * b2
    assert chart_substitute(coeffs(p01 ** 2)).poly == CHART_VARS.one()
    assert chart_substitute(coeffs(p02 * p13)).poly == -b2 * a3
    symbolic = chart_substitute(None)
    assert all(c.degree == 1 for c in symbolic.poly.terms.values())


def test_alpha_forms():
    ql = chart_substitute(coeffs(p01 * p23))
    a11, a12, a21, a22 = alpha_forms(ql)
    assert a11.terms == {(0,): b3, (1,): -b2}
    assert a12.terms == {(2,): b3, (3,): -b2}
    assert a22.terms == {(2,): -a3, (3,): a2}
    assert exterior_derivative(a22).terms == {
        (1, 2): MPoly.constant(CHART_VARS, -1),
        (0, 3): CHART_VARS.one(),
    }


def test_q_coefficients_vanish_for_constant_image():
    result = q_coefficients(chart_substitute(coeffs(p01 ** 2)))
    assert list(result.q) == list(Q_INDICES)
    assert not any(result.ordered())


def test_q1111_against_naive_expansion(sympy_oracle):
    q = 3 * p01 * p23 - p02 ** 2 + 2 * p03 * p13 + p12 * p23
    ql = chart_substitute(coeffs(q))
    ours = q_coefficients(ql).q[(1, 1, 1, 1)]

    names = list(CHART_VARS.names)
    symbols = [sympy.Symbol(n) for n in names]
    q_sym = sympy_oracle['to_sympy'](ql.poly)
    u = [sympy.diff(q_sym, s) for s in symbols]
    alpha = [u[0], u[1], sympy.Integer(0), sympy.Integer(0)]
    beta = sympy_oracle['d'](names, alpha)
    expected = sympy_oracle['top'](names, u, beta, alpha)
    assert sympy.expand(sympy_oracle['to_sympy'](ours) - expected) == 0


def test_normal_form_of_q_is_zero():
    ql = chart_substitute(None)
    assert normal_form(ql.poly, ql) == {}


def test_pseudo_remainder():
    # 首项 -a3*b2，LC = -1
    ql = chart_substitute(coeffs(p01 * p23))
    f = a3 ** 2 * b2 + a2
    remainder, steps = pseudo_remainder(f, ql)
    assert steps == 1
    assert remainder == {(1, 1, 0, 1): -1, (1, 0, 0, 0): -1}
    r = sum((MPoly.monomial(CHART_VARS, e).scale(c) for e, c in remainder.items()), CHART_VARS.zero())
    assert (-1) ** steps * f - r == a3 * ql.poly


def test_pseudo_remainder_of_multiple_is_zero():
    ql = chart_substitute(None)
    remainder, steps = pseudo_remainder(ql.poly.mul_term((0, 1, 1, 0), 1), ql)
    assert remainder == {}
    assert steps >= 1


# ===== 整除判据 =====

@pytest.mark.parametrize('q, member', [
    (p01 * p23, True),
    ((p01 - p13) * (p02 + 3 * p23), True),
    ((p01 + 2 * p12 - p23) ** 2, True),
    (SUM_OF_SQUARES, False),
])
def test_membership_examples(q, member):
    assert chow_membership_test(coeffs(q)) is member


@pytest.mark.parametrize('family, member', [
    (HURWITZ, False), (CHOW_LINES, True), (CHOW_CONIC, True), (SQUARES, True),
])
def test_membership_on_witnesses(family, member):
    for seed in (1, 2):
        assert chow_membership_test(sample(family, seed).quadric) is member


def test_chart_divisibility_keys():
    verdicts = chart_divisibility(coeffs(p01 * p23))
    assert set(verdicts) == {chart.label for chart in CHARTS}
    assert all(verdicts.values())


def test_membership_rejects_non_coisotropic():
    with pytest.raises(NotCoisotropic):
        chow_membership_test(coeffs(p01 ** 2 + p02 * p13))


# ===== J 的生成元 =====

@pytest.mark.slow
def test_j_generators(primes):
    jgens = j_generators()
    census = jgens.census()
    assert [entry['chart'] for entry in census['per_chart']] == [chart.label for chart in CHARTS]
    for entry in census['per_chart']:
        assert entry['count'] == sum(entry['degree_histogram'].values())
        assert min(entry['degree_histogram']) >= 3
    for entry, reduced in zip(census['per_chart'], census['reduced_per_chart']):
        assert entry['count'] == reduced['count']
        assert max(entry['degree_histogram']) >= max(reduced['degree_histogram'])
    polys = jgens.distinct()
    for family in (CHOW_LINES, CHOW_CONIC, SQUARES):
        assert all(vanishes_mod(polys, sample(family, 1).v.v, primes))
    assert not all(vanishes_mod(polys, sample(HURWITZ, 1).v.v, primes))
