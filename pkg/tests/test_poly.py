from fractions import Fraction

import pytest
import sympy

from exact import Fp
from poly import (
    DegreeOverflow, DiffForm, ExponentOverflow, MPoly, MissingImage, NotDivisible, UnknownVariable, VarSet,
    VarSetMismatch, exterior_derivative, monomial_basis, wedge,
)

XYZ = VarSet(['x', 'y', 'z'])
CHART = VarSet(['a2', 'a3', 'b2', 'b3'])
PLUCKER = VarSet(['p01', 'p02', 'p03', 'p12', 'p13', 'p23'])

x, y, z = XYZ.gens()
a2, a3, b2, b3 = CHART.gens()


# ===== 多项式 =====

def test_varset():
    assert len(XYZ) == 3
    assert XYZ.index('y') == 1
    with pytest.raises(ValueError):
        VarSet(['x', 'x'])
    with pytest.raises(UnknownVariable):
        XYZ.index('w')
    with pytest.raises(AttributeError):
        XYZ.names = ('a',)


def test_arithmetic():
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert x - x == XYZ.zero()
    assert not (x - x)
    assert (x * Fraction(1, 2)).coefficient((1, 0, 0)) == Fraction(1, 2)
    assert (x ** 2 * y).degree == 3
    assert XYZ.zero().degree == -1
    with pytest.raises(VarSetMismatch):
        x + a2
    with pytest.raises(AttributeError):
        x.terms = {}


def test_differentiate():
    f = x ** 2 * y + 3 * z
    assert f.differentiate('x') == 2 * x * y
    assert f.differentiate(2) == MPoly.constant(XYZ, 3)
    with pytest.raises(UnknownVariable):
        f.differentiate('w')


def test_leibniz():
    f = x ** 2 * y + z
    g = y * z - Fraction(1, 3) * x
    for var in XYZ:
        left = (f * g).differentiate(var)
        right = f.differentiate(var) * g + f * g.differentiate(var)
        assert left == right


def test_substitute():
    st = VarSet(['s', 't'])
    s, t = st.gens()
    f = x * y
    assert f.substitute({'x': s + t, 'y': s - t}) == s ** 2 - t ** 2
    assert MPoly.constant(XYZ, 5).substitute({}, target=st) == MPoly.constant(st, 5)
    with pytest.raises(MissingImage):
        f.substitute({'x': s})


def test_substitute_is_homomorphism():
    st = VarSet(['s', 't'])
    s, t = st.gens()
    images = {'x': s * t, 'y': s + 2, 'z': t ** 2 - s}
    f = x ** 2 + y * z
    g = z - Fraction(1, 2) * x * y
    assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)
    assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)


def test_substitution_composes():
    st = VarSet(['s', 't'])
    s, t = st.gens()
    u = VarSet(['u'])
    (w,) = u.gens()
    f = x ** 2 * y + z
    first = {'x': s + t, 'y': s * t, 'z': t}
    second = {'s': w ** 2, 't': w + 1}
    composed = {k: v.substitute(second) for k, v in first.items()}
    assert f.substitute(first).substitute(second) == f.substitute(composed)


def test_ring_axioms_over_fp():
    p = 1009
    f = MPoly(XYZ, {(1, 0, 0): Fp(3, p), (0, 2, 0): Fp(1000, p)})
    g = MPoly(XYZ, {(0, 0, 1): Fp(7, p), (0, 0, 0): Fp(1, p)})
    h = MPoly(XYZ, {(1, 1, 0): Fp(500, p)})
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == XYZ.zero()
    assert MPoly(XYZ, {(1, 0, 0): Fp(p, p)}) == XYZ.zero()


def test_evaluate():
    f = x ** 2 * y + 1
    assert f.evaluate([2, 3, 0]) == 13
    assert f.evaluate({'x': Fraction(1, 2), 'y': 4, 'z': 9}) == 2
    with pytest.raises(ValueError):
        f.evaluate([1, 2])


def test_text_canonical_order():
    f = MPoly.from_text(PLUCKER, 'p23*p01 + p01^2')
    assert f.to_text() == 'p01^2 + p01*p23'
    g = MPoly.from_text(XYZ, '3 - 1/2*x^2')
    assert g.to_text() == '-1/2*x^2 + 3'
    assert MPoly.from_text(XYZ, g.to_text()) == g
    assert XYZ.zero().to_text() == '0'


@pytest.mark.parametrize('text', ['', 'x**2', 'x*', '2x'])
def test_text_rejects(text):
    with pytest.raises(ValueError):
        MPoly.from_text(XYZ, text)


def test_monomial_basis_order():
    assert monomial_basis(3, 2) == [
        (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2),
    ]
    assert len(monomial_basis(20, 2)) == 210
    assert len(monomial_basis(20, 3)) == 1540


def test_division():
    assert (x ** 2 + y).divmod_by(x) == (x, y)
    assert (x ** 2 - y ** 2).exact_divide(x - y) == x + y
    assert x.divides(x * y)
    assert not x.divides(x + y)
    with pytest.raises(NotDivisible):
        (x ** 2 + y).exact_divide(x)
    with pytest.raises(ZeroDivisionError):
        x.divmod_by(XYZ.zero())


def test_homogeneous_components():
    parts = (x ** 2 + y + 1).homogeneous_components()
    assert parts == {0: XYZ.one(), 1: y, 2: x ** 2}
    assert (x * y + z ** 2).is_homogeneous()
    assert not (x + 1).is_homogeneous()


def test_mul_term():
    assert (x + y).mul_term((0, 0, 1), 2) == 2 * x * z + 2 * y * z


def test_products_respect_exponent_limit():
    top = 2 ** 16 - 1
    assert (x ** top).terms == {(top, 0, 0): 1}
    with pytest.raises(ExponentOverflow):
        x ** 40000 * x ** 30000
    with pytest.raises(ExponentOverflow):
        (x + y).mul_term((0, top, 0), 1)
    with pytest.raises(ExponentOverflow):
        y ** (2 ** 16)


# ===== 微分形式 =====

def d(var):
    return DiffForm.differential(CHART, var)


def test_wedge_anticommutes():
    assert wedge(d('a2'), d('b3')) == -wedge(d('b3'), d('a2'))
    assert not wedge(d('a2'), d('a2'))
    top = wedge(wedge(d('a2'), d('a3')), wedge(d('b2'), d('b3')))
    assert top.top_coefficient() == CHART.one()
    swapped = wedge(wedge(d('a3'), d('a2')), wedge(d('b2'), d('b3')))
    assert swapped.top_coefficient() == -CHART.one()


def test_exterior_derivative_example():
    form = exterior_derivative(DiffForm.one_form(CHART, {'a2': a3}))
    assert form.degree == 2
    assert form.terms == {(0, 1): MPoly.constant(CHART, -1)}


def test_d_squared_vanishes():
    f = a2 ** 2 * b3 + a3 * b2 - Fraction(2, 5) * a2 * b2 * b3
    assert not exterior_derivative(exterior_derivative(DiffForm.function(f)))
    w = DiffForm.one_form(CHART, {'a2': a3 * b2, 'b3': a2 ** 3, 'a3': b2 * b3})
    assert not exterior_derivative(exterior_derivative(w))


def test_degree_overflow():
    three = wedge(wedge(d('a2'), d('a3')), d('b2'))
    with pytest.raises(DegreeOverflow):
        wedge(three, wedge(d('a2'), d('b3')))
    with pytest.raises(DegreeOverflow):
        exterior_derivative(wedge(three, d('b3')))
    with pytest.raises(DegreeOverflow):
        DiffForm(CHART, 5)


def test_top_coefficient_against_naive_expansion(sympy_oracle):
    names = list(CHART.names)
    symbols = [sympy.Symbol(n) for n in names]
    sa2, sa3, sb2, sb3 = symbols

    q = a2 * b3 - b2 * a3
    w = DiffForm.one_form(CHART, {'a2': a3, 'a3': a2 * b3, 'b3': b2 ** 2})
    beta = exterior_derivative(w)
    ours = wedge(wedge(exterior_derivative(DiffForm.function(q)), beta), w).top_coefficient()

    q_sym = sa2 * sb3 - sb2 * sa3
    u_sym = [sympy.diff(q_sym, s) for s in symbols]
    w_sym = [sa3, sa2 * sb3, sympy.Integer(0), sb2 ** 2]
    beta_sym = sympy_oracle['d'](names, w_sym)

    for key, value in beta_sym.items():
        assert sympy.expand(sympy_oracle['to_sympy'](beta.terms.get(key, CHART.zero())) - value) == 0

    expected = sympy_oracle['top'](names, u_sym, beta_sym, w_sym)
    assert sympy.expand(sympy_oracle['to_sympy'](ours) - expected) == 0
