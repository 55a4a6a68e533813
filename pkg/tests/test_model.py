from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from conicbundle import corpus
from conicbundle.exact import TernaryForm
from conicbundle.model import (
    InvalidTriple,
    QuadricTriple,
    gamma_curve,
    quartic_from_triple,
    require_valid,
    twist,
    validate,
)

from conftest import sym, triples

u, v, w = sympy.symbols("u v w")


def sympy_form(m):
    x = sympy.Matrix([u, v, w])
    return sympy.expand((x.T * sympy.Matrix(m) * x)[0])


def test_gram_round_trip():
    m = sym([1, Fraction(1, 2), 0, -3, 2, 5])
    f = TernaryForm.from_gram(m)
    assert f.gram() == [list(map(Fraction, r)) for r in m]
    assert f(1, 1, 1) == 1 + 1 + 0 - 3 + 4 + 5


def test_asymmetric_gram_rejected():
    with pytest.raises(ValueError):
        QuadricTriple([[1, 2, 0], [0, 1, 0], [0, 0, 1]], sym([1] * 6), sym([1] * 6))


def test_floats_rejected():
    with pytest.raises(TypeError):
        QuadricTriple(sym([0.5, 0, 0, 1, 0, 1]), sym([1] * 6), sym([1] * 6))


@settings(max_examples=30)
@given(triples)
def test_quartic_and_gamma_match_sympy(T):
    q1, q2, q3 = (sympy_form(m) for m in T.matrices)
    f = quartic_from_triple(T).f
    assert sympy.expand(q1 * q3 - q2**2 - sympy.sympify(str(f).replace("^", "**"))) == 0
    t = sympy.Symbol("t")
    m = t**2 * sympy.Matrix(T.M1) + 2 * t * sympy.Matrix(T.M2) + sympy.Matrix(T.M3)
    expected = sympy.Poly(-m.det(), t)
    got = gamma_curve(T).branch_poly
    assert [sympy.Rational(c.numerator, c.denominator) for c in reversed(got.coeffs)] == (
        expected.all_coeffs() if not got.is_zero() else [])


@given(triples)
def test_twist_is_an_involution(T):
    assert twist(twist(T)) == T
    assert quartic_from_triple(twist(T)).f == quartic_from_triple(T).f
    # the twist replaces t by -t and negates the branch polynomial
    g, h = gamma_curve(T).branch_poly, gamma_curve(twist(T)).branch_poly
    assert all(h(x) == -g(-x) for x in range(-3, 4))


def test_twist_label():
    T = corpus.get("pointless")
    assert twist(T).label == "pointless^twist"
    assert twist(twist(T)).label == "pointless"


def test_corpus_is_valid():
    for name, T in corpus.all_triples().items():
        cert = validate(T)
        assert cert.ok, name
        assert cert.delta_resultant != 0 and cert.cover_resultant != 0


def test_rational_delta_empty_is_twist_of_pointless():
    assert corpus.get("rationalDeltaempty") == twist(corpus.get("pointless"))


def test_singular_quartic_detected():
    # Q1 Q3 - Q2^2 with Q2 = 0 and Q1, Q3 sharing a zero gives a node
    T = QuadricTriple(sym([1, 0, 0, 0, 0, -1]), sym([0, 0, 0, 1, 0, 0]), sym([0, 0, 0, 1, 0, -1]))
    cert = validate(T)
    assert not cert.delta_smooth
    with pytest.raises(InvalidTriple):
        require_valid(T)


def test_common_zero_breaks_the_cover():
    # all three vanish at [0:0:1]
    T = QuadricTriple(sym([1, 0, 0, 1, 0, 0]), sym([0, 1, 0, 0, 0, 0]), sym([1, 0, 0, -1, 0, 0]))
    assert not validate(T).cover_etale


def test_zero_quartic():
    m = sym([1, 0, 0, 1, 0, 1])
    T = QuadricTriple(m, m, m)
    cert = validate(T)
    assert not cert.quartic_nonzero and not cert.ok


def _sympy_singular(f) -> bool:
    """Groebner basis of the partials plus a dehomogenisation in each chart."""
    grads = [sympy.diff(f, x) for x in (u, v, w)]
    for chart in ({u: 1}, {v: 1}, {w: 1}):
        G = sympy.groebner([g.subs(chart) for g in grads], u, v, w, order="lex")
        if list(G) != [1]:
            return True
    return False


def test_smoothness_matches_groebner():
    cases = [corpus.get("pointless"), corpus.get("rational4ovals"),
             QuadricTriple(sym([1, 0, 0, 0, 0, -1]), sym([0, 0, 0, 1, 0, 0]), sym([0, 0, 0, 1, 0, -1]))]
    for T in cases:
        f = sympy.sympify(str(quartic_from_triple(T).f).replace("^", "**"))
        assert (not validate(T).delta_smooth) == _sympy_singular(f)


def test_fiber_matrix():
    T = corpus.get("rational4ovals")
    t = Fraction(1, 3)
    m = T.fiber_matrix(t)
    assert m[0][0] == t * t * T.M1[0][0] + 2 * t * T.M2[0][0] + T.M3[0][0]
    assert gamma_curve(T).branch_poly(t) == -Fraction(str(sympy.Matrix(m).det()))
