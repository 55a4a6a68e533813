from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conicbundle import corpus
from conicbundle.exact import UniPoly
from conicbundle.signatures import (
    INFINITY,
    Signature,
    descartes_signature,
    fiber_matrix4,
    fiber_signature,
    jump_rule_violations,
    pi1_surjective,
    signature_profile,
    y_real_components,
)

from conftest import gram, rationals

S = Signature


def numpy_signature(m):
    e = np.linalg.eigvalsh(np.array([[float(x) for x in r] for r in m]))
    tol = 1e-9 * max(1.0, float(np.max(np.abs(e))))
    return int((e > tol).sum()), int((e < -tol).sum())


def test_infinity_is_a_singleton():
    assert type(INFINITY)() is INFINITY
    assert str(INFINITY) == "oo"


def test_signature_validation():
    with pytest.raises(ValueError):
        S(3, 2)
    assert S(0, 4).definite and S(4, 0).definite
    assert not S(1, 3).definite and S(1, 3).indefinite


@settings(max_examples=80)
@given(gram, gram, gram, rationals)
def test_descartes_matches_eigenvalues(a, b, c, t):
    from conicbundle.model import QuadricTriple

    T = QuadricTriple(a, b, c)
    m = fiber_matrix4(T, t)
    pos, neg, zero = descartes_signature(m)
    assert pos + neg + zero == 4
    if zero == 0:
        assert (pos, neg) == numpy_signature(m)


@pytest.mark.parametrize("name, gamma", [
    ("pointless", [54, 30, 19, 4, 10, 2, 1]),
    ("irr2nonnested", [-11, -36, 116, -66, -4, 8, -1]),
    ("irr2nested", [-360, 78, 395, -82, -36, 4, 1]),
    ("irr3oval", [-2304, 0, 784, 0, -56, 0, 1]),
    ("rationalDeltaempty", [-54, 30, -19, 4, -10, 2, -1]),
    ("rational1oval", [-2, 10, -33, 30, Fraction(-29, 2), Fraction(3, 2), Fraction(-1, 4)]),
    ("rational2nested_a", [-108, -24, 394, 244, -677, -398, -58]),
    ("rational2nested_b", [-72, -24, -102, -46, -78, -48, -36]),
    ("rational2nonnested", [-1, 2, -2, 4, Fraction(-17, 4), Fraction(3, 2), Fraction(-1, 4)]),
    ("rational3ovals", [-32, 20, 47, 1114, -1335, 102, 39]),
    ("rational4ovals", [-2, 10, -3, -34, 12, 28, 4]),
])
def test_branch_polynomials(name, gamma):
    P = signature_profile(corpus.get(name))
    assert P.gamma.branch_poly == UniPoly(gamma)


@pytest.mark.parametrize("name, samples", [
    ("irr2nonnested", {-2: S(0, 4), 0: S(1, 3), 1: S(2, 2), 2: S(1, 3), 4: S(2, 2), 7: S(1, 3)}),
    ("irr2nested", {Fraction(-11, 2): S(1, 3), -3: S(0, 4), 0: S(1, 3), 2: S(0, 4),
                    Fraction(7, 2): S(1, 3), 5: S(2, 2)}),
    ("irr3oval", {-5: S(1, 3), -3: S(0, 4), 0: S(1, 3), 3: S(0, 4), 5: S(1, 3), 7: S(0, 4)}),
    ("rational4ovals", {-7: S(2, 2), -3: S(1, 3), -1: S(2, 2), 0: S(1, 3), Fraction(7, 20): S(2, 2),
                        Fraction(1, 2): S(1, 3)}),
])
def test_fiber_signatures_at_sample_points(name, samples):
    T = corpus.get(name)
    for t, sig in samples.items():
        assert fiber_signature(T, t) == sig


@pytest.mark.parametrize("name, sequence", [
    ("pointless", [S(0, 4)]),
    ("rationalDeltaempty", [S(3, 1)]),
    ("rational1oval", [S(1, 3)]),
    ("rational2nested_a", [S(1, 3)]),
    ("rational2nested_b", [S(1, 3)]),
    ("rational2nonnested", [S(2, 2), S(1, 3)]),
    ("rational3ovals", [S(1, 3), S(2, 2), S(1, 3), S(2, 2)]),
])
def test_arc_signatures_cyclically(name, sequence):
    sigs = signature_profile(corpus.get(name)).interval_signatures
    n = len(sigs)
    assert n == len(sequence)
    assert any(sigs[k:] + sigs[:k] == sequence for k in range(n))


def test_twist_of_rational2nested_b_is_balanced():
    from conicbundle.model import twist

    assert set(signature_profile(twist(corpus.get("rational2nested_b"))).interval_signatures) == {S(2, 2)}


def test_real_weierstrass_counts():
    P = signature_profile(corpus.get("irr2nonnested"))
    assert P.real_weierstrass_count == 6
    approx = sorted(float(r.refine(Fraction(1, 10**8)).midpoint()) for r in P.branch_points)
    assert approx == pytest.approx([-2.9708, -0.1845, 0.7545, 1.5708, 2.8152, 6.0149], abs=1e-4)
    assert signature_profile(corpus.get("pointless")).real_weierstrass_count == 0


def test_surjectivity_and_components():
    assert not pi1_surjective(signature_profile(corpus.get("pointless")))
    assert pi1_surjective(signature_profile(corpus.get("rational1oval")))
    assert y_real_components(signature_profile(corpus.get("irr3oval"))) == 3
    assert y_real_components(signature_profile(corpus.get("irr2nested"))) == 2
    assert y_real_components(signature_profile(corpus.get("irr2nonnested"))) == 1
    assert y_real_components(signature_profile(corpus.get("pointless"))) == 0


def test_jump_rule_on_corpus():
    for name, T in corpus.all_triples().items():
        P = signature_profile(T)
        if P.squarefree:
            assert jump_rule_violations(P) == [], name


def test_infinity_as_branch_point():
    # det M1 = 0 puts a branch point at infinity
    from conicbundle.model import QuadricTriple

    T = QuadricTriple([[1, 0, 0], [0, -1, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
                      [[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    P = signature_profile(T)
    assert P.infinity_multiplicity >= 1
    assert not any(a.through_infinity for a in P.arcs)
    assert fiber_signature(T, INFINITY) == S(1, 2)
