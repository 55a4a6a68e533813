import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conicbundle import corpus, ijt
from conicbundle.balls import Ball, ball_det
from conicbundle.ijt import (
    IJTContradiction,
    IJTError,
    aberth_roots,
    candidate_lines,
    certified_roots,
    ijt_verdict,
    line_delta_intersection,
    line_parametrization,
    lift_to_cover,
    search_bitangent,
    search_line,
)
from conicbundle.model import quartic_from_triple
from conicbundle.bitangents import real_bitangents


# -- balls and roots ----------------------------------------------------------------

def test_ball_arithmetic_encloses():
    with mpmath.workdps(30):
        a = Ball.of(mpmath.mpc(1, 2), mpmath.mpf("1e-10"))
        b = Ball.of(mpmath.mpc(-3, 1), mpmath.mpf("1e-12"))
        prod = a * b
        assert abs(prod.mid - mpmath.mpc(-5, -5)) < 1e-25
        assert prod.rad >= abs(a.mid) * b.rad + abs(b.mid) * a.rad
        assert (a / a).contains_zero() is False
        assert abs((a.sqrt() ** 2).mid - a.mid) < 1e-25
        with pytest.raises(ZeroDivisionError):
            Ball.of(0, 1).inv()


def test_ball_det_identity_and_singular():
    rows = [[Ball.exact(1 if i == j else 0) for j in range(4)] for i in range(4)]
    assert ball_det(rows).mid == 1
    rows[3] = rows[2]
    assert ball_det(rows).contains_zero()


@settings(max_examples=30)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7))
def test_aberth_against_mpmath(coeffs):
    if coeffs[-1] == 0 or all(c == 0 for c in coeffs[:-1]):
        return
    with mpmath.workdps(30):
        ours = aberth_roots(coeffs)
        try:
            theirs = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=100)
        except mpmath.libmp.NoConvergence:
            return
        theirs = theirs if isinstance(theirs, list) else [theirs]
        for z in theirs:
            assert min(abs(z - y) for y in ours) < mpmath.mpf(10) ** -8


def test_certified_roots_pair_conjugates():
    # (x^2 + 1)(x - 2)(x + 3)
    with mpmath.workdps(50):
        roots = certified_roots([-6, 1, -5, 1, 1])
        real = sorted(float(mpmath.re(r.center)) for r in roots if r.is_real)
        assert real == pytest.approx([-3, 2])
        for k, r in enumerate(roots):
            assert roots[r.partner].partner == k
            assert abs(roots[r.partner].center - mpmath.conj(r.center)) <= r.radius + roots[r.partner].radius


def test_clustered_roots_refused():
    with pytest.raises(IJTError):
        certified_roots([1, -2, 1])


# -- lines and lifts ----------------------------------------------------------------

@pytest.mark.parametrize("L", [(0, 0, 1), (1, 2, 0), (3, -1, 2), (1, 0, 0)])
def test_line_parametrization_lies_on_the_line(L):
    p, q = line_parametrization(L)
    assert sum(a * b for a, b in zip(L, p)) == 0
    assert sum(a * b for a, b in zip(L, q)) == 0


def test_pointless_lift_over_w_zero():
    T = corpus.get("pointless")
    pts = line_delta_intersection(quartic_from_triple(T).f, (0, 0, 1))
    assert len(pts) == 4
    with mpmath.workdps(50):
        target = [p for p in pts if abs(p.coords[0].mid - 1j) < 1e-30 and abs(p.coords[1].mid - 1) < 1e-30]
        assert len(target) == 1
        a, b = lift_to_cover(T, target[0].coords)
        r, s = a.coords[3].mid, a.coords[4].mid
        assert abs(r) < 1e-40
        assert abs(abs(s) - mpmath.sqrt(7)) < 1e-40 and abs(mpmath.re(s)) < 1e-40
        assert b.coords[4].mid == -s


@pytest.mark.parametrize("name", ["pointless", "irr3oval", "rational4ovals"])
def test_lift_residuals(name):
    T = corpus.get(name)
    f = quartic_from_triple(T).f
    for L in [(1, 1, 3), (2, -1, 1)]:
        for p in line_delta_intersection(f, L):
            for lift in lift_to_cover(T, p.coords):
                assert max(lift.residuals(T)) < 1e-10


def test_pointless_witness_over_w_zero():
    w = search_line(corpus.get("pointless"), (0, 0, 1))
    assert w is not None and w.kind == "transversal"
    assert w.certificate.certified
    assert "uvwrs"[w.certificate.dropped_column] == "w"
    assert w.determinant.real == pytest.approx(-79.195959492893323, rel=1e-12)
    assert w.conjugation_closed()


def test_irr3oval_witness_over_v_zero():
    w = search_line(corpus.get("irr3oval"), (0, 1, 0))
    assert w is not None and w.certificate.certified
    assert w.determinant.real == pytest.approx(-359.61663039, rel=1e-9)


def test_selections_are_conjugation_stable():
    # a real point of Delta whose lifts are not real admits no stable choice
    total = 0
    for name, L in [("pointless", (1, 1, 3)), ("rational4ovals", (1, 1, 3)), ("rational3ovals", (2, -1, 1))]:
        T = corpus.get(name)
        pts = line_delta_intersection(quartic_from_triple(T).f, L)
        lifts = [lift_to_cover(T, p.coords) for p in pts]
        with mpmath.workdps(ijt.DPS):
            sels = ijt._selections(lifts, [p.partner for p in pts])
            total += len(sels)
            for chosen in sels:
                for k, c in enumerate(chosen):
                    assert c.conj().matches(chosen[pts[k].partner])
    assert total > 0


def test_bitangent_witnesses():
    T = corpus.get("rational2nested_a")
    bts = real_bitangents(quartic_from_triple(T).f)
    found = [search_bitangent(T, b) for b in bts.bitangents]
    assert any(w is not None and w.kind == "bitangent" and w.certificate.certified for w in found)


def test_candidate_lines_order_and_budget():
    T = corpus.get("rational3ovals")
    lines = candidate_lines(T, budget=10)
    assert lines[:3] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    nb = real_bitangents(quartic_from_triple(T).f).count
    assert len(lines) == 3 + nb + 10
    assert candidate_lines(T, budget=10) == lines


# -- verdicts -------------------------------------------------------------------------

def test_obstructed_corpus_entry_has_no_witness():
    v = ijt_verdict(corpus.get("0ovalIJT"), u_delta_sign=-1, pi1_surjective=False, budget=8)
    assert v.status == "Obstructed" and v.witness is None
    assert v.lines_tried == 3 + 4 + 8


def test_vanishes_with_witness():
    v = ijt_verdict(corpus.get("pointless"), u_delta_sign=1, pi1_surjective=False, budget=8)
    assert v.status == "Vanishes" and v.witness.certificate.certified
    assert v.lines_tried == 1


def test_search_can_be_skipped():
    T = corpus.get("0ovalIJT")
    assert ijt_verdict(T, -1, False, search=False).status == "Obstructed"
    assert ijt_verdict(T, 1, False, search=False).status == "Unknown"


def test_contradiction_detector(monkeypatch):
    T = corpus.get("pointless")
    witness = search_line(T, (0, 0, 1))
    monkeypatch.setattr(ijt, "_search", lambda T, lines: (witness, 1))
    with pytest.raises(IJTContradiction):
        ijt_verdict(T, u_delta_sign=-1, pi1_surjective=False, budget=1)
