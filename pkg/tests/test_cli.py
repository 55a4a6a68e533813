import json
import random
from fractions import Fraction

import numpy as np
import pytest

from conicbundle import corpus
from conicbundle.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, main
from conicbundle.exact import ternary_resultant
from conicbundle.exact.roots import simplest_rational
from conicbundle.model import quartic_from_triple
from conicbundle.plot import PlotConfig, boundary_displacement, evaluate_grid, marching_squares, region_plot
from conicbundle.report import ParseError, parse_input, triple_document
from conicbundle.sweep import family_member, sweep
from conicbundle.topology import isotopy_class


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_doc(tmp_path, doc, name="t.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


# -- parsing ----------------------------------------------------------------------

def test_parse_round_trip():
    T = corpus.get("rational3ovals")
    assert parse_input(triple_document(T)) == T


@pytest.mark.parametrize("mutate, where", [
    (lambda d: d["Q1"][0].__setitem__(0, 0.5), "Q1[0][0]"),
    (lambda d: d["Q2"][1].__setitem__(2, "1.5"), "Q2[1][2]"),
    (lambda d: d["Q3"][2].__setitem__(0, "7"), "not symmetric"),
    (lambda d: d.pop("Q2"), "missing field Q2"),
    (lambda d: d.__setitem__("Q1", [[1, 0], [0, 1]]), "3x3"),
    (lambda d: d["Q1"][0].__setitem__(0, "1/0"), "zero denominator"),
])
def test_parse_errors_name_the_location(mutate, where):
    d = triple_document(corpus.get("pointless"))
    mutate(d)
    with pytest.raises(ParseError, match=where.replace("[", r"\[").replace("]", r"\]")):
        parse_input(d)


def test_exit_code_for_malformed_json(tmp_path, capsys):
    code, _, err = run(capsys, "validate", write_doc(tmp_path, '{"Q1": [[1, 0, 0], '))
    assert code == EXIT_PARSE and "line 1" in err


def test_exit_code_for_decimal_entry(tmp_path, capsys):
    d = triple_document(corpus.get("pointless"))
    d["Q1"][0][0] = 1.25
    code, _, err = run(capsys, "analyze", write_doc(tmp_path, d))
    assert code == EXIT_PARSE and "Q1[0][0]" in err


def test_unknown_input(capsys):
    assert run(capsys, "validate", "no-such-thing")[0] == EXIT_PARSE


def test_singular_input_suppresses_the_verdict(tmp_path, capsys):
    d = {"label": "nodal", "Q1": [[1, 0, 0], [0, 0, 0], [0, 0, -1]], "Q2": [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
         "Q3": [[0, 0, 0], [0, 1, 0], [0, 0, -1]]}
    path = write_doc(tmp_path, d)
    code, out, _ = run(capsys, "analyze", path, "--format", "structured")
    assert code == EXIT_INVALID
    doc = json.loads(out)
    assert doc["verdict"] is None and doc["validation"]["delta_smooth"] is False
    assert run(capsys, "validate", path)[0] == EXIT_INVALID
    assert run(capsys, "gamma", path)[0] == EXIT_INVALID


# -- commands ---------------------------------------------------------------------

def test_analyze_structured_is_byte_stable(capsys):
    a = run(capsys, "analyze", "irr3oval", "--format", "structured", "--ijt-budget", "8")
    b = run(capsys, "analyze", "irr3oval", "--format", "structured", "--ijt-budget", "8")
    assert a[0] == EXIT_OK and a[1] == b[1]
    doc = json.loads(a[1])
    assert doc["verdict"]["status"] == "IrrationalDisconnected"
    assert doc["twist_verdict"]["status"] == "Rational"
    assert doc["components"] == 3
    assert "timing" not in doc


def test_timing_is_opt_in(capsys):
    code, out, _ = run(capsys, "analyze", "rational4ovals", "--format", "structured", "--timing", "--ijt-budget", "4")
    assert code == EXIT_OK and json.loads(out)["timing"]["total_seconds"] > 0


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "pointless", "--ijt-budget", "4")
    assert code == EXIT_OK
    assert "verdict: IrrationalNoRealPoints [R0]" in out
    assert "twist verdict: Rational" in out


def test_twist_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "twist", "pointless")
    assert code == EXIT_OK
    path = write_doc(tmp_path, out, "twisted.json")
    code, out2, _ = run(capsys, "twist", path)
    assert parse_input(json.loads(out2)) == corpus.get("pointless")
    code, out3, _ = run(capsys, "analyze", path, "--format", "structured", "--ijt-budget", "4")
    assert json.loads(out3)["verdict"]["status"] == "Rational"


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(triple_document(corpus.get("rational4ovals")))))
    code, out, _ = run(capsys, "isotopy", "-", "--format", "structured")
    assert code == EXIT_OK and json.loads(out)["class"] == "FourOvals"


def test_gamma_and_signatures_commands(capsys):
    code, out, _ = run(capsys, "gamma", "irr3oval")
    assert code == EXIT_OK and "y^2 = " in out
    code, out, _ = run(capsys, "signatures", "irr3oval", "--format", "structured")
    d = json.loads(out)
    assert d["components"] == 3 and d["jump_rule_violations"] == []


def test_tolerance_controls_enclosure_width(capsys):
    _, out, _ = run(capsys, "gamma", "irr2nonnested", "--format", "structured", "--tolerance", "1/1000")
    for r in json.loads(out)["weierstrass_real"]:
        assert Fraction(r["hi"]) - Fraction(r["lo"]) <= Fraction(1, 1000)
    assert run(capsys, "gamma", "irr2nonnested", "--tolerance", "0.001")[0] == EXIT_PARSE


def test_bitangents_and_ijt_commands(capsys):
    code, out, _ = run(capsys, "bitangents", "rational4ovals", "--format", "structured")
    assert code == EXIT_OK and json.loads(out)["count"] == 28
    code, out, _ = run(capsys, "ijt", "pointless", "--format", "structured", "--ijt-budget", "2")
    d = json.loads(out)
    assert d["status"] == "Vanishes" and d["witness"]["dropped_column"] == "w"


def test_corpus_command(capsys):
    code, out, _ = run(capsys, "corpus", "--format", "structured")
    assert {e["name"] for e in json.loads(out)["triples"]} == set(corpus.names())
    code, out, _ = run(capsys, "corpus", "FJSVV")
    assert parse_input(json.loads(out)) == corpus.get("FJSVV")


# -- plots -------------------------------------------------------------------------

def test_plot_svg(tmp_path, capsys):
    out = tmp_path / "p.svg"
    code, _, _ = run(capsys, "plot", "rational4ovals", "--out", str(out), "--grid", "64")
    assert code == EXIT_OK
    svg = out.read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")
    assert "</svg>" in svg


def test_plot_boundary_converges():
    f = quartic_from_triple(corpus.get("rational4ovals")).f
    errs = []
    for n in (256, 512):
        xs = np.linspace(-3, 3, n)
        segs = marching_squares(evaluate_grid(f, "w", xs, xs), xs, xs)
        errs.append(boundary_displacement(f, "w", segs))
    assert errs[1] < errs[0] / 2


def _components(mask) -> int:
    seen = np.zeros_like(mask, bool)
    n = 0
    for i, j in zip(*np.nonzero(mask)):
        if seen[i, j]:
            continue
        n += 1
        stack = [(i, j)]
        seen[i, j] = True
        while stack:
            a, b = stack.pop()
            for c, d in ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1)):
                if 0 <= c < mask.shape[0] and 0 <= d < mask.shape[1] and mask[c, d] and not seen[c, d]:
                    seen[c, d] = True
                    stack.append((c, d))
    return n


def test_two_nonnested_plot_regions():
    # the blue region is bounded by two ovals that each enclose a disc of (f > 0)
    T = corpus.get("irr2nonnested")
    xs = np.linspace(-3, 5, 321)
    f = evaluate_grid(quartic_from_triple(T).f, "w", xs, xs)
    assert _components(f > 0) == 2
    assert _components(f <= 0) == 1
    q1 = evaluate_grid(T.forms[0], "w", xs, xs)
    assert (q1 >= 0).any()
    svg = region_plot(T, None, PlotConfig(grid=64, box=(-3, 5, -4, 4)))
    assert '<g fill="blue"' in svg and '<g fill="red"' in svg and 'stroke="black"' in svg


def test_positive_quartic_has_no_blue_region():
    # f > 0 on all of P^2(R) for the pointless triple
    svg = region_plot(corpus.get("pointless"), None, PlotConfig(grid=64))
    blue = svg.split('<g fill="blue"', 1)[1].split("</g>", 1)[0]
    assert "<rect" not in blue


def test_region_plot_path_and_chart(tmp_path):
    cfg = PlotConfig(grid=48, chart="u", bitangents=False)
    svg = region_plot(corpus.get("irr3oval"), str(tmp_path / "c.svg"), cfg)
    assert (tmp_path / "c.svg").read_text() == svg


# -- family sweep ------------------------------------------------------------------

def test_constant_family_has_no_singular_member():
    T = corpus.get("rational3ovals")
    r = sweep(T, T)
    assert not r.identically_singular
    assert r.singular == ()
    assert [s.isotopy_class.value for s in r.segments] == ["ThreeOvals"]


@pytest.fixture(scope="module")
def pointless_sweep():
    return sweep(corpus.get("pointless"), corpus.get("0ovalIJT"), steps=2)


def test_sweep_singular_parameters(pointless_sweep):
    r = pointless_sweep
    assert r.singular_float() == pytest.approx([0.4123, 0.4767, 0.5, 0.5195, 0.9112], abs=1e-4)
    assert any(s.is_exact and s.lo == Fraction(1, 2) for s in r.singular)


def test_sweep_resultant_is_the_member_discriminant(pointless_sweep):
    A, B = corpus.get("pointless"), corpus.get("0ovalIJT")
    rng = random.Random(1)
    for _ in range(3):
        lam = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        f = quartic_from_triple(family_member(A, B, lam)).f
        assert pointless_sweep.resultant(lam) == ternary_resultant(*f.gradient())


def test_sweep_against_dense_sign_changes(pointless_sweep):
    # odd-multiplicity roots appear as sign changes on a fine rational grid
    R = pointless_sweep.resultant
    grid = [Fraction(k, 10**4) for k in range(10**4 + 1)]
    signs = [(R(x) > 0) - (R(x) < 0) for x in grid]
    changes = []
    for k in range(len(grid) - 1):
        if signs[k] * signs[k + 1] < 0:
            changes.append(float(grid[k]))
        if signs[k] == 0:
            changes.append(float(grid[k]))
    found = pointless_sweep.singular_float()
    for x in changes:
        assert min(abs(x - y) for y in found) < 2e-4
    odd = [s for s in pointless_sweep.singular if s.multiplicity % 2 == 1]
    assert len(changes) == len(odd)


def test_sweep_segments_agree_with_independent_samples(pointless_sweep):
    A, B = corpus.get("pointless"), corpus.get("0ovalIJT")
    for s in pointless_sweep.segments:
        # a short rational near the midpoint, away from the sweep's own samples
        mid = simplest_rational((7 * s.lo + 9 * s.hi) / 16, (9 * s.lo + 7 * s.hi) / 16)
        R = isotopy_class(quartic_from_triple(family_member(A, B, mid)), seed=3)
        assert R.isotopy_class == s.isotopy_class
    assert [s.isotopy_class.value for s in pointless_sweep.segments][:3] == ["Empty", "OneOval", "TwoNonNested"]


def test_sweep_command(capsys):
    code, out, _ = run(capsys, "sweep", "rational3ovals", "rational3ovals", "--format", "structured")
    d = json.loads(out)
    assert code == EXIT_OK and d["singular"] == [] and d["segments"][0]["class"] == "ThreeOvals"
