"""Input documents and analysis reports as plain JSON-compatible data."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import mpmath

from .exact import IsolatingInterval
from .ijt import IJTVerdict, TorsorWitness
from .model import QuadricTriple, ValidationCertificate, quartic_from_triple, twist, validate
from .signatures import GammaProfile, jump_rule_violations
from .verdict import Analysis, RationalityVerdict, analyse, decide

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class ParseError(ValueError):
    """Malformed input document; the message names the offending location."""


def _parse_rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"{where}: {x!r} is not an exact rational (use an integer or 'p/q' string)")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str) or not _RATIONAL.match(x):
        raise ParseError(f"{where}: malformed rational {x!r}")
    num, _, den = x.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise ParseError(f"{where}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def parse_input(doc: Any) -> QuadricTriple:
    """``{"label": ..., "Q1": [[...]*3]*3, "Q2": ..., "Q3": ...}`` to a QuadricTriple."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be an object with fields label, Q1, Q2, Q3")
    mats = []
    for name in ("Q1", "Q2", "Q3"):
        if name not in doc:
            raise ParseError(f"missing field {name}")
        m = doc[name]
        if not isinstance(m, list) or len(m) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in m):
            raise ParseError(f"{name}: expected a 3x3 array")
        g = [[_parse_rational(m[i][j], f"{name}[{i}][{j}]") for j in range(3)] for i in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                if g[i][j] != g[j][i]:
                    raise ParseError(f"{name}: not symmetric at [{i}][{j}] vs [{j}][{i}]")
        mats.append(g)
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label: expected a string")
    return QuadricTriple(*mats, label=label)


def parse_options(doc: Any) -> dict:
    opts = doc.get("options", {}) if isinstance(doc, dict) else {}
    if not isinstance(opts, dict):
        raise ParseError("options: expected an object")
    return opts


def triple_document(T: QuadricTriple) -> dict:
    def mat(m):
        return [[str(x) for x in row] for row in m]

    return {"label": T.label, "Q1": mat(T.M1), "Q2": mat(T.M2), "Q3": mat(T.M3)}


# -- serialisation helpers ------------------------------------------------------

def _num(x, digits: int = 15) -> str:
    return mpmath.nstr(mpmath.mpf(x) if not isinstance(x, Fraction) else mpmath.mpf(x.numerator) / x.denominator,
                       digits)


def root_doc(r: IsolatingInterval, tol: Fraction) -> dict:
    r = r.refine(tol)
    return {
        "exact": str(r.lo) if r.is_exact else None,
        "lo": str(r.lo),
        "hi": str(r.hi),
        "approx": _num(r.refine(min(tol, Fraction(1, 10**20))).midpoint()),
        "multiplicity": r.multiplicity,
    }


def validation_doc(c: ValidationCertificate) -> dict:
    return {
        "ok": c.ok,
        "delta_smooth": c.delta_smooth,
        "cover_etale": c.cover_etale,
        "quartic_nonzero": c.quartic_nonzero,
        "delta_resultant": str(c.delta_resultant),
        "cover_resultant": str(c.cover_resultant),
    }


def profile_doc(P: GammaProfile, tol: Fraction) -> dict:
    def end(i):
        return "oo" if i is None else i

    return {
        "branch_poly": str(P.gamma.branch_poly),
        "degree": P.gamma.branch_poly.degree,
        "infinity_multiplicity": P.infinity_multiplicity,
        "weierstrass_real": [root_doc(r, tol) for r in P.branch_points],
        "real_weierstrass_count": P.real_weierstrass_count,
        "arcs": [
            {"left": end(a.left), "right": end(a.right), "sample": str(a.sample),
             "signature": str(a.signature), "through_infinity": a.through_infinity}
            for a in P.arcs
        ],
        "signature_at_infinity": str(P.signature_at_infinity),
        "jump_rule_violations": [list(v) for v in jump_rule_violations(P)],
        "warnings": list(P.warnings),
    }


def witness_doc(w: Optional[TorsorWitness]) -> Optional[dict]:
    if w is None:
        return None
    c = w.certificate
    return {
        "kind": w.kind,
        "line": [str(x) for x in w.line],
        "points": [[_num(mpmath.re(x.mid), 10) + ("+" if mpmath.im(x.mid) >= 0 else "-") + _num(abs(mpmath.im(x.mid)), 10) + "i"
                    for x in p.coords] for p in w.points],
        "dropped_column": "uvwrs"[c.dropped_column],
        "minor": _num(mpmath.re(c.value.mid), 12),
        "minor_imag": _num(mpmath.im(c.value.mid), 3),
        "minor_radius": _num(c.value.rad, 3),
        "certified": c.certified,
    }


def ijt_doc(v: IJTVerdict) -> dict:
    return {"status": v.status, "reason": v.reason, "lines_tried": v.lines_tried, "witness": witness_doc(v.witness)}


def verdict_doc(v: RationalityVerdict) -> dict:
    return {"status": str(v.status), "rules": [{"rule": r.rule, "status": str(r.status), "certificate": r.certificate}
                                               for r in v.reason]}


def bitangent_doc(a: Analysis) -> dict:
    return {
        "count": a.bitangents.count,
        "signs": sorted(a.bitangents.signs),
        "lines": [[_num(x, 12) for x in b.line] for b in a.bitangents.bitangents],
        "tangency_real": [bool(b.tangency_real) for b in a.bitangents.bitangents],
        "chart_attempts": a.bitangents.attempts,
    }


def isotopy_doc(a: Analysis) -> dict:
    R = a.oval_report
    return {
        "class": str(R.isotopy_class),
        "ovals": [{"depth": o.depth, "q1_sign": s, "sample_point": [str(x) for x in o.sample_point]}
                  for o, s in zip(R.ovals, a.q1.signs)],
        "avoiding_line": [str(x) for x in R.avoiding_line],
    }


@dataclass
class AnalysisReport:
    """Everything ``analyze`` computes; ``to_dict`` is the structured form.

    Timing is kept out of the structured form so that it is byte-stable.
    """

    triple: QuadricTriple
    seed: int
    validation: ValidationCertificate
    analysis: Optional[Analysis] = None
    verdict: Optional[RationalityVerdict] = None
    twist_verdict: Optional[RationalityVerdict] = None
    tolerance: Fraction = Fraction(1, 10**12)
    timing: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        T = self.triple
        out: dict = {
            "input": triple_document(T),
            "seed": self.seed,
            "validation": validation_doc(self.validation),
            "quartic": str(quartic_from_triple(T).f),
        }
        if self.analysis is None:
            out["verdict"] = None
            return out
        a = self.analysis
        out.update({
            "gamma": profile_doc(a.profile, self.tolerance),
            "pi1_surjective": a.surjective,
            "components": a.components,
            "isotopy": isotopy_doc(a),
            "cover_real_points": {"deltatilde": a.q1.deltatilde_has_real_point,
                                  "twisted": a.q1.twisted_cover_has_real_point},
            "u_delta_sign": a.u_delta_sign,
            "bitangents": bitangent_doc(a),
            "ijt": ijt_doc(a.ijt),
            "verdict": verdict_doc(self.verdict),
            "twist_verdict": verdict_doc(self.twist_verdict) if self.twist_verdict else None,
        })
        return out


def analyze(T: QuadricTriple, seed: int = 0, ijt_budget: int = 64, tolerance=Fraction(1, 10**12),
            with_twist: bool = True) -> AnalysisReport:
    import time

    t0 = time.perf_counter()
    cert = validate(T)
    rep = AnalysisReport(T, seed, cert, tolerance=Fraction(tolerance))
    if not cert.ok:
        return rep
    a = analyse(T, seed, ijt_budget)
    rep.analysis = a
    rep.verdict = decide(a)
    if with_twist:
        from .topology import IsotopyClass
        from .verdict import InconsistentCertificates, Status

        rep.twist_verdict = decide(analyse(twist(T), seed, ijt_budget))
        if a.isotopy is not IsotopyClass.Empty and Status.Rational not in (rep.verdict.status, rep.twist_verdict.status):
            raise InconsistentCertificates("real curve nonempty but neither the triple nor its twist is rational")
    rep.timing["total_seconds"] = time.perf_counter() - t0
    return rep
