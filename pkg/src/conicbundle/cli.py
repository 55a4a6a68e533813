"""Command-line interface: ``python3 -m conicbundle <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import corpus
from .bitangents import BitangentError, real_bitangents
from .ijt import IJTContradiction, IJTError, ijt_verdict
from .model import InvalidTriple, QuadricTriple, quartic_from_triple, twist, validate
from .plot import CHARTS, PlotConfig, region_plot
from .report import (
    ParseError,
    analyze,
    ijt_doc,
    parse_input,
    parse_options,
    profile_doc,
    triple_document,
    validation_doc,
)
from .signatures import pi1_surjective, signature_profile, y_real_components
from .sweep import sweep
from .topology import TopologyError, isotopy_class, q1_sign_per_oval, u_delta_side
from .verdict import InconsistentCertificates

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INCONSISTENT = 0, 2, 3, 4


class _ParseFailure(Exception):
    pass


def load(source: str) -> tuple[QuadricTriple, dict]:
    """A file path, ``-`` for standard input, or the name of a built-in triple."""
    if source == "-":
        text = sys.stdin.read()
    elif os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    elif source in corpus.names():
        return corpus.get(source), {}
    else:
        raise ParseError(f"{source}: no such file or built-in triple")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        return parse_input(doc), parse_options(doc)
    except ParseError as e:
        raise ParseError(f"{source}: {e}") from None
    except ValueError as e:
        raise ParseError(f"{source}: {e}") from None


def _tolerance(text: Optional[str]) -> Fraction:
    if text is None:
        return Fraction(1, 10**12)
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--tolerance: malformed rational {text!r}") from None
    if "." in text or "e" in text.lower() or t <= 0:
        raise ParseError("--tolerance: expected a positive rational 'p/q'")
    return t


def _emit(args, data: dict, text_lines: Sequence[str]) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _seed(args, opts) -> int:
    return args.seed if args.seed is not None else int(opts.get("seed", 0))


def _budget(args, opts) -> int:
    return args.ijt_budget if args.ijt_budget is not None else int(opts.get("ijt_budget", 64))


def _require_valid(T: QuadricTriple):
    cert = validate(T)
    if not cert.ok:
        raise InvalidTriple(("singular quartic" if not cert.delta_smooth else "cover not etale") + f" for {T.label or 'input'}")
    return cert


# -- commands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    T, _ = load(args.input)
    cert = validate(T)
    d = validation_doc(cert)
    _emit(args, d, [f"{k}: {v}" for k, v in d.items()])
    return EXIT_OK if cert.ok else EXIT_INVALID


def cmd_analyze(args) -> int:
    T, opts = load(args.input)
    rep = analyze(T, _seed(args, opts), _budget(args, opts), _tolerance(args.tolerance))
    d = rep.to_dict()
    lines = [f"label: {T.label}", f"valid: {rep.validation.ok}", f"quartic: {d['quartic']}"]
    if rep.analysis is not None:
        g = d["gamma"]
        lines += [
            f"Gamma: y^2 = {g['branch_poly']}",
            f"real Weierstrass points: {g['real_weierstrass_count']}"
            + (f" ({', '.join(r['exact'] or r['approx'] for r in g['weierstrass_real'])})" if g["weierstrass_real"] else ""),
            "arc signatures: " + " ".join(a["signature"] for a in g["arcs"]),
            f"pi1 surjective: {d['pi1_surjective']}",
            f"components of Y(R): {d['components']}",
            f"isotopy class: {d['isotopy']['class']}",
            f"Q1 signs on ovals: {[o['q1_sign'] for o in d['isotopy']['ovals']]}",
            f"U_Delta in ({'+' if d['u_delta_sign'] > 0 else '-'}f > 0)",
            f"real bitangents: {d['bitangents']['count']}",
            f"IJT: {d['ijt']['status']} ({d['ijt']['reason']})",
            f"verdict: {d['verdict']['status']} [{', '.join(r['rule'] for r in d['verdict']['rules'])}]",
            f"twist verdict: {d['twist_verdict']['status']}",
        ]
        if args.timing:
            lines.append(f"time: {rep.timing['total_seconds']:.2f}s")
    else:
        lines.append("verdict suppressed: triple failed validation")
    if args.timing and args.format == "structured":
        d["timing"] = rep.timing
    _emit(args, d, lines)
    return EXIT_OK if rep.validation.ok else EXIT_INVALID


def cmd_gamma(args) -> int:
    T, _ = load(args.input)
    _require_valid(T)
    P = signature_profile(T)
    d = profile_doc(P, _tolerance(args.tolerance))
    roots = [r["exact"] or r["approx"] for r in d["weierstrass_real"]]
    if P.infinity_multiplicity:
        roots.append("oo" + (f" (x{P.infinity_multiplicity})" if P.infinity_multiplicity > 1 else ""))
    out = {k: d[k] for k in ("branch_poly", "degree", "infinity_multiplicity", "weierstrass_real", "real_weierstrass_count")}
    _emit(args, out, [f"y^2 = {d['branch_poly']}", f"real Weierstrass points ({d['real_weierstrass_count']}): {', '.join(roots)}"])
    return EXIT_OK


def cmd_signatures(args) -> int:
    T, _ = load(args.input)
    _require_valid(T)
    P = signature_profile(T)
    d = profile_doc(P, _tolerance(args.tolerance))
    d["pi1_surjective"] = pi1_surjective(P)
    d["components"] = y_real_components(P)
    lines = [f"arc {a['left']}..{a['right']} sample {a['sample']}: {a['signature']}" for a in d["arcs"]]
    lines += [f"at infinity: {d['signature_at_infinity']}", f"jump rule violations: {d['jump_rule_violations']}",
              f"pi1 surjective: {d['pi1_surjective']}", f"components of Y(R): {d['components']}"]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_isotopy(args) -> int:
    T, opts = load(args.input)
    _require_valid(T)
    R = isotopy_class(quartic_from_triple(T), _seed(args, opts))
    q = q1_sign_per_oval(T, R)
    d = {"class": str(R.isotopy_class),
         "ovals": [{"depth": o.depth, "q1_sign": s, "sample_point": [str(x) for x in o.sample_point]}
                   for o, s in zip(R.ovals, q.signs)],
         "deltatilde_real": q.deltatilde_has_real_point, "twisted_real": q.twisted_cover_has_real_point}
    lines = [f"class: {d['class']}"] + [f"oval {i}: depth {o['depth']}, Q1 sign {o['q1_sign']:+d}" for i, o in enumerate(d["ovals"])]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_bitangents(args) -> int:
    T, opts = load(args.input)
    _require_valid(T)
    f = quartic_from_triple(T)
    bs = real_bitangents(f, _seed(args, opts))
    d = {"count": bs.count, "u_delta_sign": u_delta_side(f, bs).u_delta_sign,
         "lines": [{"line": [f"{x:.12g}" for x in b.line_float()], "sign": b.sign, "tangency_real": bool(b.tangency_real)}
                   for b in bs.bitangents]}
    lines = [f"real bitangents: {bs.count}"] + [
        f"  {' '.join(l['line'])}  f sign {l['sign']:+d}{'  (real tangency)' if l['tangency_real'] else ''}" for l in d["lines"]]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_ijt(args) -> int:
    T, opts = load(args.input)
    _require_valid(T)
    seed = _seed(args, opts)
    f = quartic_from_triple(T)
    bs = real_bitangents(f, seed)
    v = ijt_verdict(T, u_delta_side(f, bs).u_delta_sign, pi1_surjective(signature_profile(T)),
                    _budget(args, opts), seed, bs)
    d = ijt_doc(v)
    lines = [f"IJT: {v.status}", f"reason: {v.reason}", f"lines tried: {v.lines_tried}"]
    if d["witness"]:
        w = d["witness"]
        lines.append(f"witness over {w['kind']} line {w['line']}: minor {w['minor']} (column {w['dropped_column']} dropped)")
    _emit(args, d, lines)
    return EXIT_OK


def cmd_twist(args) -> int:
    T, _ = load(args.input)
    d = triple_document(twist(T))
    sys.stdout.write(json.dumps(d, indent=2) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    A, _ = load(args.input)
    B, _ = load(args.other)
    lo, hi = (Fraction(x) for x in args.interval.split(","))
    r = sweep(A, B, args.steps, (lo, hi), args.seed or 0)
    tol = _tolerance(args.tolerance)
    d = {
        "interval": [str(lo), str(hi)],
        "identically_singular": r.identically_singular,
        "resultant_degree": r.resultant.degree if not r.resultant.is_zero() else None,
        "singular": [{"lo": str(s.refine(tol).lo), "hi": str(s.refine(tol).hi), "approx": f"{float(s.refine(tol).midpoint()):.12g}"}
                     for s in r.singular],
        "segments": [{"lo": f"{float(s.lo):.12g}", "hi": f"{float(s.hi):.12g}", "samples": [str(x) for x in s.samples],
                      "class": str(s.isotopy_class)} for s in r.segments],
    }
    if r.identically_singular:
        lines = ["every member of the family is singular"]
    else:
        lines = [f"singular parameters: {', '.join(s['approx'] for s in d['singular']) or 'none'}"]
        lines += [f"  ({s['lo']}, {s['hi']}): {s['class']}" for s in d["segments"]]
    _emit(args, d, lines)
    return EXIT_OK


def cmd_plot(args) -> int:
    T, opts = load(args.input)
    _require_valid(T)
    box = tuple(float(Fraction(x)) for x in args.box.split(","))
    cfg = PlotConfig(grid=args.grid, chart=args.chart, box=box, seed=_seed(args, opts))
    svg = region_plot(T, args.out, cfg)
    if not args.out:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.name:
        if args.name not in corpus.names():
            raise ParseError(f"{args.name}: not a built-in triple")
        sys.stdout.write(json.dumps(triple_document(corpus.get(args.name)), indent=2) + "\n")
        return EXIT_OK
    d = [{"name": n, "note": corpus.note(n)} for n in corpus.names()]
    _emit(args, {"triples": d}, [f"{e['name']:20s} {e['note']}" for e in d])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--ijt-budget", type=int, default=None)
    common.add_argument("--tolerance", default=None, help="width of reported root enclosures, e.g. 1/1000000")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the output")

    p = argparse.ArgumentParser(prog="conicbundle", description="Real conic bundle threefolds from quadric triples.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in [
        ("validate", cmd_validate, "smoothness and etale checks"),
        ("analyze", cmd_analyze, "full report with rationality verdicts"),
        ("gamma", cmd_gamma, "branch polynomial and real Weierstrass points"),
        ("signatures", cmd_signatures, "fiber signatures on each arc"),
        ("isotopy", cmd_isotopy, "isotopy class of the real curve"),
        ("bitangents", cmd_bitangents, "real bitangents"),
        ("ijt", cmd_ijt, "intermediate Jacobian torsor search"),
        ("twist", cmd_twist, "the twisted triple as an input document"),
    ]:
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("input", help="JSON file, '-' for stdin, or a built-in name")
        s.set_defaults(func=fn)
    s = sub.add_parser("sweep", parents=[common], help="singular members of the pencil between two triples")
    s.add_argument("input")
    s.add_argument("other")
    s.add_argument("--steps", type=int, default=1, help="classified samples per segment")
    s.add_argument("--interval", default="0,1")
    s.set_defaults(func=cmd_sweep)
    s = sub.add_parser("plot", parents=[common], help="SVG region plot")
    s.add_argument("input")
    s.add_argument("--out", default=None)
    s.add_argument("--grid", type=int, default=256)
    s.add_argument("--chart", choices=sorted(CHARTS), default="w")
    s.add_argument("--box", default="-3,3,-3,3", help="xmin,xmax,ymin,ymax")
    s.set_defaults(func=cmd_plot)
    s = sub.add_parser("corpus", parents=[common], help="list built-in triples, or print one")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidTriple as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (InconsistentCertificates, IJTContradiction, TopologyError, BitangentError, IJTError) as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
