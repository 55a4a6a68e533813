"""Built-in example triples.

Each entry is ``name -> (Q1, Q2, Q3, note)`` with the quadrics written as
polynomial strings in ``u, v, w``. ``rationalDeltaempty`` is the twist of
``pointless``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import TernaryForm
from .model import QuadricTriple, twist

_RAW: dict[str, tuple[str, str, str, str]] = {
    "pointless": (
        "-u^2 - v^2 - w^2", "-u^2 - v^2 + w^2", "-2u^2 - 9v^2 - 3w^2",
        "Delta(R) empty, Y(R) empty",
    ),
    "0ovalIJT": (
        "u^2 + v^2 + w^2", "u^2 - v^2", "-u^2 - v^2 - 9w^2",
        "Delta(R) empty, Y(R) nonempty, IJT obstruction",
    ),
    "1ovalIJT": (
        "-u^2 - v^2 + w^2", "u^2 - uv + 3v^2", "-u^2 + v^2 + 2vw - 10w^2",
        "one oval, IJT obstruction",
    ),
    "irr2nonnested": (
        "-u^2 - v^2 + w^2", "u^2 + 3v^2 + uw - vw", "-u^2 + v^2 + 2vw - 10w^2",
        "two non-nested ovals, Y(R) connected, IJT obstruction",
    ),
    "irr2nested": (
        "u^2 + v^2 - w^2", "u^2 + v^2", "-24u^2 - 15v^2 + w^2",
        "two nested ovals, Y(R) has two components",
    ),
    "irr3oval": (
        "-2u^2 - 2uv + 4uw - 2v^2 + 6vw - 5w^2",
        "10uv - 20uw + 5v^2 - 20vw + 20w^2",
        "-48u^2 - 48uv + 96uw - 20v^2 + 88vw - 92w^2",
        "three ovals, Y(R) has three components",
    ),
    "rational1oval": (
        "-u^2 + uv - w^2", "3u^2 + uv - v^2 + w^2", "-u^2 - 2uv - 2w^2",
        "one oval, rational",
    ),
    "rational2nested_a": (
        "-4u^2 - 2uv - 2v^2 - 10uw + 4vw - 4w^2",
        "u^2 - 4uv - 3v^2 - 6uw + 2vw + 2w^2",
        "-u^2 - 6uv + 8uw - 6vw - 3w^2",
        "two nested ovals, rational, Deltatilde(R) empty",
    ),
    "rational2nested_b": (
        "-u^2 - 6v^2 + 6w^2", "-u^2 + uv + 3v^2 + w^2", "-2u^2 - 6v^2 + 6w^2",
        "two nested ovals, rational, Deltatilde(R) nonempty",
    ),
    "rational2nonnested": (
        "-u^2 + uv + v^2 + vw", "-2uv + vw + w^2", "u^2 - v^2 - 2uw",
        "two non-nested ovals, rational",
    ),
    "rational3ovals": (
        "-3u^2 + 10uv - 2v^2 - 4uw + 4vw + w^2",
        "5u^2 + 8uv + 5v^2 + 4uw - 6vw - 2w^2",
        "-2u^2 - 8uv - 2v^2 + 2uw + 2vw - 3w^2",
        "three ovals, rational",
    ),
    "rational4ovals": (
        "u^2 + 2v^2 - 2w^2", "3u^2 - w^2", "-2u^2 - v^2 + w^2",
        "four ovals, rational",
    ),
    "FJSVV": (
        "-u^2 - v^2 + w^2", "u^2 - 3v^2 - w^2", "-10u^2 - 10v^2 - w^2",
        "one oval, rationality open",
    ),
}

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*((?:[uvw](?:\^\d+)?\s*\*?\s*)*)")


def parse_quadric(text: str) -> TernaryForm:
    """Parse a sum of monomials such as ``"-2u^2 + 3uv - w^2"``."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    coeffs: dict = {}
    pos = 0
    degree = None
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {src[pos:]!r}")
        sign, num, mono = m.groups()
        if not num and not mono:
            raise ValueError(f"cannot parse polynomial at {src[pos:]!r}")
        c = Fraction(num) if num else Fraction(1)
        if sign == "-":
            c = -c
        exps = [0, 0, 0]
        for var, power in re.findall(r"([uvw])(?:\^(\d+))?", mono or ""):
            exps["uvw".index(var)] += int(power or 1)
        e = tuple(exps)
        if degree is None:
            degree = sum(e)
        elif sum(e) != degree:
            raise ValueError("polynomial is not homogeneous")
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
        pos = m.end()
    return TernaryForm(degree, coeffs)


def _build(name: str) -> QuadricTriple:
    q1, q2, q3, _ = _RAW[name]
    return QuadricTriple.from_forms(parse_quadric(q1), parse_quadric(q2), parse_quadric(q3), name)


def names() -> list[str]:
    return list(_RAW) + ["rationalDeltaempty"]


def get(name: str) -> QuadricTriple:
    if name == "rationalDeltaempty":
        return twist(_build("pointless")).with_label(name)
    if name not in _RAW:
        raise KeyError(f"unknown corpus entry {name!r}")
    return _build(name)


def note(name: str) -> str:
    if name == "rationalDeltaempty":
        return "twist of pointless; every fiber has signature (3,1), rational"
    return _RAW[name][3]


def all_triples() -> dict[str, QuadricTriple]:
    return {n: get(n) for n in names()}
