"""Singular members of a pencil of quadric triples.

For ``M_i(l) = (1 - l) M_i^A + l M_i^B`` the quartic ``f_l`` is quadratic in
``l``; the resultant of its three partials is a polynomial of degree at most
54 in ``l`` vanishing exactly at the singular members. It is recovered by
interpolating exact Macaulay resultants at integer parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import IsolatingInterval, UniPoly, as_fraction, interpolate, isolate_real_roots, ternary_resultant
from .exact.roots import simplest_rational
from .model import QuadricTriple, quartic_from_triple
from .topology import IsotopyClass, isotopy_class

RESULTANT_DEGREE = 54


def family_member(A: QuadricTriple, B: QuadricTriple, lam) -> QuadricTriple:
    lam = as_fraction(lam)
    mats = []
    for ma, mb in zip((A.M1, A.M2, A.M3), (B.M1, B.M2, B.M3)):
        mats.append([[(1 - lam) * ma[i][j] + lam * mb[i][j] for j in range(3)] for i in range(3)])
    return QuadricTriple(*mats, label=f"{A.label}->{B.label}@{lam}")


def singular_resultant(A: QuadricTriple, B: QuadricTriple) -> UniPoly:
    """``R(l)`` with ``R(l) = 0`` iff ``f_l`` is singular (or identically zero)."""
    xs = list(range(-(RESULTANT_DEGREE // 2), RESULTANT_DEGREE - RESULTANT_DEGREE // 2 + 1))
    ys = []
    for x in xs:
        f = quartic_from_triple(family_member(A, B, x)).f
        ys.append(ternary_resultant(*f.gradient()))
    return interpolate(xs, ys)


@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    samples: tuple[Fraction, ...]
    isotopy_class: IsotopyClass


@dataclass(frozen=True)
class FamilySweepResult:
    interval: tuple[Fraction, Fraction]
    resultant: UniPoly
    singular: tuple[IsolatingInterval, ...]
    segments: tuple[Segment, ...]
    identically_singular: bool = False

    def singular_float(self) -> list[float]:
        return [float(r.midpoint()) for r in self.singular]


def _segment_samples(lo: Fraction, hi: Fraction, steps: int) -> list[Fraction]:
    width = hi - lo
    out = []
    for k in range(steps):
        a = lo + width * Fraction(4 * k + 1, 4 * steps)
        b = lo + width * Fraction(4 * k + 3, 4 * steps)
        out.append(simplest_rational(a, b))
    return out


def sweep(A: QuadricTriple, B: QuadricTriple, steps: int = 1, interval=(0, 1), seed: int = 0) -> FamilySweepResult:
    """Singular parameters in ``interval`` and the isotopy class on each segment.

    ``steps`` samples are classified per segment; they must agree.
    """
    lo, hi = (as_fraction(x) for x in interval)
    res = singular_resultant(A, B)
    if res.is_zero():
        return FamilySweepResult((lo, hi), res, (), (), True)
    roots = [r for r in isolate_real_roots(res) if r.hi >= lo and r.lo <= hi]
    # refine so that roots are strictly inside or exactly on an endpoint
    fine = []
    for r in roots:
        while not r.is_exact and (r.lo < lo < r.hi or r.lo < hi < r.hi or r.width > (hi - lo) / 1024):
            r = r.refine(r.width / 2)
        if r.hi < lo or r.lo > hi:
            continue
        fine.append(r)
    # consecutive roots are disjoint, so refining each below a common width separates them
    if len(fine) > 1:
        gap = min(b.lo - a.hi for a, b in zip(fine, fine[1:]))
        while gap <= 0 or any(r.width * 4 > gap for r in fine if not r.is_exact):
            fine = [r.refine(r.width / 2) if not r.is_exact else r for r in fine]
            gap = min(b.lo - a.hi for a, b in zip(fine, fine[1:]))
    cuts = [(lo, lo)] + [(r.lo, r.hi) for r in fine] + [(hi, hi)]
    segments = []
    for (_, a), (b, _) in zip(cuts, cuts[1:]):
        if b <= a:
            continue
        samples = _segment_samples(a, b, steps)
        classes = {isotopy_class(quartic_from_triple(family_member(A, B, s)), seed).isotopy_class for s in samples}
        if len(classes) != 1:
            raise ArithmeticError(f"isotopy class not constant on ({float(a)}, {float(b)})")
        segments.append(Segment(a, b, tuple(samples), classes.pop()))
    return FamilySweepResult((lo, hi), res, tuple(fine), tuple(segments))
