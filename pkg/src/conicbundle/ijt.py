"""Search for real points on the intermediate Jacobian torsor.

A witness is a real line ``l`` together with four points of the cover
curve ``Q1 - r^2 = Q2 - r s = Q3 - s^2 = 0`` in ``P^4`` lying over
``Delta . l``, forming a set stable under complex conjugation and spanning a
3-plane. The span is certified by a 4x4 minor evaluated in ball arithmetic.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .balls import Ball, ball_det
from .bitangents import Bitangent, real_bitangents
from .exact import TernaryForm, as_fraction
from .model import QuadricTriple, quartic_from_triple

DPS = 50
TANGENCY_RADIUS = mpmath.mpf(10) ** -30


class IJTError(ArithmeticError):
    pass


class IJTContradiction(IJTError):
    """A witness was found although the obstruction hypothesis holds."""


# -- certified complex roots -----------------------------------------------------

def aberth_roots(coeffs: Sequence, tol=None, maxiter: int = 500) -> list:
    """All complex roots of ``sum coeffs[i] x^i`` by Aberth-Ehrlich iteration."""
    c = [mpmath.mpc(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    n = len(c) - 1
    if n < 1:
        return []
    lead = c[-1]
    c = [x / lead for x in c]
    tol = tol or mpmath.mpf(2) ** (-mpmath.mp.prec + 8)
    bound = 1 + max(abs(x) for x in c[:-1])
    z = [bound * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) * mpmath.mpf("0.7") for k in range(n)]
    hi_first = list(reversed(c))
    d_first = list(reversed([i * c[i] for i in range(1, n + 1)]))
    for _ in range(maxiter):
        worst = 0
        for k in range(n):
            p = mpmath.polyval(hi_first, z[k])
            dp = mpmath.polyval(d_first, z[k])
            if p == 0:
                continue
            w = p / dp if dp != 0 else mpmath.mpc(1e-10)
            s = sum(1 / (z[k] - z[j]) for j in range(n) if j != k)
            step = w / (1 - w * s)
            z[k] -= step
            worst = max(worst, abs(step) / max(1, abs(z[k])))
        if worst < tol:
            break
    # Newton polish
    for k in range(n):
        for _ in range(3):
            dp = mpmath.polyval(d_first, z[k])
            if dp == 0:
                break
            z[k] -= mpmath.polyval(hi_first, z[k]) / dp
    return z


@dataclass(frozen=True)
class RootEnclosure:
    center: mpmath.mpc
    radius: mpmath.mpf
    partner: int  # index of the conjugate root, itself when real

    @property
    def is_real(self) -> bool:
        return mpmath.im(self.center) == 0

    def ball(self) -> Ball:
        return Ball(self.center, self.radius)


def certified_roots(coeffs: Sequence) -> list[RootEnclosure]:
    """Roots of a real polynomial with disjoint inclusion discs and conjugate pairing.

    A disc of radius ``n |p(z)/p'(z)|`` about any ``z`` contains a root; if
    the ``n`` discs are pairwise disjoint each holds exactly one.
    """
    c = [mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    n = len(c) - 1
    zs = aberth_roots(c)
    hi_first = list(reversed(c))
    d_first = list(reversed([i * c[i] for i in range(1, n + 1)]))
    radii = []
    for z in zs:
        dp = mpmath.polyval(d_first, z)
        if dp == 0:
            raise IJTError("root cluster: derivative vanishes")
        radii.append(n * abs(mpmath.polyval(hi_first, z) / dp) + abs(z) * mpmath.mpf(2) ** (-mpmath.mp.prec + 4))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                raise IJTError("roots not separated within the refinement budget")
    out_c = list(zs)
    partner = [None] * n
    for i in range(n):
        if abs(mpmath.im(zs[i])) <= radii[i]:
            partner[i] = i
            out_c[i] = mpmath.mpc(mpmath.re(zs[i]), 0)
    for i in range(n):
        if partner[i] is not None:
            continue
        cz = mpmath.conj(zs[i])
        j = min((j for j in range(n) if j != i), key=lambda j: abs(zs[j] - cz))
        if abs(zs[j] - cz) > radii[i] + radii[j]:
            raise IJTError("conjugate pairing failed")
        partner[i], partner[j] = j, i
    return [RootEnclosure(out_c[i], radii[i], partner[i]) for i in range(n)]


# -- lines and points -------------------------------------------------------------

def line_parametrization(L: Sequence) -> tuple[tuple, tuple]:
    """Points ``p, q`` with ``s*p + q`` sweeping the line ``L`` (minus ``p``).

    The largest index with a nonzero coefficient is the dependent coordinate;
    of the other two, the first is the parameter and the last is set to 1.
    """
    L = [as_fraction(x) for x in L]
    j = max(i for i in range(3) if L[i] != 0)
    free = [i for i in range(3) if i != j]
    a, b = free
    p = [Fraction(0)] * 3
    q = [Fraction(0)] * 3
    p[a] = Fraction(1)
    p[j] = -L[a] / L[j]
    q[b] = Fraction(1)
    q[j] = -L[b] / L[j]
    return tuple(p), tuple(q)


@dataclass(frozen=True)
class LinePoint:
    coords: tuple  # three Balls
    multiplicity: int
    partner: int


def _mpf(c: Fraction):
    return mpmath.mpf(c.numerator) / c.denominator


def eval_form_ball(form: TernaryForm, pt: Sequence[Ball]) -> Ball:
    total = Ball.exact(0)
    for (i, j, k), c in form.terms:
        total = total + (pt[0] ** i) * (pt[1] ** j) * (pt[2] ** k) * _mpf(c)
    return total


def line_delta_intersection(f: TernaryForm, L: Sequence) -> list[LinePoint]:
    """The four points of ``Delta`` on the rational line ``L`` with certified discs."""
    with mpmath.workdps(DPS):
        p, q = line_parametrization(L)
        g = f.restrict_to_line(p, q)
        if g.degree != 4:
            raise IJTError("line meets the curve at the parametrization's base point")
        roots = certified_roots(list(g.coeffs))
        pts = []
        for r in roots:
            s = r.ball()
            coords = tuple(s * _mpf(p[i]) + _mpf(q[i]) for i in range(3))
            pts.append(LinePoint(coords, 1, r.partner))
        return pts


@dataclass(frozen=True)
class CoverPoint:
    """``(u, v, w, r, s)`` with ``r^2 = Q1, r s = Q2, s^2 = Q3`` at ``(u, v, w)``."""

    coords: tuple  # five Balls

    def as_complex(self) -> tuple:
        return tuple(complex(c.mid) for c in self.coords)

    def negate_fiber(self) -> "CoverPoint":
        u, v, w, r, s = self.coords
        return CoverPoint((u, v, w, -r, -s))

    def conj(self) -> "CoverPoint":
        return CoverPoint(tuple(c.conj() for c in self.coords))

    def matches(self, other: "CoverPoint") -> bool:
        return all(abs(a.mid - b.mid) <= a.rad + b.rad for a, b in zip(self.coords, other.coords))

    def residuals(self, T: QuadricTriple) -> tuple:
        q1, q2, q3 = (eval_form_ball(q, self.coords[:3]).mid for q in T.forms)
        r, s = self.coords[3].mid, self.coords[4].mid
        scale = max(1, abs(q1), abs(q2), abs(q3))
        return tuple(abs(x) / scale for x in (q1 - r * r, q2 - r * s, q3 - s * s))


def lift_to_cover(T: QuadricTriple, point: Sequence[Ball]) -> tuple[CoverPoint, CoverPoint]:
    """The two cover points over ``point``; ``s`` is the principal root of ``Q3``."""
    with mpmath.workdps(DPS):
        q1, q2, q3 = (eval_form_ball(q, point) for q in T.forms)
        if not q3.contains_zero():
            s = q3.sqrt()
            r = q2 / s
        elif not q1.contains_zero():
            r = q1.sqrt()
            s = q2 / r
        else:
            raise IJTError("Q1 and Q3 both vanish at the point; cover not etale there")
        a = CoverPoint(tuple(point) + (r, s))
        return a, a.negate_fiber()


def _tangent_row(T: QuadricTriple, lift: CoverPoint, direction: Sequence[Ball]) -> tuple:
    """Derivative of the lift along ``direction`` (a tangent of Delta at the point)."""
    pt = lift.coords[:3]
    r, s = lift.coords[3], lift.coords[4]
    grads = []
    for q in T.forms:
        gq = [eval_form_ball(g, pt) if not g.is_zero() else Ball.exact(0) for g in q.gradient()]
        grads.append(sum((gq[i] * direction[i] for i in range(3)), Ball.exact(0)))
    d1, d2, d3 = grads
    if not r.contains_zero():
        dr = d1 / (r * 2)
        ds = (d2 - dr * s) / r
    else:
        ds = d3 / (s * 2)
        dr = (d2 - r * ds) / s
    return tuple(direction) + (dr, ds)


# -- witnesses ----------------------------------------------------------------------

@dataclass(frozen=True)
class RankCertificate:
    dropped_column: int
    value: Ball

    @property
    def certified(self) -> bool:
        return not self.value.contains_zero()


@dataclass(frozen=True)
class TorsorWitness:
    line: tuple
    points: tuple[CoverPoint, ...]
    rows: tuple = field(repr=False)
    certificate: RankCertificate
    kind: str = "transversal"  # or "bitangent"

    @property
    def determinant(self) -> complex:
        return complex(self.certificate.value.mid)

    def conjugation_closed(self) -> bool:
        # conjugation rounds to the working precision, so use the search precision
        with mpmath.workdps(DPS):
            pts = list(self.points)
            conj = [p.conj() for p in pts]
            return all(any(c.matches(p) for p in pts) for c in conj)


def _best_minor(rows: list[tuple]) -> RankCertificate:
    """The largest 4x4 minor, chosen in floating point and then evaluated in
    ball arithmetic. Numerically rank-deficient matrices are returned with
    an infinite radius (never certified) without the ball evaluation."""
    approx = np.array([[complex(x.mid) for x in row] for row in rows])
    dets = [abs(np.linalg.det(np.delete(approx, drop, axis=1))) for drop in range(5)]
    drop = int(np.argmax(dets))
    norms = np.prod([max(np.linalg.norm(r), 1e-300) for r in approx])
    if dets[drop] < 1e-12 * norms:
        return RankCertificate(drop, Ball(mpmath.mpc(dets[drop]), mpmath.inf))
    sub = [[row[c] for c in range(5) if c != drop] for row in rows]
    return RankCertificate(drop, ball_det(sub))


def _row_order(points: list[LinePoint]) -> list[int]:
    def key(i):
        z = points[i].coords
        # sort by the parameter-free view: real part, |imag| and positive imaginary first
        lead = next((c.mid for c in z if abs(c.mid) > 0), mpmath.mpc(0))
        zz = z[0].mid if abs(z[0].mid) > 0 else lead
        return (float(mpmath.re(zz)), float(abs(mpmath.im(zz))), -float(mpmath.im(zz)))
    return sorted(range(len(points)), key=key)


def _selections(lifts: list[tuple[CoverPoint, CoverPoint]], partners: list[int]) -> list[tuple[CoverPoint, ...]]:
    """Lift choices whose set is stable under complex conjugation."""
    out = []
    n = len(lifts)
    for signs in itertools.product([+1, -1], repeat=n):
        chosen = [lifts[k][0] if signs[k] > 0 else lifts[k][1] for k in range(n)]
        ok = True
        for k in range(n):
            if not chosen[k].conj().matches(chosen[partners[k]]):
                ok = False
                break
        if ok:
            out.append(tuple(chosen))
    return out


def search_line(T: QuadricTriple, L: Sequence) -> Optional[TorsorWitness]:
    """Witness over the rational line ``L`` or ``None``."""
    f = quartic_from_triple(T).f
    with mpmath.workdps(DPS):
        try:
            pts = line_delta_intersection(f, L)
        except IJTError:
            return None
        order = _row_order(pts)
        pts = [pts[i] for i in order]
        inv = {old: new for new, old in enumerate(order)}
        partners = [inv[p.partner] for p in pts]
        try:
            lifts = [lift_to_cover(T, p.coords) for p in pts]
        except (IJTError, ArithmeticError, ZeroDivisionError):
            return None
        for chosen in _selections(lifts, partners):
            rows = [p.coords for p in chosen]
            cert = _best_minor(rows)
            if cert.certified:
                return TorsorWitness(tuple(as_fraction(x) for x in L), chosen, tuple(rows), cert)
    return None


def search_bitangent(T: QuadricTriple, b: Bitangent) -> Optional[TorsorWitness]:
    """Witness over a real bitangent: rows are the two tangency lifts and
    their tangent directions (the span of the non-reduced divisor ``2p + 2p'``)."""
    with mpmath.workdps(DPS):
        p, p2 = b.tangency_points
        pts = [tuple(Ball(mpmath.mpc(x), TANGENCY_RADIUS * (1 + abs(x))) for x in pt) for pt in (p, p2)]
        if b.tangency_real:
            pts = [tuple(Ball(mpmath.mpc(mpmath.re(c.mid), 0), c.rad) for c in pt) for pt in pts]
            partners = [0, 1]
        else:
            partners = [1, 0]
        direction = tuple(Ball(mpmath.mpc(x), TANGENCY_RADIUS * (1 + abs(x))) for x in b.P)
        try:
            lifts = [lift_to_cover(T, pt) for pt in pts]
        except (IJTError, ArithmeticError, ZeroDivisionError):
            return None
        for chosen in _selections(lifts, partners):
            try:
                rows = []
                for c in chosen:
                    rows.append(c.coords)
                    rows.append(_tangent_row(T, c, direction))
            except (ArithmeticError, ZeroDivisionError):
                continue
            cert = _best_minor(rows)
            if cert.certified:
                line = tuple(mpmath.nstr(x, 25) for x in b.line)
                return TorsorWitness(line, chosen, tuple(rows), cert, "bitangent")
    return None


def _search(T: QuadricTriple, lines: Sequence) -> tuple[Optional[TorsorWitness], int]:
    for n, L in enumerate(lines, 1):
        w = search_bitangent(T, L) if isinstance(L, Bitangent) else search_line(T, L)
        if w is not None:
            return w, n
    return None, len(lines)


def torsor_point_search(T: QuadricTriple, lines: Sequence) -> Optional[TorsorWitness]:
    """First witness over the given lines (rational triples or ``Bitangent`` objects)."""
    return _search(T, lines)[0]


COORDINATE_LINES = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def candidate_lines(T: QuadricTriple, budget: int = 64, seed: int = 0, bitangents=None) -> list:
    """Coordinate lines, then all real bitangents, then seeded random rational lines."""
    if bitangents is None:
        bitangents = real_bitangents(quartic_from_triple(T).f, seed)
    out: list = [tuple(Fraction(x) for x in L) for L in COORDINATE_LINES]
    out.extend(bitangents.bitangents)
    rng = random.Random(seed * 7919 + 17)
    seen = set()
    while len(seen) < budget:
        L = tuple(Fraction(rng.randint(-5, 5)) for _ in range(3))
        if not any(L) or L in seen:
            continue
        seen.add(L)
        out.append(L)
    return out


@dataclass(frozen=True)
class IJTVerdict:
    status: str  # "Vanishes", "Obstructed" or "Unknown"
    witness: Optional[TorsorWitness] = None
    reason: str = ""
    lines_tried: int = 0


def ijt_verdict(T: QuadricTriple, u_delta_sign: int, pi1_surjective: bool, budget: int = 64,
                seed: int = 0, bitangents=None, search: bool = True) -> IJTVerdict:
    """Combine the obstruction hypothesis with the witness search.

    When the negative-outside hypothesis holds (``U_Delta`` in ``f < 0``)
    and the quadric bundle has no section, the obstruction is present; the
    search still runs and a witness there is an internal contradiction.
    ``search=False`` skips the search and reports only the hypothesis.
    """
    obstructed = u_delta_sign < 0 and not pi1_surjective
    reason = "U_Delta lies in (f<0) and pi1 has no real section"
    if not search:
        if obstructed:
            return IJTVerdict("Obstructed", None, reason + " (search skipped)", 0)
        return IJTVerdict("Unknown", None, "search skipped", 0)
    lines = candidate_lines(T, budget, seed, bitangents)
    witness, tried = _search(T, lines)
    if obstructed:
        if witness is not None:
            raise IJTContradiction("witness found although the obstruction hypothesis holds")
        return IJTVerdict("Obstructed", None, reason, tried)
    if witness is not None:
        return IJTVerdict("Vanishes", witness, f"witness over a {witness.kind} line", tried)
    return IJTVerdict("Unknown", None, "search budget exhausted", tried)
