"""Real topology of the discriminant quartic.

The sweep works in an affine chart whose line at infinity misses the real
curve, so every oval is a closed curve in the plane bounding a disc on the
bounded side. A vertical sweep over the real roots of ``disc_v f`` (made
squarefree by a random choice of the other two coordinates, so that every
critical point is a simple fold) reconstructs the ovals by matching branches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, lcm
from typing import Optional, Sequence

import mpmath

from .bitangents import ZEUTHEN, BitangentSet, real_bitangents
from .exact import (
    IsolatingInterval,
    TernaryForm,
    UniPoly,
    count_real_roots,
    det,
    discriminant,
    interpolate,
    inverse,
    isolate_real_roots,
    poly_gcd,
    sign_at,
    sign_at_root,
)
from .exact.roots import separating_rationals
from .model import QuadricTriple, quartic_from_triple

DPS = 60


class IsotopyClass(str, Enum):
    Empty = "Empty"
    OneOval = "OneOval"
    TwoNested = "TwoNested"
    TwoNonNested = "TwoNonNested"
    ThreeOvals = "ThreeOvals"
    FourOvals = "FourOvals"

    def __str__(self):
        return self.value


class TopologyError(ArithmeticError):
    pass


# -- lines -------------------------------------------------------------------

def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def line_points(L: Sequence[Fraction]) -> tuple[tuple, tuple]:
    """Two independent rational points spanning the line ``L``."""
    basis = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    pts = [_cross(L, e) for e in basis]
    pts = [p for p in pts if any(p)]
    p = pts[0]
    for q in pts[1:]:
        if any(_cross(p, q)):
            return p, q
    raise ValueError("degenerate line")


def restrict_to_line(f: TernaryForm, L: Sequence[Fraction]) -> tuple[UniPoly, Fraction]:
    """``g(s) = f(s p + q)`` and ``f(p)`` for a spanning pair of ``L``."""
    p, q = line_points(L)
    return f.restrict_to_line(p, q), f(*p)


def line_avoids(f: TernaryForm, L: Sequence[Fraction]) -> bool:
    """True iff the real line ``L`` misses the real curve ``f = 0`` (certified)."""
    g, at_p = restrict_to_line(f, L)
    if at_p == 0 or g.is_zero():
        return False
    return count_real_roots(g) == 0


def find_avoiding_line(f: TernaryForm, bitangents: Optional[BitangentSet], rng: random.Random,
                       fallback_tries: int = 400) -> tuple[Fraction, Fraction, Fraction]:
    """A rational line disjoint from the real curve.

    A real bitangent meets the curve only at its tangency points and ``f``
    keeps one sign along it, so a small push of a rational approximation off
    the tangencies usually avoids the curve. Random lines are the fallback.
    """
    if bitangents is not None:
        # complex tangencies first: such a bitangent already misses the real curve
        order = sorted(bitangents.bitangents, key=lambda b: b.tangency_real)
        for b in order:
            for k in range(2, 41, 2):
                L0 = b.rational_line(Fraction(1, 2**k))
                if any(L0) and line_avoids(f, L0):
                    return L0
        for b in order:
            for k in range(3, 40, 3):
                L0 = b.rational_line(Fraction(1, 2 ** (k + 4)))
                eps = Fraction(1, 2**k)
                for _ in range(3):
                    d = [Fraction(rng.randint(-4, 4)) for _ in range(3)]
                    for sgn in (1, -1):
                        L = tuple(x + sgn * eps * y for x, y in zip(L0, d))
                        if any(L) and line_avoids(f, L):
                            return L
    for _ in range(fallback_tries):
        L = tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))
        if any(L) and line_avoids(f, L):
            return L
    raise TopologyError("no avoiding line found; the operative assumption that one exists failed")


# -- sweep -------------------------------------------------------------------

@dataclass(frozen=True)
class Oval:
    nodes: tuple[tuple[int, int], ...]  # (interval index, branch index)
    sample_point: tuple[Fraction, Fraction, Fraction]  # rational point near the oval
    depth: int
    q1_sign: int = 0


@dataclass(frozen=True)
class Sweep:
    transform: tuple  # B with y = B x; the third row is the avoiding line
    f_chart: TernaryForm
    critical: tuple[IsolatingInterval, ...]
    samples: tuple[Fraction, ...]
    fiber_counts: tuple[int, ...]
    fiber_roots: tuple[tuple[IsolatingInterval, ...], ...] = field(repr=False)
    folds: tuple[tuple[int, int, str], ...]  # (critical index, rank, "birth"/"death")


@dataclass(frozen=True)
class OvalReport:
    isotopy_class: IsotopyClass
    ovals: tuple[Oval, ...]
    avoiding_line: tuple[Fraction, Fraction, Fraction]
    sweep: Sweep = field(repr=False)
    seed: int = 0
    attempts: int = 1


def _rational_in(rng: random.Random, lo: int = -6, hi: int = 6) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(3)]


def _disc_in_v(fc: TernaryForm) -> UniPoly:
    cols = fc.in_v_over_u()
    deg = 12
    xs = list(range(-(deg // 2), deg - deg // 2 + 3))
    ys = []
    for x in xs:
        p = UniPoly([c(x) for c in cols])
        ys.append(discriminant(p))
    d = interpolate(xs, ys)
    if d.degree > deg:
        raise TopologyError("discriminant degree exceeded its bound")
    return d


def _fiber(fc_cols: list[UniPoly], x: Fraction) -> UniPoly:
    return UniPoly([c(x) for c in fc_cols])


def _fold_rank(fc_cols: list[UniPoly], root: IsolatingInterval) -> tuple[int, int]:
    """(rank of the double root among distinct real roots, number of distinct real roots)."""
    fine = root.refine(Fraction(1, 2**200))
    with mpmath.workdps(DPS):
        x = mpmath.mpf(fine.midpoint().numerator) / fine.midpoint().denominator
        coeffs = [mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(col.coeffs)], x)
                  if not col.is_zero() else mpmath.mpf(0) for col in fc_cols]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        hi = list(reversed(coeffs))  # highest degree first
        n = len(hi) - 1
        if n < 2:
            raise TopologyError("fold without a real double root")
        dhi = [c * (n - i) for i, c in enumerate(hi[:-1])]
        crit = mpmath.polyroots(dhi, maxsteps=200, extraprec=120) if n > 2 else [-dhi[1] / dhi[0]]
        scale = max(abs(z) for z in crit) or mpmath.mpf(1)
        size = max(abs(c) for c in hi) * scale ** n
        v0 = min((mpmath.re(z) for z in crit if abs(mpmath.im(z)) < mpmath.mpf(10) ** -20 * scale),
                 key=lambda z: abs(mpmath.polyval(hi, z)), default=None)
        if v0 is None or abs(mpmath.polyval(hi, v0)) > mpmath.mpf(10) ** -25 * size:
            raise TopologyError("fold double root not resolved")
        # deflate by (v - v0)^2
        q = hi
        for _ in range(2):
            out = [q[0]]
            for c in q[1:-1]:
                out.append(c + out[-1] * v0)
            q = out
        rest = mpmath.polyroots(q, maxsteps=200, extraprec=120) if len(q) > 1 else []
        scale = max([abs(z) for z in rest] + [scale, abs(v0)])
        tol = mpmath.mpf(10) ** -20 * scale
        real = sorted(mpmath.re(z) for z in rest if abs(mpmath.im(z)) < tol)
        if any(abs(z - v0) < mpmath.mpf(10) ** -10 * scale for z in real) or \
                any(b_ - a_ < mpmath.mpf(10) ** -10 * scale for a_, b_ in zip(real, real[1:])):
            raise TopologyError("fibre roots too close to separate the fold")
        k = sum(1 for z in real if z < v0)
    return k, len(real) + 1


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class _NotGeneric(Exception):
    pass


def _sweep_chart(f: TernaryForm, B: list[list[int]]) -> Sweep:
    if det(B) == 0:
        raise _NotGeneric("singular transform")
    fc = f.substitute(inverse(B))
    if fc.coeff((0, 4, 0)) == 0:
        raise _NotGeneric("vertical direction meets the curve")
    D = _disc_in_v(fc)
    if D.is_zero() or poly_gcd(D, D.derivative()).degree > 0:
        raise _NotGeneric("discriminant not squarefree")
    cols = fc.in_v_over_u()
    crit = isolate_real_roots(D)
    crit, inner = separating_rationals(crit)
    if crit:
        samples = [Fraction(floor(crit[0].lo) - 1)] + inner + [Fraction(ceil(crit[-1].hi) + 1)]
    else:
        samples = [Fraction(0)]
    roots = [tuple(isolate_real_roots(_fiber(cols, s))) for s in samples]
    counts = tuple(len(r) for r in roots)
    if any(r.multiplicity != 1 for rs in roots for r in rs):
        raise TopologyError("sample fibre is not squarefree")
    if counts[0] != 0 or counts[-1] != 0:
        raise TopologyError("curve is not bounded in the sweep chart")
    folds = []
    for j, c in enumerate(crit):
        nl, nr = counts[j], counts[j + 1]
        try:
            rank, distinct = _fold_rank(cols, c)
        except TopologyError as exc:
            raise _NotGeneric(str(exc))
        if abs(nl - nr) != 2 or distinct != max(nl, nr) - 1:
            raise TopologyError("critical fibre inconsistent with a simple fold")
        folds.append((j, rank, "birth" if nr > nl else "death"))
    return Sweep(tuple(tuple(r) for r in B), fc, tuple(crit), tuple(samples), counts, tuple(roots), tuple(folds))


def _sweep(f: TernaryForm, L: Sequence[Fraction], rng: random.Random, max_seeds: int) -> tuple[Sweep, int]:
    den = lcm(*(x.denominator for x in L))
    ell = [int(x * den) for x in L]
    reasons = []
    for attempt in range(1, max_seeds + 1):
        B = [_rational_in(rng), _rational_in(rng), ell]
        try:
            return _sweep_chart(f, B), attempt
        except _NotGeneric as exc:
            reasons.append(str(exc))
    raise TopologyError(f"no generic projection after {max_seeds} seeds: {sorted(set(reasons))}")


def _ovals_from_sweep(sw: Sweep) -> list[list[tuple[int, int]]]:
    dsu = _DSU()
    for i, n in enumerate(sw.fiber_counts):
        for b in range(n):
            dsu.find((i, b))
    for j, rank, kind in sw.folds:
        # interval j is left of critical point j, interval j+1 is right
        if kind == "birth":
            small, big = j, j + 1
        else:
            small, big = j + 1, j
        dsu.union((big, rank), (big, rank + 1))
        for b in range(sw.fiber_counts[small]):
            nb = b if b < rank else b + 2
            dsu.union((small, b), (big, nb))
    groups: dict = {}
    for node in list(dsu.parent):
        groups.setdefault(dsu.find(node), []).append(node)
    return [sorted(g) for g in sorted(groups.values(), key=lambda g: min(g))]


def _classify(ovals: list[list[tuple[int, int]]]) -> tuple[IsotopyClass, list[int]]:
    depth = []
    for a in ovals:
        i, b = a[0]
        d = 0
        for other in ovals:
            if other is a:
                continue
            above = sum(1 for (ii, bb) in other if ii == i and bb > b)
            if above % 2 == 1:
                d += 1
        depth.append(d)
    n = len(ovals)
    if n == 0:
        cls = IsotopyClass.Empty
    elif n == 1:
        cls = IsotopyClass.OneOval
    elif n == 2:
        cls = IsotopyClass.TwoNested if max(depth) > 0 else IsotopyClass.TwoNonNested
    elif n == 3:
        cls = IsotopyClass.ThreeOvals
    elif n == 4:
        cls = IsotopyClass.FourOvals
    else:
        raise TopologyError(f"{n} ovals is impossible for a smooth quartic")
    if n > 2 and max(depth) > 0:
        raise TopologyError("nesting is only possible for two ovals")
    return cls, depth


def _node_point(sw: Sweep, node: tuple[int, int]) -> tuple[Fraction, Fraction, Fraction]:
    i, b = node
    v = sw.fiber_roots[i][b].approx(Fraction(1, 2**40))
    y = [sw.samples[i], v, Fraction(1)]
    binv = inverse(sw.transform)
    return tuple(sum(binv[r][k] * y[k] for k in range(3)) for r in range(3))


def _compute(f: TernaryForm, seed: int, max_seeds: int) -> OvalReport:
    rng = random.Random(seed)
    bts = real_bitangents(f, seed)
    L = find_avoiding_line(f, bts, rng)
    sw, attempts = _sweep(f, L, rng, max_seeds)
    groups = _ovals_from_sweep(sw)
    cls, depth = _classify(groups)
    ovals = tuple(Oval(tuple(g), _node_point(sw, g[0]), d) for g, d in zip(groups, depth))
    report = OvalReport(cls, ovals, tuple(L), sw, seed, attempts)
    if bts.count != ZEUTHEN[cls.value]:
        raise TopologyError(
            f"isotopy class {cls} expects {ZEUTHEN[cls.value]} real bitangents, found {bts.count}"
        )
    return report


@lru_cache(maxsize=64)
def _cached(f: TernaryForm, seed: int, max_seeds: int) -> OvalReport:
    return _compute(f, seed, max_seeds)


def isotopy_class(f, seed: int = 0, max_seeds: int = 32) -> OvalReport:
    """Isotopy class of the smooth real quartic, with per-oval data.

    Cross-checked against the real bitangent count; a mismatch is a hard
    error.
    """
    form = getattr(f, "f", f)
    return _cached(form, seed, max_seeds)


# -- signs on ovals ------------------------------------------------------------

@dataclass(frozen=True)
class Q1Signs:
    signs: tuple[int, ...]
    deltatilde_has_real_point: bool
    twisted_cover_has_real_point: bool


def q1_sign_per_oval(T: QuadricTriple, R: OvalReport) -> Q1Signs:
    """Certified sign of ``Q1`` on each oval.

    ``Q1`` vanishes at only finitely many points of a smooth ``Delta``, so
    every oval carries a constant sign away from them; it is read off at the
    sweep nodes, skipping nodes where ``Q1`` happens to vanish, and all
    nonzero readings on an oval must agree.
    """
    q1 = T.forms[0]
    sw = R.sweep
    q1c = q1.substitute(inverse(sw.transform))
    cols = q1c.in_v_over_u()
    signs = []
    for oval in R.ovals:
        seen = set()
        for i, b in oval.nodes:
            g = UniPoly([c(sw.samples[i]) for c in cols])
            s, _ = sign_at_root(g, sw.fiber_roots[i][b])
            if s:
                seen.add(s)
        if len(seen) != 1:
            raise TopologyError("Q1 sign on an oval not certified" if not seen else "Q1 changes sign on an oval")
        signs.append(seen.pop())
    return Q1Signs(tuple(signs), any(s > 0 for s in signs), any(s < 0 for s in signs))


@dataclass(frozen=True)
class RegionSide:
    """``U_Delta`` lies in ``(u_delta_sign * f > 0)``."""

    u_delta_sign: int


def u_delta_side(f, bitangents: Optional[BitangentSet] = None) -> RegionSide:
    form = getattr(f, "f", f)
    if bitangents is None:
        bitangents = real_bitangents(form)
    signs = bitangents.signs
    if len(signs) != 1:
        raise TopologyError("real bitangents disagree on the sign of f")
    s = signs.pop()
    return RegionSide(s)


def u_delta_side_without_bitangents(f: TernaryForm, report: OvalReport) -> RegionSide:
    """Empty real curve: the complement is connected, any point decides."""
    if report.ovals:
        raise ValueError("only meaningful when the real curve is empty")
    return RegionSide(sign_at(f.restrict_to_line((1, 0, 0), (0, 0, 1)), 0) or 1)


def analyse_triple(T: QuadricTriple, seed: int = 0):
    f = quartic_from_triple(T)
    report = isotopy_class(f, seed)
    return report, q1_sign_per_oval(T, report)
