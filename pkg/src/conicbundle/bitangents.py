"""Real bitangents of a smooth plane quartic.

After a seeded random change of coordinates every bitangent has the
form ``v = m*u + c*w``. Restricting ``f`` to that line gives a binary quartic
``a4 u^4 + a3 u^3 w + ... + a0 w^4`` whose coefficients are polynomials in
``(m, c)``; it is ``a4`` times a square exactly when

    C1 = 8 a4^2 a1 - 4 a2 a3 a4 + a3^3 = 0,
    C2 = 64 a4^3 a0 - (4 a2 a4 - a3^2)^2 = 0.

Eliminating ``c`` leaves a univariate ``B(m)`` which, for a generic chart,
has degree 28 and is squarefree. Its real roots are then in bijection with
the real bitangents, so the real count is certified by Sturm's theorem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import mpmath

from .exact import (
    IsolatingInterval,
    TernaryForm,
    UniPoly,
    count_real_roots,
    det,
    formal_resultant,
    interpolate,
    inverse,
    isolate_real_roots,
    poly_gcd,
    sign_at_root,
)
from .exact.bivariate import BiPoly
from .exact.linalg import transpose, matvec

ZEUTHEN = {"Empty": 4, "OneOval": 4, "TwoNested": 4, "TwoNonNested": 8, "ThreeOvals": 16, "FourOvals": 28}
ADMISSIBLE_COUNTS = (4, 8, 16, 28)
DPS = 60


class BitangentError(ArithmeticError):
    pass


def random_chart(rng: random.Random, spread: int = 3) -> list[list[int]]:
    """Random invertible integer matrix with entries in ``[-spread, spread]``."""
    while True:
        a = [[rng.randint(-spread, spread) for _ in range(3)] for _ in range(3)]
        if det(a) != 0:
            return a


def _mp(c: Fraction):
    return mpmath.mpf(c.numerator) / c.denominator


def line_binary_coeffs(f: TernaryForm) -> list[BiPoly]:
    """``a_i(m, c)``: coefficient of ``u^i w^(4-i)`` in ``f(u, m u + c w, w)``.

    The returned BiPoly uses ``x = m`` and ``y = c``.
    """
    a = [BiPoly() for _ in range(f.degree + 1)]
    for (i, j, _k), coef in f.terms:
        for l in range(j + 1):
            a[i + l] = a[i + l] + BiPoly({(l, j - l): coef * comb(j, l)})
    return a


@dataclass(frozen=True)
class BitangentSystem:
    transform: tuple[tuple[int, ...], ...]
    a: tuple[BiPoly, ...]
    C1: BiPoly
    C2: BiPoly
    resultant: UniPoly  # in m, before removing factors of a4
    eliminant: UniPoly  # squarefree part coprime to a4, degree 28 when generic

    @property
    def a4(self) -> UniPoly:
        return self.a[4].coeff_in_y(0)


def bitangent_system(f: TernaryForm, transform: Sequence[Sequence[int]]) -> BitangentSystem:
    """Perfect-square conditions and their resultant in ``c`` for the chart
    given by ``transform`` (new coordinates ``y`` with ``x = transform @ y``)."""
    g, _ = f.substitute(transform).integer_scale()
    a = line_binary_coeffs(g)
    a0, a1, a2, a3, a4 = a
    c1 = a4 * a4 * a1 * 8 - a2 * a3 * a4 * 4 + a3 * a3 * a3
    inner = a2 * a4 * 4 - a3 * a3
    c2 = a4 * a4 * a4 * a0 * 64 - inner * inner
    bound = 3 * c2.degree_x() + 4 * c1.degree_x()
    xs = list(range(-(bound // 2), bound - bound // 2 + 1))
    ys = []
    for x in xs:
        p, q = c1.at_x(x), c2.at_x(x)
        ys.append(formal_resultant([p[i] for i in range(4)], [q[i] for i in range(5)]))
    res = interpolate(xs, ys)
    elim = res
    a4m = a4.coeff_in_y(0)
    if not elim.is_zero() and a4m.degree > 0:
        g_ = poly_gcd(elim, a4m)
        while g_.degree > 0:
            elim = elim.exact_div(g_)
            g_ = poly_gcd(elim, g_)
    return BitangentSystem(tuple(tuple(r) for r in transform), tuple(a), c1, c2, res, elim)


@dataclass(frozen=True)
class Bitangent:
    """A real bitangent ``L . x = 0`` with its certified data.

    ``line`` holds high-precision coefficients (max-abs normalised);
    ``f`` restricted to the line, parametrised as ``u*P + w*R``, is a
    positive multiple of ``scale * (u^2 + alpha u w + beta w^2)^2``; ``sign`` is the exact sign of
    ``scale`` (the sign of ``f`` at every non-tangency point on the line).
    """

    line: tuple
    m_root: IsolatingInterval = field(repr=False)
    sign: int
    scale: object = field(repr=False)
    alpha: object = field(repr=False)
    beta: object = field(repr=False)
    P: tuple = field(repr=False)
    R: tuple = field(repr=False)
    tangency_points: tuple = field(repr=False)
    residual: float = 0.0

    @property
    def tangency_real(self) -> bool:
        return mpmath.mpf(self.alpha) ** 2 - 4 * mpmath.mpf(self.beta) >= 0

    def line_float(self) -> tuple[float, float, float]:
        return tuple(float(x) for x in self.line)

    def rational_line(self, width=Fraction(1, 2**40)) -> tuple[Fraction, Fraction, Fraction]:
        """A rational line within ``width`` of this one (coefficientwise)."""
        return tuple(Fraction(mpmath.nstr(x, 30, strip_zeros=False)).limit_denominator(int(1 / width)) for x in self.line)


@dataclass(frozen=True)
class BitangentSet:
    bitangents: tuple[Bitangent, ...]
    system: BitangentSystem = field(repr=False)
    seed: int = 0
    attempts: int = 1

    @property
    def count(self) -> int:
        return len(self.bitangents)

    @property
    def signs(self) -> set[int]:
        return {b.sign for b in self.bitangents}


def _generic(system: BitangentSystem) -> bool:
    e = system.eliminant
    if e.degree != 28:
        return False
    return poly_gcd(e, e.derivative()).degree == 0


def _polished_root(p: UniPoly, root: IsolatingInterval):
    """The root to working precision: Newton from a 2^-64 enclosure, kept
    only if it stays inside; otherwise plain bisection."""
    fine = root.refine(Fraction(1, 2**64))
    if fine.is_exact:
        return _mp(fine.lo)
    hi_first = [_mp(c) for c in reversed(p.coeffs)]
    d_first = [c * (len(hi_first) - 1 - i) for i, c in enumerate(hi_first[:-1])]
    m = _mp(fine.midpoint())
    for _ in range(8):
        m -= mpmath.polyval(hi_first, m) / mpmath.polyval(d_first, m)
    if _mp(fine.lo) <= m <= _mp(fine.hi):
        return m
    return _mp(root.refine(Fraction(1, 2**200)).midpoint())


def _certify_root(system: BitangentSystem, root: IsolatingInterval) -> Bitangent:
    a4m = system.a4
    sign, root = sign_at_root(a4m, root)
    if sign == 0:
        raise BitangentError("a4 vanishes at an eliminant root")
    with mpmath.workdps(DPS):
        m = _polished_root(system.eliminant, root)
        c1 = system.C1.at_x_numeric(m, _mp)
        c2 = system.C2.at_x_numeric(m, _mp)
        c1 = [x for x in c1]
        while len(c1) > 1 and c1[-1] == 0:
            c1.pop()
        cands = mpmath.polyroots(list(reversed(c1)), maxsteps=200, extraprec=200) if len(c1) > 1 else []
        if not isinstance(cands, list):
            cands = [cands]
        best = None
        for z in cands:
            val = abs(mpmath.polyval(list(reversed(c2)), z))
            if best is None or val < best[0]:
                best = (val, z)
        if best is None:
            raise BitangentError("no candidate intercept")
        c = mpmath.re(best[1])
        if abs(mpmath.im(best[1])) > mpmath.mpf(10) ** (-20) * (1 + abs(c)):
            raise BitangentError("intercept is not real")
        coeffs = [a.at_x_numeric(m, _mp) for a in system.a]
        an = [mpmath.polyval(list(reversed(co)), c) for co in coeffs]
        a0, a1, a2, a3, a4 = an
        alpha = a3 / (2 * a4)
        beta = (4 * a2 * a4 - a3**2) / (8 * a4**2)
        r1 = a1 - a4 * 2 * alpha * beta
        r0 = a0 - a4 * beta**2
        size = max(abs(x) for x in an)
        residual = max(abs(r1), abs(r0)) / size
        if residual > mpmath.mpf(10) ** -20:
            raise BitangentError(f"perfect-square residual {mpmath.nstr(residual, 5)} too large")
        A = [[_mp(Fraction(x)) for x in row] for row in system.transform]
        Ainv_t = transpose(inverse(system.transform))
        Lp = [-m, mpmath.mpf(1), -c]
        L = [sum(_mp(Ainv_t[i][k]) * Lp[k] for k in range(3)) for i in range(3)]
        top = max(L, key=abs)
        L = tuple(x / top for x in L)
        P = tuple(matvec(A, [mpmath.mpf(1), m, mpmath.mpf(0)]))
        R = tuple(matvec(A, [mpmath.mpf(0), c, mpmath.mpf(1)]))
        disc = alpha**2 - 4 * beta
        sq = mpmath.sqrt(mpmath.mpc(disc))
        us = [(-alpha + sq) / 2, (-alpha - sq) / 2]
        pts = tuple(tuple(u * P[i] + R[i] for i in range(3)) for u in us)
    return Bitangent(L, root, sign, a4, alpha, beta, P, R, pts, float(residual))


def _compute(f: TernaryForm, seed: int, max_attempts: int) -> BitangentSet:
    rng = random.Random(seed)
    last = None
    for attempt in range(1, max_attempts + 1):
        A = random_chart(rng)
        g = f.substitute(A)
        if g.coeff((4, 0, 0)) == 0 or g.coeff((0, 4, 0)) == 0:
            continue
        system = bitangent_system(f, A)
        if not _generic(system):
            last = system.eliminant.degree
            continue
        roots = isolate_real_roots(system.eliminant, snap=False)
        out = tuple(_certify_root(system, r) for r in roots)
        if len(out) not in ADMISSIBLE_COUNTS:
            raise BitangentError(f"{len(out)} real bitangents is not an admissible count")
        return BitangentSet(out, system, seed, attempt)
    raise BitangentError(f"no generic chart after {max_attempts} attempts (last eliminant degree {last})")


@lru_cache(maxsize=64)
def _cached(f: TernaryForm, seed: int, max_attempts: int) -> BitangentSet:
    return _compute(f, seed, max_attempts)


def real_bitangents(f, seed: int = 0, max_attempts: int = 32) -> BitangentSet:
    """All real bitangents of the smooth quartic ``f`` (a TernaryForm or QuarticCurve)."""
    form = getattr(f, "f", f)
    return _cached(form, seed, max_attempts)


def real_bitangent_count(f, seed: int = 0) -> int:
    """Exact number of real bitangents (Sturm count on the eliminant)."""
    bs = real_bitangents(f, seed)
    return count_real_roots(bs.system.eliminant)


def restrict_float(f: TernaryForm, b: Bitangent, s) -> object:
    """``f(s*P + R)`` along the bitangent's parametrisation."""
    with mpmath.workdps(DPS):
        pt = [s * b.P[i] + b.R[i] for i in range(3)]
        return f.evaluate_float(*pt)
