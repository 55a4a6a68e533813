"""Signatures of the quadric-surface fibers over the real projective line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, ceil
from typing import Optional, Union

from .exact import IsolatingInterval, as_fraction, charpoly, isolate_real_roots
from .exact.roots import separating_rationals
from .model import GammaCurve, QuadricTriple, gamma_curve


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "oo"


INFINITY = _Infinity()
Param = Union[Fraction, int, str, _Infinity]


@dataclass(frozen=True, order=True)
class Signature:
    pos: int
    neg: int

    def __post_init__(self):
        if self.pos < 0 or self.neg < 0 or self.pos + self.neg > 4:
            raise ValueError(f"impossible signature ({self.pos}, {self.neg})")

    @property
    def definite(self) -> bool:
        return self.pos + self.neg == 4 and (self.pos == 0 or self.neg == 0)

    @property
    def indefinite(self) -> bool:
        return self.pos > 0 and self.neg > 0

    def as_tuple(self) -> tuple[int, int]:
        return (self.pos, self.neg)

    def __str__(self):
        return f"({self.pos},{self.neg})"


def _variations(coeffs) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_signature(m) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a real symmetric matrix.

    All roots of the characteristic polynomial are real, so Descartes' rule
    of signs is exact on ``p(x)`` and ``p(-x)`` once the zero roots are
    stripped.
    """
    p = charpoly(m)
    zeros = 0
    while p[zeros] == 0:
        zeros += 1
    coeffs = p.coeffs[zeros:]
    pos = _variations(coeffs)
    neg = _variations([c if i % 2 == 0 else -c for i, c in enumerate(coeffs)])
    return pos, neg, zeros


def _block(m3) -> list[list[Fraction]]:
    out = [list(row) + [Fraction(0)] for row in m3]
    out.append([Fraction(0)] * 3 + [Fraction(-1)])
    return out


def fiber_matrix4(T: QuadricTriple, t: Param) -> list[list[Fraction]]:
    """``diag(t^2 M1 + 2t M2 + M3, -1)``, or ``diag(M1, -1)`` at infinity."""
    if t is INFINITY:
        return _block(T.M1)
    return _block(T.fiber_matrix(as_fraction(t)))


def fiber_signature(T: QuadricTriple, t: Param) -> Signature:
    pos, neg, _ = descartes_signature(fiber_matrix4(T, t))
    return Signature(pos, neg)


@dataclass(frozen=True)
class Arc:
    """Open arc of ``P^1(R)`` between consecutive real branch points.

    ``left``/``right`` index ``branch_points`` (``None`` is infinity when
    infinity is itself a branch point). ``through_infinity`` marks the arc
    that wraps around ``t = oo`` when infinity is not a branch point.
    """

    left: Optional[int]
    right: Optional[int]
    sample: Fraction
    signature: Signature
    through_infinity: bool = False


@dataclass(frozen=True)
class GammaProfile:
    gamma: GammaCurve
    branch_points: tuple[IsolatingInterval, ...]
    infinity_multiplicity: int
    arcs: tuple[Arc, ...]
    signature_at_infinity: Signature
    warnings: tuple[str, ...] = field(default=())

    @property
    def interval_signatures(self) -> list[Signature]:
        return [a.signature for a in self.arcs]

    @property
    def real_weierstrass_count(self) -> int:
        """Real branch points of ``Gamma`` counted with multiplicity, infinity included."""
        return sum(b.multiplicity for b in self.branch_points) + self.infinity_multiplicity

    @property
    def squarefree(self) -> bool:
        return all(b.multiplicity == 1 for b in self.branch_points) and self.infinity_multiplicity <= 1


def _infinity_multiplicity(g: GammaCurve) -> int:
    p = g.branch_poly
    return 6 - p.degree if not p.is_zero() else 6


def signature_profile(T: QuadricTriple) -> GammaProfile:
    g = gamma_curve(T)
    p = g.branch_poly
    warnings: list[str] = []
    if p.is_zero():
        raise ValueError("branch polynomial vanishes identically")
    roots = isolate_real_roots(p)
    inf_mult = _infinity_multiplicity(g)
    roots, inner = separating_rationals(roots)
    arcs: list[Arc] = []
    sig_inf = fiber_signature(T, INFINITY)
    if not roots:
        sample = Fraction(0)
        arcs.append(Arc(None, None, sample, fiber_signature(T, sample), inf_mult == 0))
    else:
        left_sample = Fraction(floor(roots[0].lo) - 1)
        right_sample = Fraction(ceil(roots[-1].hi) + 1)
        if inf_mult == 0:
            arcs.append(Arc(len(roots) - 1, 0, left_sample, fiber_signature(T, left_sample), True))
        else:
            arcs.append(Arc(None, 0, left_sample, fiber_signature(T, left_sample)))
        for i, x in enumerate(inner):
            arcs.append(Arc(i, i + 1, x, fiber_signature(T, x)))
        if inf_mult:
            arcs.append(Arc(len(roots) - 1, None, right_sample, fiber_signature(T, right_sample)))
    if not all(r.multiplicity == 1 for r in roots) or inf_mult > 1:
        warnings.append("branch polynomial has multiple real roots; jump rule not checked there")
    return GammaProfile(g, tuple(roots), inf_mult, tuple(arcs), sig_inf, tuple(warnings))


def jump_rule_violations(P: GammaProfile) -> list[tuple[int, int]]:
    """Adjacent arc pairs across a simple branch point whose ``pos`` differ by != 1."""
    arcs = P.arcs
    n = len(arcs)
    out = []
    if n < 2:
        return out
    for i in range(n):
        a, b = arcs[i], arcs[(i + 1) % n]
        # the branch point shared by a (right end) and b (left end)
        if a.right is None:
            mult = P.infinity_multiplicity
        else:
            mult = P.branch_points[a.right].multiplicity
        if mult != 1:
            continue
        if abs(a.signature.pos - b.signature.pos) != 1 or abs(a.signature.neg - b.signature.neg) != 1:
            out.append((i, (i + 1) % n))
    return out


def pi1_surjective(P: GammaProfile) -> bool:
    """Every real fiber has a real point iff no arc is definite."""
    return not any(a.signature.definite for a in P.arcs)


def y_real_components(P: GammaProfile) -> int:
    """Connected components of the closure of the indefinite locus on ``P^1(R)``."""
    flags = [a.signature.indefinite for a in P.arcs]
    if all(flags):
        return 1
    if not any(flags):
        return 0
    n = len(flags)
    start = flags.index(False)
    count = 0
    for k in range(1, n + 1):
        i = (start + k) % n
        if flags[i] and not flags[i - 1]:
            count += 1
    return count


def branch_points_float(P: GammaProfile) -> list[float]:
    return [float(b) for b in P.branch_points]
