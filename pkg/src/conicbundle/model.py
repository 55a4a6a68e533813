"""Quadric triples, the discriminant quartic, the curve Gamma and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import TernaryForm, UniPoly, as_fraction, det, ternary_resultant

Gram = tuple[tuple[Fraction, Fraction, Fraction], ...]


class InvalidTriple(ValueError):
    """The triple does not define a smooth quartic with an etale cover."""


def _gram(m: Sequence[Sequence]) -> Gram:
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("Gram matrices must be 3x3")
    g = tuple(tuple(as_fraction(x) for x in row) for row in m)
    for a in range(3):
        for b in range(a + 1, 3):
            if g[a][b] != g[b][a]:
                raise ValueError(f"matrix is not symmetric at ({a}, {b})")
    return g


@dataclass(frozen=True)
class QuadricTriple:
    """Gram matrices of ``Q1, Q2, Q3`` in the variables ``u, v, w``.

    The threefold is ``z^2 = t0^2 Q1 + 2 t0 t1 Q2 + t1^2 Q3`` in
    ``P^1 x P^2``; the conic fibration over ``P^2`` degenerates along
    ``Q1 Q3 - Q2^2 = 0``.
    """

    M1: Gram
    M2: Gram
    M3: Gram
    label: str = field(default="", compare=False)

    def __post_init__(self):
        for name in ("M1", "M2", "M3"):
            object.__setattr__(self, name, _gram(getattr(self, name)))

    @classmethod
    def from_forms(cls, q1: TernaryForm, q2: TernaryForm, q3: TernaryForm, label: str = "") -> "QuadricTriple":
        return cls(q1.gram(), q2.gram(), q3.gram(), label)

    @property
    def matrices(self) -> tuple[Gram, Gram, Gram]:
        return self.M1, self.M2, self.M3

    @property
    def forms(self) -> tuple[TernaryForm, TernaryForm, TernaryForm]:
        return _forms(self.M1, self.M2, self.M3)

    def fiber_matrix(self, t) -> list[list[Fraction]]:
        """``t^2 M1 + 2t M2 + M3``."""
        t = as_fraction(t)
        return [
            [t * t * self.M1[a][b] + 2 * t * self.M2[a][b] + self.M3[a][b] for b in range(3)]
            for a in range(3)
        ]

    def with_label(self, label: str) -> "QuadricTriple":
        return QuadricTriple(self.M1, self.M2, self.M3, label)


@lru_cache(maxsize=256)
def _forms(m1: Gram, m2: Gram, m3: Gram):
    return TernaryForm.from_gram(m1), TernaryForm.from_gram(m2), TernaryForm.from_gram(m3)


@dataclass(frozen=True)
class QuarticCurve:
    f: TernaryForm

    def __post_init__(self):
        if self.f.degree != 4:
            raise ValueError("the discriminant curve is a quartic")

    def __call__(self, u, v, w):
        return self.f(u, v, w)


@dataclass(frozen=True)
class GammaCurve:
    """``y^2 = branch_poly(t)`` with ``branch_poly = -det(t^2 M1 + 2t M2 + M3)``."""

    branch_poly: UniPoly
    degree_drop_at_infinity: bool


@dataclass(frozen=True)
class ValidationCertificate:
    delta_smooth: bool
    delta_resultant: Fraction
    cover_etale: bool
    cover_resultant: Fraction
    quartic_nonzero: bool = True

    @property
    def ok(self) -> bool:
        return self.delta_smooth and self.cover_etale


def quartic_from_triple(T: QuadricTriple) -> QuarticCurve:
    q1, q2, q3 = T.forms
    return QuarticCurve(q1 * q3 - q2 * q2)


def _det3_poly(m: list[list[UniPoly]]) -> UniPoly:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def gamma_curve(T: QuadricTriple) -> GammaCurve:
    entries = [
        [UniPoly([T.M3[a][b], 2 * T.M2[a][b], T.M1[a][b]]) for b in range(3)]
        for a in range(3)
    ]
    branch = -_det3_poly(entries)
    return GammaCurve(branch, det(T.M1) == 0)


def twist(T: QuadricTriple) -> QuadricTriple:
    """The companion triple ``(-Q1, Q2, -Q3)``."""
    neg = lambda m: tuple(tuple(-x for x in row) for row in m)
    label = T.label[:-6] if T.label.endswith("^twist") else (T.label + "^twist" if T.label else "")
    return QuadricTriple(neg(T.M1), T.M2, neg(T.M3), label)


@lru_cache(maxsize=256)
def _smoothness(f: TernaryForm) -> Fraction:
    if f.is_zero():
        return Fraction(0)
    grads = f.gradient()
    if any(g.is_zero() for g in grads):
        return Fraction(0)
    return ternary_resultant(*grads)


def validate(T: QuadricTriple) -> ValidationCertificate:
    """Smoothness of the quartic and etaleness of the double cover.

    Every common zero of the partials lies on the quartic by Euler's
    relation, so one resultant of the three cubic partials decides
    smoothness. The cover degenerates only where ``Q1 = Q2 = Q3 = 0``.
    """
    f = quartic_from_triple(T).f
    res_f = _smoothness(f)
    q = T.forms
    res_q = Fraction(0) if any(x.is_zero() for x in q) else ternary_resultant(*q)
    return ValidationCertificate(res_f != 0, res_f, res_q != 0, res_q, not f.is_zero())


def require_valid(T: QuadricTriple) -> ValidationCertificate:
    cert = validate(T)
    if not cert.ok:
        problems = []
        if not cert.quartic_nonzero:
            problems.append("quartic vanishes identically")
        elif not cert.delta_smooth:
            problems.append("discriminant quartic is singular")
        if not cert.cover_etale:
            problems.append("Q1, Q2, Q3 share a zero")
        raise InvalidTriple("; ".join(problems))
    return cert
