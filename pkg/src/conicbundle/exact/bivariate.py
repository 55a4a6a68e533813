"""Sparse bivariate polynomials over Q, just enough for eliminations."""

from __future__ import annotations

from fractions import Fraction

from .poly import UniPoly, as_fraction


class BiPoly:
    """``sum c[(i, j)] x**i y**j`` stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        for e, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                self.terms[e] = self.terms.get(e, Fraction(0)) + c

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return BiPoly({e: c for e, c in out.items() if c})

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = as_fraction(other)
            return BiPoly({e: x * c for e, x in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return BiPoly({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def at_x(self, x) -> UniPoly:
        """Specialise ``x`` to a rational; result is a polynomial in ``y``."""
        x = as_fraction(x)
        if x.denominator == 1 and all(c.denominator == 1 for c in self.terms.values()):
            xi = x.numerator
            icoeffs = [0] * (self.degree_y() + 1)
            for (i, j), c in self.terms.items():
                icoeffs[j] += c.numerator * xi**i
            return UniPoly(icoeffs)
        coeffs = [Fraction(0)] * (self.degree_y() + 1)
        for (i, j), c in self.terms.items():
            coeffs[j] += c * x**i
        return UniPoly(coeffs)

    def at_x_numeric(self, x, conv=float) -> list:
        """Specialise ``x`` to an inexact number; ``conv`` maps Fractions into
        the same number type. Coefficients in ``y``, low first."""
        coeffs = [conv(Fraction(0))] * (self.degree_y() + 1)
        for (i, j), c in self.terms.items():
            coeffs[j] += conv(c) * x**i
        return coeffs

    def coeff_in_y(self, j: int) -> UniPoly:
        """The coefficient of ``y**j`` as a polynomial in ``x``."""
        coeffs = [Fraction(0)] * (self.degree_x() + 1)
        for (i, jj), c in self.terms.items():
            if jj == j:
                coeffs[i] += c
        return UniPoly(coeffs)
