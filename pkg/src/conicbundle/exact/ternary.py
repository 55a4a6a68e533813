"""Homogeneous polynomials in ``u, v, w`` with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .poly import UniPoly, as_fraction

VARS = ("u", "v", "w")


def monomials(degree: int) -> list[tuple[int, int, int]]:
    """Exponent triples of the given degree, in lexicographic (u > v > w) order."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return out


class TernaryForm:
    """Immutable ternary form of fixed degree.

    Coefficients are kept as a sorted tuple of ``((i, j, k), c)`` pairs with
    ``c != 0``, which makes forms hashable and comparable.
    """

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, degree: int, coeffs: Mapping[tuple[int, int, int], object] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[tuple[int, int, int], Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"exponent {e} does not have degree {degree}")
            acc[e] = acc.get(e, Fraction(0)) + as_fraction(c)
        self.degree = degree
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def zero(cls, degree: int) -> "TernaryForm":
        return cls(degree)

    @classmethod
    def linear(cls, a, b, c) -> "TernaryForm":
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def from_gram(cls, m: Sequence[Sequence]) -> "TernaryForm":
        """The quadratic form ``x^T m x`` of a symmetric 3x3 matrix."""
        coeffs: dict = {}
        for a in range(3):
            for b in range(3):
                e = [0, 0, 0]
                e[a] += 1
                e[b] += 1
                e = tuple(e)
                coeffs[e] = coeffs.get(e, Fraction(0)) + as_fraction(m[a][b])
        return cls(2, coeffs)

    def gram(self) -> list[list[Fraction]]:
        if self.degree != 2:
            raise ValueError("only quadratic forms have a Gram matrix")
        d = self.as_dict()
        m = [[Fraction(0)] * 3 for _ in range(3)]
        for a in range(3):
            e = [0, 0, 0]
            e[a] = 2
            m[a][a] = d.get(tuple(e), Fraction(0))
        for a in range(3):
            for b in range(a + 1, 3):
                e = [0, 0, 0]
                e[a] = e[b] = 1
                m[a][b] = m[b][a] = d.get(tuple(e), Fraction(0)) / 2
        return m

    def as_dict(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self.terms)

    def coeff(self, e: tuple[int, int, int]) -> Fraction:
        return self.as_dict().get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, self.terms))
        return self._hash

    def __repr__(self) -> str:
        return f"TernaryForm({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        order = {e: n for n, e in enumerate(monomials(self.degree))}
        out = ""
        for e, c in sorted(self.terms, key=lambda t: order[t[0]]):
            mono = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip(VARS, e) if p
            )
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree and not other.is_zero() and not self.is_zero():
            raise ValueError("cannot add forms of different degree")
        deg = self.degree if not self.is_zero() else other.degree
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, Fraction(0)) + c
        return TernaryForm(deg, d)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(self.degree, {e: -c for e, c in self.terms})

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other) -> "TernaryForm":
        if not isinstance(other, TernaryForm):
            c = as_fraction(other)
            return TernaryForm(self.degree, {e: x * c for e, x in self.terms})
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return TernaryForm(self.degree + other.degree, d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TernaryForm":
        out = TernaryForm(0, {(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def partial(self, var: int) -> "TernaryForm":
        d: dict = {}
        for e, c in self.terms:
            if e[var] == 0:
                continue
            e2 = list(e)
            e2[var] -= 1
            d[tuple(e2)] = c * e[var]
        return TernaryForm(self.degree - 1, d)

    def gradient(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return self.partial(0), self.partial(1), self.partial(2)

    # -- evaluation and substitution -----------------------------------------
    def __call__(self, u, v, w):
        total = 0
        for (i, j, k), c in self.terms:
            total += c * u**i * v**j * w**k
        return total

    def evaluate_float(self, u, v, w):
        """Evaluate with float/complex/mpmath arithmetic (coefficients converted)."""
        total = 0
        for (i, j, k), c in self.terms:
            total += (c.numerator / c.denominator) * u**i * v**j * w**k
        return total

    def substitute(self, matrix: Sequence[Sequence]) -> "TernaryForm":
        """``g(y) = self(matrix @ y)``: old coordinates are ``x = matrix y``."""
        rows = [TernaryForm.linear(*matrix[r]) for r in range(3)]
        powers = [[TernaryForm(0, {(0, 0, 0): 1})] for _ in range(3)]
        for r in range(3):
            for _ in range(self.degree):
                powers[r].append(powers[r][-1] * rows[r])
        out = TernaryForm(self.degree)
        for (i, j, k), c in self.terms:
            out = out + powers[0][i] * powers[1][j] * powers[2][k] * c
        return out

    def restrict_to_line(self, p: Sequence, q: Sequence) -> UniPoly:
        """``g(s) = self(s*p + q)`` as a polynomial in ``s``.

        The point ``p`` itself (``s = infinity``) is seen through the
        leading coefficient: ``self(p)``.
        """
        lin = [UniPoly([as_fraction(q[a]), as_fraction(p[a])]) for a in range(3)]
        pw = []
        for a in range(3):
            row = [UniPoly([1])]
            for _ in range(self.degree):
                row.append(row[-1] * lin[a])
            pw.append(row)
        out = UniPoly()
        for (i, j, k), c in self.terms:
            out = out + pw[0][i] * pw[1][j] * pw[2][k] * c
        return out

    def binary_coeffs_on_line(self, p: Sequence, q: Sequence) -> list[Fraction]:
        """Coefficients of ``self(s*p + q)`` padded to length ``degree + 1``."""
        g = self.restrict_to_line(p, q)
        return [g[i] for i in range(self.degree + 1)]

    def dehomogenize(self) -> dict[tuple[int, int], Fraction]:
        """Affine polynomial ``self(u, v, 1)`` as ``{(i, j): c}``."""
        return {(e[0], e[1]): c for e, c in self.terms}

    def in_v_over_u(self) -> list[UniPoly]:
        """``self(u, v, 1) = sum_j coeff[j](u) * v**j``."""
        out = [[Fraction(0)] * (self.degree + 1) for _ in range(self.degree + 1)]
        for (i, j, _k), c in self.terms:
            out[j][i] += c
        return [UniPoly(row) for row in out]

    def integer_scale(self) -> tuple["TernaryForm", Fraction]:
        """A primitive integer multiple ``s * self`` and the factor ``s > 0``."""
        from functools import reduce
        from math import gcd, lcm

        if not self.terms:
            return self, Fraction(1)
        den = reduce(lcm, (c.denominator for _, c in self.terms), 1)
        g = reduce(gcd, (int(c * den) for _, c in self.terms), 0)
        s = Fraction(den, g)
        return self * s, s


def random_form(rng, degree: int, lo: int = -3, hi: int = 3) -> TernaryForm:
    return TernaryForm(degree, {e: rng.randint(lo, hi) for e in monomials(degree)})

