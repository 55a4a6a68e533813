"""Dense univariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and rational strings ("p/q") to Fraction.

    Floats are refused: everything in this package is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _trim(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Immutable polynomial ``sum c[i] t**i`` with Fraction coefficients.

    The coefficient tuple is stored low degree first and carries no
    trailing zeros, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([as_fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "UniPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> "UniPoly":
        return cls([0] * n + [c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    # -- basic protocol ----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_fraction(other)
            if c == 0:
                return UniPoly._raw(())
            return UniPoly._raw(tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        if len(rem) - 1 < db:
            return UniPoly._raw(()), self
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lcb
            quo[k] = q
            if q:
                for j in range(db + 1):
                    rem[k + j] -= q * bc[j]
        return UniPoly._raw(_trim(quo)), UniPoly._raw(_trim(rem[:db]))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # -- calculus and evaluation -------------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly._raw(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reflect(self) -> "UniPoly":
        """``p(-t)``."""
        return UniPoly._raw(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def shift_scale(self, a, b) -> "UniPoly":
        """``p(a*t + b)``."""
        return self.compose(UniPoly([b, a]))

    # -- integer views -------------------------------------------------------
    def integer_coeffs(self) -> list[int]:
        """Primitive integer multiple with a positive scaling factor.

        The sign of the polynomial is preserved, which is what the Sturm
        machinery needs.
        """
        if not self.coeffs:
            return []
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        return [c // g for c in ints]

    @classmethod
    def from_ints(cls, ints: Sequence[int]) -> "UniPoly":
        return cls._raw(_trim([Fraction(c) for c in ints]))


def int_primitive(ints: list[int]) -> list[int]:
    """Strip trailing zeros and divide out the content (sign kept)."""
    ints = list(ints)
    while ints and ints[-1] == 0:
        ints.pop()
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def int_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of the remainder of ``a`` by ``b``, scaled by a positive integer."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    sb = 1 if lb > 0 else -1
    alb = abs(lb)
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        la = a[-1] * sb
        a = [alb * c for c in a]
        for j in range(db + 1):
            a[k + j] -= la * b[j]
        a.pop()
        a = int_primitive(a)
    return a


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (the zero polynomial if both inputs vanish).

    Runs a primitive pseudo-remainder sequence on integer images, which
    avoids the coefficient swell of Euclid over Fractions.
    """
    x, y = int_primitive(a.integer_coeffs()), int_primitive(b.integer_coeffs())
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, int_prem(x, y)
    return UniPoly.from_ints(x).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = lc * prod(a_i ** i)`` with the ``a_i`` monic,
    squarefree and pairwise coprime. Returns only the nonconstant factors."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    if a0.degree <= 0:
        return [(p, 1)] if p.degree > 0 else []
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic() if g.degree > 0 else p.monic()


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Newton divided-difference interpolation through ``(xs[i], ys[i])``."""
    xs = [as_fraction(x) for x in xs]
    coef = [as_fraction(y) for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * UniPoly([-xs[i], 1]) + coef[i]
    return p
