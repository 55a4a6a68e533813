"""Complex ball arithmetic (midpoint, radius) on top of mpmath.

Every operation returns a ball guaranteed to contain the exact result for
all inputs in the argument balls, up to an added rounding allowance of a few
ulps at the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import mpmath


def _ulp(x) -> mpmath.mpf:
    return abs(x) * mpmath.mpf(2) ** (-mpmath.mp.prec + 2)


@dataclass(frozen=True)
class Ball:
    mid: mpmath.mpc
    rad: mpmath.mpf

    @classmethod
    def exact(cls, z) -> "Ball":
        return cls(mpmath.mpc(z), mpmath.mpf(0))

    @classmethod
    def of(cls, z, rad=0) -> "Ball":
        return cls(mpmath.mpc(z), mpmath.mpf(rad))

    def _coerce(self, other) -> "Ball":
        return other if isinstance(other, Ball) else Ball.exact(other)

    def __add__(self, other) -> "Ball":
        o = self._coerce(other)
        m = self.mid + o.mid
        return Ball(m, self.rad + o.rad + _ulp(m))

    __radd__ = __add__

    def __neg__(self) -> "Ball":
        return Ball(-self.mid, self.rad)

    def __sub__(self, other) -> "Ball":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Ball":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Ball":
        o = self._coerce(other)
        m = self.mid * o.mid
        r = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
        return Ball(m, r + _ulp(m))

    __rmul__ = __mul__

    def inv(self) -> "Ball":
        a = abs(self.mid)
        if self.rad >= a:
            raise ZeroDivisionError("ball contains zero")
        m = 1 / self.mid
        # |1/z - 1/c| = |z - c| / (|z||c|) <= r / ((|c| - r)|c|)
        return Ball(m, self.rad / ((a - self.rad) * a) + _ulp(m))

    def __truediv__(self, other) -> "Ball":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "Ball":
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> "Ball":
        out = Ball.exact(1)
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self) -> "Ball":
        """The branch continuous at the midpoint (principal square root there)."""
        a = abs(self.mid)
        if self.rad >= a:
            raise ArithmeticError("square root of a ball containing zero")
        s = mpmath.sqrt(self.mid)
        # |sqrt z - sqrt c| = |z - c| / |sqrt z + sqrt c| <= r / |sqrt c| on that branch
        return Ball(s, self.rad / abs(s) + _ulp(s))

    def conj(self) -> "Ball":
        return Ball(mpmath.conj(self.mid), self.rad)

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def __abs__(self):
        return abs(self.mid)


def ball_det(rows: list[list[Ball]]) -> Ball:
    """Leibniz expansion; fine for the 4x4 minors used here."""
    n = len(rows)
    total = Ball.exact(0)
    for perm in permutations(range(n)):
        sign = 1
        p = list(perm)
        for i in range(n):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        term = Ball.exact(sign)
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total
