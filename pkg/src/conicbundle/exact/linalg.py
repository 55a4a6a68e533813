"""Small exact linear algebra over Q."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Sequence

from .poly import UniPoly, as_fraction

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matvec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((a[i][k] * x[k] for k in range(len(x))), 0) for i in range(len(a))]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * rowk[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant; rational rows are scaled to integers first."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in m:
        row = [as_fraction(x) for x in row]
        d = reduce(lcm, (x.denominator for x in row), 1)
        scale *= d
        rows.append([int(x * d) for x in row])
    return Fraction(bareiss_det(rows)) / scale


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    a = [[as_fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def charpoly(m: Sequence[Sequence]) -> UniPoly:
    """``det(lambda*I - m)`` by the Faddeev-LeVerrier recursion."""
    a = to_matrix(m)
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = identity(n)
    for k in range(1, n + 1):
        am = matmul(a, mk)
        ck = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        coeffs[n - k] = ck
        mk = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return UniPoly(coeffs)


def congruence_inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by symmetric Gaussian elimination.

    Sylvester's law of inertia: congruence ``P^T m P`` to a diagonal matrix
    preserves the counts. Used as an independent check on eigen-sign
    counting.
    """
    a = to_matrix(m)
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            # all remaining diagonal entries vanish; look for an off-diagonal
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # x_i <- x_i + x_j makes the (i, i) entry 2*a[i][j] != 0
            for r in range(n):
                a[r][i] += a[r][j]
            for c in range(n):
                a[i][c] += a[j][c]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = a[r][piv] / d
            if f:
                for c in active:
                    a[r][c] -= f * a[piv][c]
        for r in active:
            a[r][piv] = a[piv][r] = Fraction(0)
    return pos, neg, n - pos - neg
