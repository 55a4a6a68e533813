"""Univariate resultants and the Macaulay resultant of three ternary forms."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import bareiss_det, det
from .poly import UniPoly, as_fraction, interpolate
from .ternary import TernaryForm, monomials


def resultant_uni(p: UniPoly, q: UniPoly) -> Fraction:
    """Resultant of two nonzero polynomials over Q.

    Uses the Euclidean remainder recursion
    ``Res(p, q) = (-1)^(mn) lc(q)^(m - deg r) Res(q, r)`` with ``r = p mod q``,
    which is the subresultant chain specialised to a field.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    acc = Fraction(1)
    while True:
        m, n = p.degree, q.degree
        if n == 0:
            return acc * q.lc**m
        if m == 0:
            return acc * p.lc**n
        if m < n:
            p, q = q, p
            if (m * n) % 2:
                acc = -acc
            continue
        r = p % q
        if r.is_zero():
            return Fraction(0)
        if (m * n) % 2:
            acc = -acc
        acc *= q.lc ** (m - r.degree)
        p, q = q, r


def sylvester_matrix(a: Sequence, b: Sequence) -> list[list[Fraction]]:
    """Sylvester matrix of coefficient lists (low degree first) taken with
    their *formal* degrees ``len(a) - 1`` and ``len(b) - 1``."""
    a = [as_fraction(x) for x in a]
    b = [as_fraction(x) for x in b]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def formal_resultant(a: Sequence, b: Sequence) -> Fraction:
    """Sylvester determinant with formal degrees (valid when leading terms vanish)."""
    if len(a) <= 1 and len(b) <= 1:
        return Fraction(1)
    return det(sylvester_matrix(a, b))


def discriminant(p: UniPoly) -> Fraction:
    """``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs positive degree")
    r = resultant_uni(p, p.derivative())
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return s * r / p.lc


class UnsupportedDegree(ValueError):
    pass


def _macaulay_layout(d: int):
    big = 3 * d - 2
    mons = monomials(big)
    index = {e: n for n, e in enumerate(mons)}
    rows = []  # (which form, shift exponent)
    reduced_flags = []
    for e in mons:
        divisible = [k for k in range(3) if e[k] >= d]
        which = divisible[0]
        shift = list(e)
        shift[which] -= d
        rows.append((which, tuple(shift)))
        reduced_flags.append(len(divisible) == 1)
    extraneous = [n for n, flag in enumerate(reduced_flags) if not flag]
    return mons, index, rows, extraneous


def _macaulay_int_matrix(forms: Sequence[TernaryForm], d: int):
    mons, index, rows, extraneous = _macaulay_layout(d)
    size = len(mons)
    mat = [[0] * size for _ in range(size)]
    for r, (which, shift) in enumerate(rows):
        for e, c in forms[which].terms:
            col = index[(e[0] + shift[0], e[1] + shift[1], e[2] + shift[2])]
            mat[r][col] = int(c)
    minor = [[mat[r][c] for c in extraneous] for r in extraneous]
    return mat, minor


# det-1 integer substitutions tried when the extraneous minor vanishes;
# the resultant is invariant under them.
_SHEARS = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [1, 0, 1]],
    [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
    [[1, 0, 0], [1, 1, 0], [2, 1, 1]],
    [[1, 2, 0], [0, 1, 0], [0, 3, 1]],
    [[2, 1, 0], [1, 1, 0], [0, 1, 1]],
    [[1, 0, 3], [2, 1, 5], [0, 0, 1]],
    [[3, 2, 0], [1, 1, 0], [4, 1, 1]],
]


def ternary_resultant(g1: TernaryForm, g2: TernaryForm, g3: TernaryForm) -> Fraction:
    """Macaulay resultant of three ternary forms of a common degree 2 or 3.

    Zero exactly when the forms share a projective zero over C. Computed as
    ``det(Macaulay matrix) / det(extraneous minor)`` after scaling the forms
    to integers; the resultant has degree ``d**2`` in each form.
    """
    forms = [g1, g2, g3]
    d = g1.degree
    if any(g.degree != d for g in forms):
        raise ValueError("forms must share a degree")
    if d not in (2, 3):
        raise UnsupportedDegree(f"degree {d} is not supported (only 2 and 3)")
    if any(g.is_zero() for g in forms):
        return Fraction(0)
    scaled = []
    factor = Fraction(1)
    for g in forms:
        gi, s = g.integer_scale()
        scaled.append(gi)
        factor *= s ** (d * d)
    for shear in _SHEARS:
        trial = [g.substitute(shear) for g in scaled] if shear is not _SHEARS[0] else scaled
        mat, minor = _macaulay_int_matrix(trial, d)
        den = bareiss_det(minor)
        if den == 0:
            continue
        num = bareiss_det(mat)
        return Fraction(num, den) / factor
    return _perturbed(scaled, d) / factor


def _perturbed(forms: Sequence[TernaryForm], d: int) -> Fraction:
    """``Res(g_k + s x_k^d)`` is a polynomial of degree ``<= 3 d^2`` in ``s``
    whose extraneous minor is not identically zero (it tends to the identity
    as ``s`` grows); interpolate it at integers and evaluate at ``s = 0``."""

    pure = [TernaryForm(d, {tuple(d if i == k else 0 for i in range(3)): 1}) for k in range(3)]
    xs, ys = [], []
    s = 0
    while len(xs) < 3 * d * d + 1:
        s += 1
        trial = [g + pure[k] * s for k, g in enumerate(forms)]
        mat, minor = _macaulay_int_matrix(trial, d)
        den = bareiss_det(minor)
        if den == 0:
            continue
        xs.append(s)
        ys.append(Fraction(bareiss_det(mat), den))
    return interpolate(xs, ys)(0)
