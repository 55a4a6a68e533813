"""Exact real-root isolation with Sturm chains.

All evaluation happens on primitive integer polynomials at rational points,
so no rounding ever enters a sign decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .poly import UniPoly, as_fraction, int_prem, int_primitive, poly_gcd, squarefree_decomposition


class UndefinedRootSet(ValueError):
    """Raised when asked for the roots of the zero polynomial."""


def _homog_sign(ints: list[int], x: Fraction) -> int:
    """Exact sign of the integer polynomial ``ints`` at the rational ``x``."""
    if not ints:
        return 0
    n, d = x.numerator, x.denominator
    acc = ints[-1]
    dp = 1
    for c in reversed(ints[:-1]):
        dp *= d
        acc = acc * n + c * dp
    return (acc > 0) - (acc < 0)


def sturm_chain(p: UniPoly) -> list[list[int]]:
    """Sturm sequence of ``p`` as primitive integer polynomials.

    Each member is a positive multiple of the classical term, so sign
    variation counts are unchanged.
    """
    p0 = int_primitive(p.integer_coeffs())
    p1 = int_primitive(p.derivative().integer_coeffs())
    chain = [p0]
    if not p1:
        return chain
    chain.append(p1)
    while len(chain[-1]) > 1:
        r = int_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(signs) -> int:
    count = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _var_at(chain: list[list[int]], x: Fraction) -> int:
    return _variations(_homog_sign(c, x) for c in chain)


def _var_at_inf(chain: list[list[int]], positive: bool) -> int:
    signs = []
    for c in chain:
        s = (c[-1] > 0) - (c[-1] < 0)
        if not positive and (len(c) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_real_roots(p: UniPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of *distinct* real roots of ``p`` in ``(lo, hi]``.

    ``None`` stands for the corresponding infinity.
    """
    if p.is_zero():
        raise UndefinedRootSet("undefined root set")
    chain = sturm_chain(p)
    vlo = _var_at_inf(chain, False) if lo is None else _var_at(chain, as_fraction(lo))
    vhi = _var_at_inf(chain, True) if hi is None else _var_at(chain, as_fraction(hi))
    return vlo - vhi


def sign_at(p: UniPoly, x) -> int:
    """Exact sign of ``p(x)`` for rational ``x``."""
    x = as_fraction(x)
    return _homog_sign(p.integer_coeffs(), x)


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of smallest denominator in ``[lo, hi]`` (Stern-Brocot)."""
    from math import floor, ceil

    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    fl = floor(lo)
    if fl == lo or ceil(lo) <= hi:
        return Fraction(ceil(lo))
    # lo and hi share the integer part; recurse on reciprocals of the fractional parts
    return fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl))


def _snap(iv: "IsolatingInterval") -> "IsolatingInterval":
    """Collapse to an exact interval when the root is rational.

    A rational root ``a/b`` of a primitive integer polynomial has ``b``
    dividing the leading coefficient ``L``; two such numbers differ by at
    least ``1/L**2``, so once the interval is narrower than that it holds at
    most one candidate, the simplest rational inside it.
    """
    if iv.is_exact:
        return iv
    ints = iv.factor.integer_coeffs()
    lead = abs(ints[-1])
    if lead.bit_length() > 256:
        return iv
    iv = iv.refine(Fraction(1, lead * lead + 1))
    if iv.is_exact:
        return iv
    x = simplest_rational(iv.lo, iv.hi)
    if lead % x.denominator == 0 and _homog_sign(ints, x) == 0:
        return IsolatingInterval(x, x, iv.multiplicity, iv.factor)
    return iv


def cauchy_bound(p: UniPoly) -> Fraction:
    """A power of two strictly larger than every root modulus."""
    lc = abs(p.lc)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m / lc
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed interval ``[lo, hi]`` holding ``multiplicity`` roots.

    ``factor`` is the squarefree factor whose single root lives here; it is
    what refinement bisects on. When ``lo == hi`` the root is rational and
    exact.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: UniPoly = field(repr=False, compare=False)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def refine(self, width) -> "IsolatingInterval":
        """Bisect until the interval is narrower than ``width``."""
        width = as_fraction(width)
        if self.is_exact or self.width < width:
            return self
        ints = self.factor.integer_coeffs()
        lo, hi = self.lo, self.hi
        slo = _homog_sign(ints, lo)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            sm = _homog_sign(ints, mid)
            if sm == 0:
                return IsolatingInterval(mid, mid, self.multiplicity, self.factor)
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return IsolatingInterval(lo, hi, self.multiplicity, self.factor)

    def approx(self, width=Fraction(1, 2**60)) -> Fraction:
        """A rational within ``width`` of the root."""
        return self.refine(width).midpoint()

    def __float__(self) -> float:
        return float(self.approx())


def _isolate_squarefree(p: UniPoly, mult: int, snap: bool = True) -> list[IsolatingInterval]:
    chain = sturm_chain(p)
    ints = chain[0]
    b = cauchy_bound(p)
    out: list[IsolatingInterval] = []
    # stack of (lo, hi, V(lo), V(hi)); endpoints are never roots
    stack = [(-b, b, _var_at(chain, -b), _var_at(chain, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            iv = IsolatingInterval(lo, hi, mult, p)
            out.append(_snap(iv) if snap else iv)
            continue
        mid = (lo + hi) / 2
        if _homog_sign(ints, mid) == 0:
            out.append(IsolatingInterval(mid, mid, mult, p))
            # nudge the split point off the root; roots are separated
            eps = (hi - lo) / 2**20
            while True:
                l2, r2 = mid - eps, mid + eps
                vl, vr = _var_at(chain, l2), _var_at(chain, r2)
                if vl - vr == 1 and _homog_sign(ints, l2) and _homog_sign(ints, r2):
                    break
                eps /= 2
            stack.append((lo, l2, vlo, vl))
            stack.append((r2, hi, vr, vhi))
            continue
        vm = _var_at(chain, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort(key=lambda iv: iv.lo)
    return out


def _separate(intervals: list[IsolatingInterval]) -> list[IsolatingInterval]:
    """Refine until consecutive intervals are disjoint (strictly)."""
    intervals = sorted(intervals, key=lambda iv: iv.lo)
    changed = True
    while changed:
        changed = False
        for i in range(len(intervals) - 1):
            a, b = intervals[i], intervals[i + 1]
            if a.hi >= b.lo:
                if a.is_exact and b.is_exact:
                    raise ArithmeticError("coprime factors share a root")
                if not a.is_exact:
                    intervals[i] = a.refine(a.width / 2)
                if not b.is_exact:
                    intervals[i + 1] = b.refine(b.width / 2)
                changed = True
        intervals.sort(key=lambda iv: iv.lo)
    return intervals


def isolate_real_roots(p: UniPoly, snap: bool = True) -> list[IsolatingInterval]:
    """Sorted, pairwise disjoint isolating intervals for the real roots of ``p``.

    Multiplicities come from the squarefree decomposition. With ``snap``
    rational roots are detected and returned as exact intervals; without it
    they may be (rarely) returned as ordinary isolating intervals.
    """
    if p.is_zero():
        raise UndefinedRootSet("undefined root set")
    if p.degree <= 0:
        return []
    out = []
    for factor, mult in squarefree_decomposition(p):
        out.extend(_isolate_squarefree(factor, mult, snap))
    return _separate(out)


def sign_at_root(g: UniPoly, root: IsolatingInterval, max_steps: int = 4000) -> tuple[int, IsolatingInterval]:
    """Exact sign of ``g`` at the real algebraic number described by ``root``.

    Returns the sign together with the (possibly refined) interval. A zero
    sign is reported only when ``g`` and the defining factor share the root.
    """
    if g.is_zero():
        return 0, root
    if root.is_exact:
        return sign_at(g, root.lo), root
    common = poly_gcd(g, root.factor)
    if common.degree > 0:
        # the shared root lies in the interval iff the gcd changes sign there
        if sign_at(common, root.lo) * sign_at(common, root.hi) < 0:
            return 0, root
    iv = root
    for _ in range(max_steps):
        if count_real_roots(g, iv.lo, iv.hi) == 0 and sign_at(g, iv.lo) != 0:
            return sign_at(g, iv.lo), iv
        iv = iv.refine(iv.width / 4)
        if iv.is_exact:
            return sign_at(g, iv.lo), iv
    raise ArithmeticError("sign not certified within the refinement budget")


def separating_rationals(roots: list[IsolatingInterval]) -> tuple[list[IsolatingInterval], list[Fraction]]:
    """Rationals strictly between consecutive roots.

    Neighbouring intervals are refined until their gap is at least four
    times their widths; the sample is the simplest rational in the middle
    three quarters of the gap. Returns the refined roots and the samples.
    """
    roots = list(roots)
    samples = []
    for i in range(len(roots) - 1):
        a, b = roots[i], roots[i + 1]
        while not a.hi < b.lo:
            a = a if a.is_exact else a.refine(a.width / 2)
            b = b if b.is_exact else b.refine(b.width / 2)
        gap = b.lo - a.hi
        a = a if a.is_exact else a.refine(gap / 4)
        b = b if b.is_exact else b.refine(gap / 4)
        roots[i], roots[i + 1] = a, b
        samples.append(simplest_rational(a.hi + (b.lo - a.hi) / 8, b.lo - (b.lo - a.hi) / 8))
    return roots, samples
