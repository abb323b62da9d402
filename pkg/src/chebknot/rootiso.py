"""Certified real root isolation for integer polynomials.

Isolation is Descartes' rule of signs with bisection (Vincent-Collins-Akritas)
on the square-free factors; all arithmetic is exact, midpoints are dyadic, and
a midpoint that is a root is promoted to an exact rational root.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .interval import DyadicInterval
from .poly import IntPolynomial, poly_gcd


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def sign_at(P: IntPolynomial, q) -> int:
    """Exact sign of ``P(q)`` for an integer or rational ``q``."""
    return P.sign_at(Fraction(q))


def squarefree_decompose(P: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Square-free decomposition ``[(factor, multiplicity), ...]``.

    Factors are primitive, pairwise coprime and square-free; constants are
    dropped so the product matches ``P`` up to content.
    """
    if P.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    P = P.primitive()
    if P.degree < 1:
        return []
    out = []
    g = poly_gcd(P, P.derivative())
    # w holds the product of the factors of multiplicity >= i
    w = P.exact_div(g).primitive() if g.degree > 0 else P
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, g)
        z = w.exact_div(y).primitive() if y.degree > 0 else w
        if z.degree > 0:
            out.append((z, i))
        if y.degree > 0:
            g = g.exact_div(y).primitive()
        w = y
        i += 1
    return out


def squarefree_part(P: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(P, P.derivative())
    return P.exact_div(g).primitive() if g.degree > 0 else P.primitive()


def sign_variations(coeffs) -> int:
    count = 0
    last = 0
    for c in coeffs:
        if c:
            if last and (c > 0) != (last > 0):
                count += 1
            last = c
    return count


def root_bound_exponent(P: IntPolynomial) -> int:
    """``e`` with every real root strictly inside ``(-2^e, 2^e)`` (Cauchy bound)."""
    lc = abs(P.lc)
    m = max((abs(c) for c in P.coeffs[:-1]), default=0)
    # |root| < 1 + m / lc
    bound = 1 + -(-m // lc)
    return max(bound.bit_length(), 1)


@dataclass(frozen=True)
class IsolationResult:
    roots: list  # [(DyadicInterval, multiplicity)], ascending and disjoint

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def intervals(self) -> list[DyadicInterval]:
        return [iv for iv, _ in self.roots]


def _isolate_squarefree(P: IntPolynomial) -> list[DyadicInterval]:
    """Isolating intervals (open interior certified) for a square-free ``P``."""
    if P.degree < 1:
        return []
    e = root_bound_exponent(P)
    # Q(x) = P(2^(e+1) x - 2^e) on x in (0, 1)
    width = Fraction(1 << (e + 1))
    left = Fraction(-(1 << e))
    Q = _shift_rational(P, left, width)
    found: list[DyadicInterval] = []
    stack = [(left, width, Q)]
    while stack:
        c, w, Q = stack.pop()
        if Q.degree < 1:
            continue
        # a root exactly at the left end is impossible: ends are bound
        # values or midpoints already deflated
        v = sign_variations(Q.reverse().taylor_shift(1).coeffs)
        if v == 0:
            continue
        if v == 1:
            found.append(_detach_ends(P, Q, c, w))
            continue
        # bisect: QL(x) = 2^n Q(x/2), QR(x) = QL(x + 1)
        n = Q.degree
        QL = IntPolynomial(coef << (n - i) for i, coef in enumerate(Q.coeffs))
        mid_value = sum(QL.coeffs)  # QL(1) = 2^n Q(1/2)
        half = w / 2
        if mid_value == 0:
            found.append(DyadicInterval.point(c + half))
            # deflate the exact midpoint root: QL(x) = (x - 1) * R(x)
            QL = QL.exact_div(IntPolynomial((-1, 1)))
        QR = QL.taylor_shift(1)
        stack.append((c + half, half, QR.primitive()))
        stack.append((c, half, QL.primitive()))
    found.sort(key=lambda iv: iv.lo)
    return found


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def _detach_ends(P: IntPolynomial, Q: IntPolynomial, c: Fraction, w: Fraction) -> DyadicInterval:
    """Shrink ``(c, c + w)`` until no end is a (deflated) root of ``P``.

    ``Q`` is the local polynomial on ``(0, 1)``; it never vanishes at 0 or 1.
    """
    while P.sign_at(c) == 0 or P.sign_at(c + w) == 0:
        n = Q.degree
        QL = IntPolynomial(coef << (n - i) for i, coef in enumerate(Q.coeffs))
        s_mid = _sgn(sum(QL.coeffs))
        w = w / 2
        if s_mid == 0:
            return DyadicInterval.point(c + w)
        if s_mid == _sgn(Q.coeffs[0]):
            Q = QL.taylor_shift(1).primitive()
            c = c + w
        else:
            Q = QL.primitive()
    return DyadicInterval(c, c + w)


def _shift_rational(P: IntPolynomial, c: Fraction, w: Fraction) -> IntPolynomial:
    """Primitive integer multiple of ``P(c + w x)`` for dyadic ``c``, ``w``."""
    den = c.denominator * w.denominator
    a = int(c * den)
    b = int(w * den)
    # P((a + b x)/den) * den^n
    acc = IntPolynomial()
    lin = IntPolynomial((a, b))
    dpow = 1
    for coef in reversed(P.coeffs):
        acc = acc * lin + coef * dpow
        dpow *= den
    return acc.primitive()


def _bisect_to(P: IntPolynomial, iv: DyadicInterval, acc: Fraction,
               avoid_lo=None, avoid_hi=None) -> DyadicInterval:
    """Shrink an isolating interval of a square-free ``P`` by bisection."""
    if iv.is_point():
        return iv
    lo, hi = iv.lo, iv.hi
    slo = P.sign_at(lo)
    shi = P.sign_at(hi)
    if slo == 0:
        return DyadicInterval.point(lo)
    if shi == 0:
        return DyadicInterval.point(hi)
    if slo == shi:
        raise ValueError("interval does not carry a sign change")
    while (hi - lo > acc) or (avoid_lo is not None and lo <= avoid_lo) \
            or (avoid_hi is not None and hi >= avoid_hi):
        mid = (lo + hi) / 2
        sm = P.sign_at(mid)
        if sm == 0:
            return DyadicInterval.point(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi)


def isolate(P: IntPolynomial, acc) -> IsolationResult:
    """Isolate every real root of ``P`` in pairwise disjoint intervals of width ``<= acc``."""
    if P.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    acc = Fraction(acc)
    if acc <= 0:
        raise ValueError("accuracy must be positive")
    pieces = []
    for factor, mult in squarefree_decompose(P):
        for iv in _isolate_squarefree(factor):
            pieces.append((iv, mult, factor))
    pieces.sort(key=lambda item: item[0].lo)
    # different square-free factors are coprime, but their intervals may
    # still overlap; refine until everything is disjoint and narrow enough
    changed = True
    while changed:
        changed = False
        out = []
        for k, (iv, mult, factor) in enumerate(pieces):
            new = _bisect_to(factor, iv, acc)
            if new != iv:
                changed = True
            out.append((new, mult, factor))
        out.sort(key=lambda item: item[0].lo)
        for k in range(len(out) - 1):
            a, b = out[k][0], out[k + 1][0]
            if a.hi >= b.lo:
                changed = True
                out[k] = (_halve(out[k][2], a), out[k][1], out[k][2])
                out[k + 1] = (_halve(out[k + 1][2], b), out[k + 1][1], out[k + 1][2])
        pieces = sorted(out, key=lambda item: item[0].lo)
    return IsolationResult([(iv, mult) for iv, mult, _ in pieces])


def _halve(P: IntPolynomial, iv: DyadicInterval) -> DyadicInterval:
    if iv.is_point():
        return iv
    return _bisect_to(P, iv, iv.width / 2)


def refine(I: DyadicInterval, P: IntPolynomial, acc) -> DyadicInterval:
    """Shrink an isolating interval of a root of ``P`` to width ``<= acc``.

    The square-free part of ``P`` must change sign across ``I`` (or ``I`` is
    a degenerate interval at an exact root).
    """
    acc = Fraction(acc)
    if acc <= 0:
        raise ValueError("accuracy must be positive")
    if I.is_point():
        if P.sign_at(I.lo) != 0:
            raise ValueError("degenerate interval is not a root")
        return I
    sf = squarefree_part(P)
    if sf.sign_at(I.lo) * sf.sign_at(I.hi) > 0:
        raise ValueError("interval does not exhibit an isolation certificate")
    return _bisect_to(sf, I, acc)


def sturm_count(P: IntPolynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``P`` in the closed interval ``[lo, hi]``."""
    P = squarefree_part(P)
    if P.degree < 1:
        return 0
    seq = [P, P.derivative()]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = a.pseudo_rem(b)
        if r.is_zero():
            break
        # prem = lc(b)^(da - db + 1) * rem, so fix the sign of the multiplier
        delta = a.degree - b.degree + 1
        neg_multiplier = b.lc < 0 and delta % 2 == 1
        sign = (1 if r.lc > 0 else -1) * (-1 if neg_multiplier else 1)
        seq.append(r.primitive() * -sign)

    def variations(x: Fraction) -> int:
        return sign_variations([q.sign_at(x) for q in seq])

    count = variations(lo) - variations(hi)
    if P.sign_at(lo) == 0:
        count += 1
    return count


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number: a defining polynomial and an isolating interval.

    When ``exact`` is set the value is that rational and ``interval`` is the
    degenerate point.
    """

    defining: IntPolynomial
    interval: DyadicInterval
    exact: Optional[Fraction] = None

    @classmethod
    def rational(cls, q) -> "AlgebraicNumber":
        q = Fraction(q)
        poly = IntPolynomial((-q.numerator, q.denominator))
        return cls(poly, DyadicInterval.point(q), q)

    def refined(self, acc) -> "AlgebraicNumber":
        if self.exact is not None:
            return self
        return AlgebraicNumber(self.defining, _bisect_to(self.defining, self.interval, Fraction(acc)))

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float(self.interval.mid)


def compare_algebraic(x: AlgebraicNumber, y: AlgebraicNumber) -> Ordering:
    """Exact comparison: refine until disjoint, with a gcd-based equality test."""
    if x.exact is not None and y.exact is not None:
        return _order(x.exact, y.exact)
    if x.exact is not None:
        return _flip(_compare_rational(y, x.exact))
    if y.exact is not None:
        return _compare_rational(x, y.exact)
    g = poly_gcd(x.defining, y.defining)
    while True:
        I, J = x.interval, y.interval
        if I.hi < J.lo:
            return Ordering.LESS
        if J.hi < I.lo:
            return Ordering.GREATER
        K = I.intersect(J)
        if g.degree > 0 and sturm_count(g, K.lo, K.hi) > 0:
            return Ordering.EQUAL
        x = x.refined(I.width / 2)
        y = y.refined(J.width / 2)


def _compare_rational(x: AlgebraicNumber, q: Fraction) -> Ordering:
    if x.defining.sign_at(q) == 0 and x.interval.contains(q):
        return Ordering.EQUAL
    while x.interval.contains(q):
        x = x.refined(x.interval.width / 2)
        if x.exact is not None:
            return _order(x.exact, q)
    return Ordering.LESS if x.interval.hi < q else Ordering.GREATER


def _order(a, b) -> Ordering:
    return Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL


def _flip(o: Ordering) -> Ordering:
    return Ordering(-o.value)
