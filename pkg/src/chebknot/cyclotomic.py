"""Exact cosines of rational multiples of pi.

``cos(n pi / m)`` is either rational (reduced denominator 1, 2 or 3) or a
root of ``M_m`` (odd reduced numerator) or of ``M_m(-t)`` (even numerator),
picked out by its rank among the roots.  Enclosures are certified by exact
sign changes of the defining polynomial; mpmath only supplies guesses.

Zero testing works in ``Z[1/2][x] / Psi_m(x)`` where ``x = 2 cos(pi/m)`` and
``Psi_m`` is the monic integer minimal polynomial of ``x``; every slot
``cos(n_i pi / m_i)`` becomes ``D_N(x) / 2`` with ``D_N`` the monic Dickson
polynomial (``D_N(2 cos y) = 2 cos(N y)``).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Optional, Sequence

import mpmath

from .chebyshev import minimal_cos_poly
from .interval import DyadicInterval, FixedInterval
from .poly import IntPolynomial
from .rootiso import AlgebraicNumber, isolate

_mp = mpmath.MPContext()
_mp_lock = threading.Lock()


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@dataclass(frozen=True, order=True)
class AngleFraction:
    """The angle ``num/den * pi`` folded into ``[0, 1] * pi``."""

    num: int
    den: int

    @classmethod
    def of(cls, n: int, m: int = 1) -> "AngleFraction":
        if m <= 0:
            raise ValueError("denominator must be positive")
        q = Fraction(n, m) % 2
        if q > 1:
            q = 2 - q
        return cls(q.numerator, q.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


_EXACT = {
    (0, 1): Fraction(1),
    (1, 3): Fraction(1, 2),
    (1, 2): Fraction(0),
    (2, 3): Fraction(-1, 2),
    (1, 1): Fraction(-1),
}


def _ranked_numerators(m: int) -> list[int]:
    """Odd ``k`` coprime to ``m`` in ``(0, m)``: ``cos(k pi/m)`` are the roots of ``M_m``."""
    return [k for k in range(1, m, 2) if gcd(k, m) == 1]


class _RootTable:
    """Certified enclosures of all roots of ``M_m``, indexed by numerator ``k``.

    Certification: one interval per ``k`` around an mpmath guess, each with
    an exact sign change, pairwise disjoint, as many as ``deg M_m``.  Then
    each interval holds exactly one root and the order matches the rank.
    """

    def __init__(self, m: int):
        self.m = m
        self.poly = minimal_cos_poly(m)
        self.ks = _ranked_numerators(m)
        self.lock = threading.Lock()
        self.intervals: dict[int, DyadicInterval] = {}
        self._certify()

    def _certify(self) -> None:
        P = self.poly
        prec = 64
        for _ in range(6):
            cand = {k: _guess_interval(k, self.m, prec) for k in self.ks}
            ordered = [cand[k] for k in self.ks]  # cos decreasing in k
            ok = all(ordered[i + 1].hi < ordered[i].lo for i in range(len(ordered) - 1))
            ok = ok and all(P.sign_at(iv.lo) * P.sign_at(iv.hi) < 0 for iv in ordered)
            if ok and len(ordered) == P.degree:
                self.intervals = cand
                return
            prec *= 2
        # numeric guesses misbehaved; fall back to exact isolation
        roots = isolate(P, Fraction(1, 1 << 64)).intervals
        if len(roots) != len(self.ks):
            raise ArithmeticError(f"M_{self.m}: isolation found {len(roots)} roots")
        self.intervals = dict(zip(self.ks, reversed(roots)))

    def enclose(self, k: int, acc: Fraction) -> DyadicInterval:
        with self.lock:
            iv = self.intervals[k]
            if iv.width <= acc:
                return iv
            iv = _refine_guided(self.poly, iv, k, self.m, acc)
            self.intervals[k] = iv
            return iv


def _guess_interval(k: int, m: int, prec: int) -> DyadicInterval:
    with _mp_lock:
        _mp.prec = prec + 32
        x = _mp.cos(_mp.mpf(k) * _mp.pi / m)
        scaled = int(_mp.floor(x * _mp.mpf(2) ** prec))
    den = 1 << prec
    return DyadicInterval(Fraction(scaled - 1, den), Fraction(scaled + 2, den))


def _refine_guided(P: IntPolynomial, iv: DyadicInterval, k: int, m: int, acc: Fraction) -> DyadicInterval:
    """A nested sub-interval of width ``<= acc``, guided by a numeric guess."""
    prec = max(64, (1 / acc).__ceil__().bit_length() + 2)
    guess = _guess_interval(k, m, prec)
    if guess.overlaps(iv):
        guess = guess.intersect(iv)
        if guess.width <= acc and P.sign_at(guess.lo) * P.sign_at(guess.hi) < 0:
            return guess
    # bisection keeps the certificate at every step
    lo, hi = iv.lo, iv.hi
    s_lo = P.sign_at(lo)
    while hi - lo > acc:
        mid = (lo + hi) / 2
        sm = P.sign_at(mid)
        if sm == s_lo:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi)


_tables: dict[int, _RootTable] = {}
_tables_lock = threading.Lock()


def _table(m: int) -> _RootTable:
    tab = _tables.get(m)
    if tab is None:
        tab = _RootTable(m)
        with _tables_lock:
            tab = _tables.setdefault(m, tab)
    return tab


@dataclass(frozen=True)
class CosValue:
    """``cos(angle * pi)``.

    Irrational values are ``sign * cos(k pi / m)`` with ``k`` odd and coprime
    to ``m``, so the defining polynomial is ``M_m`` (``sign = 1``) or
    ``M_m(-t)`` (``sign = -1``).
    """

    angle: AngleFraction
    exact: Optional[Fraction]
    m: int = 0
    k: int = 0
    sign: int = 1

    @property
    def defining(self) -> IntPolynomial:
        if self.exact is not None:
            q = self.exact
            return IntPolynomial((-q.numerator, q.denominator))
        M = minimal_cos_poly(self.m)
        return M if self.sign > 0 else M.reflect().primitive()

    @property
    def rank(self) -> int:
        """Position among the roots of ``defining`` sorted descending."""
        ks = _ranked_numerators(self.m)
        r = ks.index(self.k)
        return r if self.sign > 0 else len(ks) - 1 - r

    def enclose(self, acc) -> DyadicInterval:
        if self.exact is not None:
            return DyadicInterval.point(self.exact)
        iv = _table(self.m).enclose(self.k, Fraction(acc))
        return iv if self.sign > 0 else -iv

    def fixed(self, prec: int) -> FixedInterval:
        if self.exact is not None:
            return FixedInterval.exact(self.exact, prec)
        return self.enclose(Fraction(1, 1 << prec)).to_fixed(prec)

    @property
    def value(self) -> AlgebraicNumber:
        if self.exact is not None:
            return AlgebraicNumber.rational(self.exact)
        return AlgebraicNumber(self.defining, self.enclose(Fraction(1, 1 << 64)))

    def numeric(self, prec: int = 53):
        with _mp_lock:
            _mp.prec = prec
            return _mp.cospi(_mp.mpf(self.angle.num) / self.angle.den)


def cos_value(n: int, m: int = 1) -> CosValue:
    angle = AngleFraction.of(n, m)
    key = (angle.num, angle.den)
    if key in _EXACT:
        return CosValue(angle, _EXACT[key])
    if angle.num % 2:
        return CosValue(angle, None, angle.den, angle.num, 1)
    # cos(n pi/m) = -cos((m - n) pi/m) with m - n odd
    return CosValue(angle, None, angle.den, angle.den - angle.num, -1)


def enclose(c: CosValue, acc) -> DyadicInterval:
    return c.enclose(acc)


# -- exact reduction ----------------------------------------------------------

def psi_poly(m: int) -> IntPolynomial:
    """Monic integer minimal polynomial of ``2 cos(pi/m)``."""
    M = minimal_cos_poly(m)
    d = M.degree
    coeffs = []
    for i, c in enumerate(M.coeffs):
        num = c << (d - i)  # c * 2^(d-i) = 2^d * c / 2^i
        q, r = divmod(num, M.lc)
        if r:
            raise ArithmeticError(f"M_{m}(x/2) is not integral after scaling")
        coeffs.append(q)
    return IntPolynomial(coeffs)


def _reduce_monic(coeffs: list[int], modulus: Sequence[int], p: int | None = None) -> list[int]:
    """Remainder modulo a monic polynomial by schoolbook division."""
    d = len(modulus) - 1
    r = list(coeffs)
    for top in range(len(r) - 1, d - 1, -1):
        c = r[top]
        if c:
            off = top - d
            for i in range(d):
                r[off + i] -= c * modulus[i]
            r[top] = 0
    r = r[:d]
    if p is not None:
        r = [x % p for x in r]
    return r


class _Reducer:
    """Fast remainder modulo a monic ``psi`` of degree ``d`` for inputs of degree ``<= 2d - 2``.

    The quotient is read off a truncated product with the power-series
    inverse of the reversed modulus, so each reduction is two big multiplications.
    """

    def __init__(self, modulus: Sequence[int], p: int | None = None):
        self.modulus = list(modulus)
        self.p = p
        d = len(modulus) - 1
        self.d = d
        rev = self.modulus[::-1]
        n = max(d - 1, 1)
        inv = [1]
        for k in range(1, n):
            acc = -sum(rev[i] * inv[k - i] for i in range(1, min(k, d) + 1))
            inv.append(acc % p if p else acc)
        self.inv = inv
        self.psi = IntPolynomial(self.modulus)

    def __call__(self, coeffs: list[int]) -> list[int]:
        d, p = self.d, self.p
        n = len(coeffs) - 1
        if n < d:
            return [c % p for c in coeffs] if p else list(coeffs)
        if n > 2 * d - 2 + 1:
            return _reduce_monic(coeffs, self.modulus, p)
        qlen = n - d + 1
        top = coeffs[::-1][:qlen]
        q_rev = (IntPolynomial(top) * IntPolynomial(self.inv[:qlen])).coeffs[:qlen]
        if p:
            q_rev = [c % p for c in q_rev]
        q = IntPolynomial(list(q_rev)[::-1] if len(q_rev) == qlen else
                          ([0] * (qlen - len(q_rev)) + list(q_rev)[::-1]))
        r = (IntPolynomial(coeffs) - q * self.psi).coeffs[:d]
        r = list(r)
        if p:
            r = [c % p for c in r]
        return r


def reduce_mod_M(P: IntPolynomial, m: int) -> list[Fraction]:
    """Remainder of ``P`` modulo ``M_m`` as dyadic coefficients, lowest degree first."""
    psi = psi_poly(m)
    n = max(P.degree, 0)
    # 2^n P(x/2) is integral; reduce it mod psi, then substitute x = 2t back
    scaled = [c << (n - i) for i, c in enumerate(P.coeffs)]
    r = _reduce_monic(scaled, psi.coeffs)
    out = [Fraction(c << i, 1 << n) for i, c in enumerate(r)]
    while out and out[-1] == 0:
        out.pop()
    return out


class Residue:
    """Element ``coeffs(x) / 2^shift`` of ``Z[1/2][x] / psi`` (or its image mod ``p``)."""

    __slots__ = ("coeffs", "shift", "ring")

    def __init__(self, coeffs, shift: int, ring: "_Ring"):
        self.coeffs = coeffs
        self.shift = shift
        self.ring = ring

    def _lift(self, other) -> "Residue":
        if isinstance(other, Residue):
            return other
        return self.ring.const(other)

    def _align(self, other: "Residue"):
        a, b = self, other
        s = max(a.shift, b.shift)
        return self.ring.scale(a.coeffs, s - a.shift), self.ring.scale(b.coeffs, s - b.shift), s

    def __add__(self, other):
        o = self._lift(other)
        x, y, s = self._align(o)
        return self.ring.make(_addv(x, y), s)

    __radd__ = __add__

    def __neg__(self):
        return self.ring.make([-c for c in self.coeffs], self.shift)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        prod = IntPolynomial(self.coeffs) * IntPolynomial(o.coeffs)
        return self.ring.make(self.ring.reduce(list(prod.coeffs)), self.shift + o.shift)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def square(self):
        return self * self

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _addv(x, y):
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, c in enumerate(y):
        out[i] += c
    return out


class _Ring:
    def __init__(self, modulus: Sequence[int], p: int | None = None):
        self.modulus = list(modulus)
        self.p = p
        self.half = pow(2, -1, p) if p else None
        self.reduce = _Reducer(modulus, p)

    def scale(self, coeffs, k: int):
        # modular residues always carry shift 0
        if k == 0 or self.p:
            return coeffs
        return [c << k for c in coeffs]

    def make(self, coeffs, shift: int) -> Residue:
        if self.p:
            # fold 2^-shift into the coefficients; shift stays 0
            if shift:
                f = pow(self.half, shift, self.p)
                coeffs = [c * f % self.p for c in coeffs]
            else:
                coeffs = [c % self.p for c in coeffs]
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            return Residue(list(coeffs), 0, self)
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        # keep the representation reduced: strip common powers of two
        while shift and coeffs and all(c & 1 == 0 for c in coeffs):
            coeffs = [c >> 1 for c in coeffs]
            shift -= 1
        if not coeffs:
            shift = 0
        return Residue(coeffs, shift, self)

    def const(self, value) -> Residue:
        q = Fraction(value)
        d = q.denominator
        if d & (d - 1):
            raise ValueError("only dyadic constants are supported")
        return self.make([q.numerator], d.bit_length() - 1)

    def dickson(self, n: int) -> list[int]:
        """``D_n(x) mod psi`` by the doubling formulas."""
        if n == 0:
            return [2]
        x = [0, 1]
        # (D_k, D_{k+1}) ladder over the bits of n
        a, b = [2], x
        for bit in bin(n)[2:]:
            ab = self._mul(a, b)
            if bit == "1":
                a = _addv(ab, [0, -1])          # D_{2k+1} = D_k D_{k+1} - x
                b = _addv(self._mul(b, b), [-2])  # D_{2k+2} = D_{k+1}^2 - 2
            else:
                b = _addv(ab, [0, -1])
                a = _addv(self._mul(a, a), [-2])  # D_{2k} = D_k^2 - 2
        return a

    def _mul(self, x, y):
        prod = IntPolynomial(x) * IntPolynomial(y)
        return self.reduce(list(prod.coeffs))

    def cos_slot(self, N: int) -> Residue:
        """``cos(N pi/m) = D_N(x) / 2``."""
        return self.make(self.dickson(N), 1)


@lru_cache(maxsize=64)
def _ring(m: int, p: int | None) -> _Ring:
    return _Ring(psi_poly(m).coeffs, p)


@dataclass(frozen=True)
class TrigPolyExpr:
    """A ring expression ``fn(C_1, ..., C_k)`` with ``C_i = cos(angles[i] * pi)``.

    ``fn`` may only use ``+``, ``-``, ``*``, integer powers and dyadic
    constants, so it evaluates on intervals, residues and mpmath numbers alike.
    """

    angles: tuple
    fn: Callable

    @classmethod
    def of(cls, fn: Callable, *angles) -> "TrigPolyExpr":
        return cls(tuple(a if isinstance(a, AngleFraction) else AngleFraction.of(Fraction(a).numerator, Fraction(a).denominator) for a in angles), fn)

    @property
    def modulus_index(self) -> int:
        m = 1
        for a in self.angles:
            m = _lcm(m, a.den)
        return m

    def interval(self, prec: int) -> FixedInterval:
        slots = [cos_value(a.num, a.den).fixed(prec) for a in self.angles]
        return self.fn(*slots)

    def numeric(self, prec: int = 200):
        vals = []
        with _mp_lock:
            _mp.prec = prec
            for a in self.angles:
                vals.append(_mp.cospi(_mp.mpf(a.num) / a.den))
            return self.fn(*vals)

    def residue(self, p: int | None = None) -> Residue:
        m = self.modulus_index
        ring = _ring(m, p)
        slots = [ring.cos_slot(a.num * (m // a.den)) for a in self.angles]
        return self.fn(*slots)


# a 61-bit Mersenne prime; a nonzero image proves the exact value nonzero
FILTER_PRIME = (1 << 61) - 1


def formal_null_test(e: TrigPolyExpr) -> bool:
    """Exact decision of ``e == 0``."""
    if not e.residue(FILTER_PRIME).is_zero():
        return False
    return e.residue().is_zero()


def sign_test(e: TrigPolyExpr, prec: int) -> int | None:
    """Interval sign of ``e`` at ``prec`` bits; ``None`` means FAIL."""
    return e.interval(prec).sign()


def certified_sign(e: TrigPolyExpr, prec: int = 64, formal_after: int = 512) -> int:
    """Sign of ``e``: interval evaluation with precision doubling; once the
    precision passes ``formal_after`` bits the formal test runs.

    Once the formal test says nonzero the value is bounded away from 0, so
    doubling the precision terminates.
    """
    s = sign_test(e, prec)
    while s is None and prec < formal_after:
        prec *= 2
        s = sign_test(e, prec)
    if s is not None:
        return s
    if formal_null_test(e):
        return 0
    while s is None:
        prec *= 2
        s = sign_test(e, prec)
    return s
