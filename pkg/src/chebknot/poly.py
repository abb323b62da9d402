"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored lowest degree first, so ``IntPolynomial((1, 0, 2))``
is ``2t^2 + 1``.  Everything here is exact; rational evaluation is done by
homogenising so that no ``Fraction`` arithmetic happens in inner loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in coeffs[:end])


@dataclass(frozen=True, init=False)
class IntPolynomial:
    """Immutable dense polynomial in ``Z[t]``; the zero polynomial has degree -1."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(list(coeffs)))

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def t(cls) -> "IntPolynomial":
        return cls((0, 1))

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations --------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    # -- calculus and composition -----------------------------------------

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        """Return ``self(inner(t))`` by Horner's scheme."""
        result = IntPolynomial()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def reflect(self) -> "IntPolynomial":
        """Return ``self(-t)``."""
        return IntPolynomial(-c if i & 1 else c for i, c in enumerate(self.coeffs))

    def scale_var(self, k: int) -> "IntPolynomial":
        """Return ``self(k t)``."""
        return IntPolynomial(c * k**i for i, c in enumerate(self.coeffs))

    def taylor_shift(self, s: int) -> "IntPolynomial":
        """Return ``self(t + s)`` (integer shift, quadratic Horner)."""
        a = list(self.coeffs)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += s * a[j + 1]
        return IntPolynomial(a)

    def reverse(self, degree: int | None = None) -> "IntPolynomial":
        """Return ``t^d self(1/t)`` with ``d`` defaulting to the degree."""
        d = self.degree if degree is None else degree
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPolynomial(reversed(padded))

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: Number) -> Number:
        if isinstance(x, Fraction):
            num, den = self.eval_homogeneous(x.numerator, x.denominator)
            return Fraction(num, den)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_homogeneous(self, p: int, q: int) -> tuple[int, int]:
        """Return ``(N, q^d)`` with ``self(p/q) = N / q^d``, ``d = degree``."""
        if not self.coeffs:
            return 0, 1
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return acc, qpow // q

    def sign_at(self, x: Number) -> int:
        if isinstance(x, Fraction):
            num, _ = self.eval_homogeneous(x.numerator, x.denominator)
        else:
            num = self(x)
        return (num > 0) - (num < 0)

    # -- division -----------------------------------------------------------

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division staying in ``Z[t]``.

        Each quotient step must be an exact integer division; this holds when
        ``divisor`` has leading coefficient +-1, or when the quotient is known
        to be integral (e.g. dividing by a primitive factor).  A
        ``ValueError`` is raised otherwise.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dv = divisor.coeffs
        ld = dv[-1]
        dd = len(dv) - 1
        if len(r) - 1 < dd:
            return IntPolynomial(), self
        q = [0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            top = r[k]
            if top == 0:
                continue
            qk, rem = divmod(top, ld)
            if rem:
                raise ValueError("inexact integer division")
            q[k - dd] = qk
            off = k - dd
            for i, c in enumerate(dv):
                r[off + i] -= qk * c
        return IntPolynomial(q), IntPolynomial(r[:dd])

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod_exact(divisor)
        if r:
            raise ValueError("division leaves a remainder")
        return q

    def pseudo_rem(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Pseudo-remainder ``prem(self, divisor)`` in ``Z[t]``."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dv = divisor.coeffs
        ld = dv[-1]
        dd = len(dv) - 1
        while len(r) - 1 >= dd and r:
            top = r[-1]
            off = len(r) - 1 - dd
            r = [c * ld for c in r]
            for i, c in enumerate(dv):
                r[off + i] -= top * c
            while r and r[-1] == 0:
                r.pop()
        return IntPolynomial(r)


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) > 24:
        return _kronecker_mul(a, b)
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Pack into one big integer; the slot width bounds every product coefficient.
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    width = bound.bit_length() + 2
    base = 1 << width

    def pack(cs: Sequence[int]) -> int:
        acc = 0
        for c in reversed(cs):
            acc = (acc << width) + c
        return acc

    prod = pack(a) * pack(b)
    half = base >> 1
    mask = base - 1
    out = []
    for _ in range(len(a) + len(b) - 1):
        digit = prod & mask
        prod >>= width
        if digit >= half:
            digit -= base
            prod += 1
        out.append(digit)
    return out


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in ``Z[t]`` via the primitive pseudo-remainder sequence."""
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    c = gcd(f.content(), g.content())
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = a.pseudo_rem(b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive() * c if c != 1 else a.primitive()


def format_poly(coeffs: Sequence[int], var: str = "t") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
