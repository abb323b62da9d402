"""Knot diagrams of ``C(a, b, c, phi)`` for a regular rational phase ``phi``.

The projection ``x = T_a(u), y = T_b(u)`` has double points ``(i, j)`` at the
parameters ``cos((j/b + i/a) pi)`` and ``cos((j/b - i/a) pi)``.  All ordering
is done on folded angle fractions: a larger folded angle is a smaller
parameter.  The height ``T_c(u + phi)`` decides over/under through the sign
of ``Q_c = (T_c(t + phi) - T_c(s + phi)) / (t - s)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Optional

from .critical import CertificationError, CriticalSet, KnotParams, compare_root
from .cyclotomic import AngleFraction, TrigPolyExpr, cos_value, formal_null_test
from .interval import FixedInterval


class CriticalPhase(ValueError):
    """Raised when ``phi`` is a critical value."""


def _sin_sign(q: Fraction) -> int:
    """Sign of ``sin(q pi)``."""
    r = q % 2
    if r == 0 or r == 1:
        return 0
    return 1 if r < 1 else -1


@dataclass(frozen=True)
class DoublePoint:
    i: int
    j: int
    a: int
    b: int

    @property
    def q_plus(self) -> Fraction:
        return Fraction(self.j, self.b) + Fraction(self.i, self.a)

    @property
    def q_minus(self) -> Fraction:
        return Fraction(self.j, self.b) - Fraction(self.i, self.a)

    @property
    def folded_plus(self) -> AngleFraction:
        return AngleFraction.of(self.q_plus.numerator, self.q_plus.denominator)

    @property
    def folded_minus(self) -> AngleFraction:
        return AngleFraction.of(self.q_minus.numerator, self.q_minus.denominator)

    @property
    def high_is_plus(self) -> bool:
        """Whether ``t = cos(q_plus pi)`` is the larger of the two parameters."""
        return self.folded_plus.value < self.folded_minus.value

    @property
    def high(self) -> AngleFraction:
        return self.folded_plus if self.high_is_plus else self.folded_minus

    @property
    def low(self) -> AngleFraction:
        return self.folded_minus if self.high_is_plus else self.folded_plus

    @property
    def parity(self) -> int:
        e = self.i + self.j + (self.i * self.b) // self.a + (self.j * self.a) // self.b
        return -1 if e % 2 else 1

    def tangent_cross_sign(self) -> int:
        """Sign of ``d_t x d_s`` for the tangents at ``t`` (q_plus) and ``s`` (q_minus)."""
        a, b, i, j = self.a, self.b, self.i, self.j
        e = -1 if (i + j) % 2 else 1
        return (-e * _sin_sign(Fraction(a * j, b)) * _sin_sign(Fraction(i * b, a))
                * _sin_sign(self.q_plus) * _sin_sign(self.q_minus))

    def position(self) -> tuple[Fraction, Fraction]:
        """Billiard coordinates ``(X, Y)`` in the ``b x a`` box (cell centres)."""
        q = self.q_plus
        return (self.b * AngleFraction.of((self.a * q).numerator, (self.a * q).denominator).value,
                self.a * AngleFraction.of((self.b * q).numerator, (self.b * q).denominator).value)

    def x_float(self) -> float:
        x = cos_value(self.j * self.a, self.b).numeric()
        return float(-x if self.i % 2 else x)

    def y_float(self) -> float:
        y = cos_value(self.i * self.b, self.a).numeric()
        return float(-y if self.j % 2 else y)


def double_points(p: KnotParams) -> list[DoublePoint]:
    pts = [DoublePoint(i, j, p.a, p.b)
           for i in range(1, (p.a - 1) // 2 + 1) for j in range(1, p.b)]
    params = [q for d in pts for q in (d.folded_plus.value, d.folded_minus.value)]
    if len(set(params)) != len(params):
        raise CertificationError("double point parameters are not distinct")
    return pts


# -- Q_c ------------------------------------------------------------------------

def qc_eval(S, T, phi, c: int):
    """``Q_c(s, t, phi)`` from ``S = s + t`` and ``T = s t`` by the order-4 recurrence.

    Works on exact numbers, ``FixedInterval`` or mpmath values alike.
    """
    if c < 1:
        raise ValueError("c must be positive")
    Q = [0, 1, 2 * S + 4 * phi, -4 * T + 12 * phi * S + 4 * S * S + 12 * phi * phi - 3]
    if c < 4:
        return Q[c]
    u = 2 * (S + 2 * phi)
    v = 2 * (2 * phi * phi + 2 * T + 2 * phi * S + 1)
    q0, q1, q2, q3 = Q
    for _ in range(c - 3):
        q0, q1, q2, q3 = q1, q2, q3, u * (q3 + q1) - v * q2 - q0
    return q3


def qc_scaled(S, T, n: int, d: int, c: int):
    """``d^(c-1) Q_c(s, t, n/d)``: only integer constants, for exact zero tests."""
    R = [0, 1, 2 * d * S + 4 * n,
         -4 * T * d * d + 12 * n * S * d + 4 * S * S * d * d + 12 * n * n - 3 * d * d]
    if c < 4:
        return R[c]
    u = 2 * (d * S + 2 * n)
    v = 2 * (2 * n * n + 2 * T * d * d + 2 * n * S * d + d * d)
    d4 = d ** 4
    r0, r1, r2, r3 = R
    for _ in range(c - 3):
        r0, r1, r2, r3 = r1, r2, r3, u * (r3 + d * d * r1) - v * r2 - d4 * r0
    return r3


def _qc_expr(dp: DoublePoint, c: int, phi: Fraction) -> TrigPolyExpr:
    n, d = phi.numerator, phi.denominator

    def fn(ca, cb):
        return qc_scaled(2 * ca * cb, ca * ca + cb * cb - 1, n, d, c)

    return TrigPolyExpr.of(fn, AngleFraction.of(dp.i, dp.a), AngleFraction.of(dp.j, dp.b))


def qc_sign_interval(dp: DoublePoint, c: int, phi: Fraction) -> int:
    """Method 2: interval recurrence with doubling precision, exact zero check on stalls."""
    phi = Fraction(phi)
    prec = 64
    ca_v, cb_v = cos_value(dp.i, dp.a), cos_value(dp.j, dp.b)
    while True:
        ca, cb = ca_v.fixed(prec), cb_v.fixed(prec)
        val = qc_scaled(2 * ca * cb, ca.square() + cb.square() - 1, phi.numerator, phi.denominator, c)
        s = val.sign()
        if s:
            return s
        if s == 0 or prec == 256:
            if formal_null_test(_qc_expr(dp, c, phi)):
                raise CriticalPhase(f"phi = {phi} is critical at double point {(dp.i, dp.j)}")
        prec *= 2


def qc_sign_roots(cs: CriticalSet, dp: DoublePoint, phi: Fraction) -> int:
    """Method 1: ``(-1)^(roots strictly above phi)``; the leading coefficient is positive."""
    for idx, _ in cs.per_double_point.get((dp.i, dp.j), []):
        if compare_root(cs.roots[idx], Fraction(phi)) == 0:
            raise CriticalPhase(f"phi = {phi} is a critical value")
    n = cs.roots_above(dp.i, dp.j, phi)
    return -1 if n % 2 else 1


def crossing_signs(p: KnotParams, phi: Fraction, cs: Optional[CriticalSet] = None,
                   method: Optional[int] = None) -> list[int]:
    """``sign Q_c`` per double point, in ``double_points`` order."""
    phi = Fraction(phi)
    if method is None:
        method = 1 if cs is not None else 2
    pts = double_points(p)
    if method == 1:
        if cs is None:
            raise ValueError("method 1 needs a critical set")
        return [qc_sign_roots(cs, d, phi) for d in pts]
    return [qc_sign_interval(d, p.c, phi) for d in pts]


# -- diagrams ---------------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    label: int
    point: DoublePoint
    over_second: bool      # over strand is the later visit (larger parameter)
    twist: int             # +1 right, -1 left
    sign: int              # writhe contribution
    first: int             # traversal positions (0-based) of the two visits
    second: int

    @property
    def over_position(self) -> int:
        return self.second if self.over_second else self.first

    @property
    def under_position(self) -> int:
        return self.first if self.over_second else self.second


@dataclass
class KnotDiagram:
    params: KnotParams
    phi: Fraction
    crossings: list[Crossing]
    qc_signs: list[int] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.crossings)

    @property
    def mirror(self) -> bool:
        return self.params.mirror

    def gauss_code(self) -> list[int]:
        """Signed labels along the traversal: ``+k`` over, ``-k`` under."""
        seq = [0] * (2 * self.size)
        for x in self.crossings:
            seq[x.over_position] = x.label
            seq[x.under_position] = -x.label
        return seq

    def gauss_string(self) -> str:
        return " ".join(f"O{k}" if k > 0 else f"U{-k}" for k in self.gauss_code())

    def pd_code(self) -> list[tuple[int, int, int, int]]:
        n = 2 * self.size
        if n == 0:
            return []

        def edges(pos):
            # edge k runs from visit k to visit k + 1, labels 1..n
            return (pos - 1) % n + 1, pos % n + 1

        out = []
        for x in self.crossings:
            u_in, u_out = edges(x.under_position + 1)
            o_in, o_out = edges(x.over_position + 1)
            if x.sign > 0:
                out.append((u_in, o_out, u_out, o_in))
            else:
                out.append((u_in, o_in, u_out, o_out))
        return out

    @property
    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def mirrored(self) -> "KnotDiagram":
        flipped = [Crossing(x.label, x.point, not x.over_second, -x.twist, -x.sign, x.first, x.second)
                   for x in self.crossings]
        return KnotDiagram(self.params, self.phi, flipped, list(self.qc_signs))

    def key(self) -> tuple:
        return tuple((x.point.i, x.point.j, x.over_second, x.twist) for x in self.crossings)

    def to_json(self, invariants: Optional[dict] = None) -> dict:
        p = self.params
        a, b, c = p.original
        doc = {
            "params": {"a": a, "b": b, "c": c, "canonical": [p.a, p.b, p.c], "mirror": p.mirror},
            "phi": f"{self.phi.numerator}/{self.phi.denominator}",
            "crossings": self.size,
            "gauss": self.gauss_string(),
            "pd": [list(x) for x in self.pd_code()],
            "twists": [x.twist for x in self.crossings],
            "writhe": self.writhe,
        }
        if invariants is not None:
            doc["invariants"] = invariants
        return doc

    def dumps(self, invariants: Optional[dict] = None) -> str:
        return json.dumps(self.to_json(invariants), indent=1, sort_keys=True)


def build_diagram(p: KnotParams, phi, cs: Optional[CriticalSet] = None,
                  method: Optional[int] = None) -> KnotDiagram:
    """Diagram of the original (un-canonicalized) knot; the mirror flag flips signs and twists."""
    phi = Fraction(phi)
    pts = double_points(p)
    signs = crossing_signs(p, phi, cs, method)
    # traversal: parameter ascending = folded angle descending
    visits = []
    for n, d in enumerate(pts):
        visits.append((d.low.value, n))
        visits.append((d.high.value, n))
    visits.sort(key=lambda v: -v[0])
    where: dict[int, list[int]] = {}
    for pos, (_, n) in enumerate(visits):
        where.setdefault(n, []).append(pos)
    order = sorted(range(len(pts)), key=lambda n: where[n][0])
    crossings = []
    for label, n in enumerate(order, 1):
        d, s = pts[n], signs[n]
        first, second = where[n]
        over_second = s > 0                   # T_c(high + phi) > T_c(low + phi)
        twist = d.parity * s
        # over strand tangent: t (q_plus) or s (q_minus)
        over_is_plus = d.high_is_plus == over_second
        cross = d.tangent_cross_sign()
        sign = cross if over_is_plus else -cross
        if p.mirror:
            # swapping x and y reflects the plane; heights are untouched
            twist, sign = -twist, -sign
        crossings.append(Crossing(label, d, over_second, twist, sign, first, second))
    return KnotDiagram(p, phi, crossings, signs)
