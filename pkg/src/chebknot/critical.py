"""Critical phases of Chebyshev curves ``x = T_a(t), y = T_b(t), z = T_c(t + phi)``.

The critical values are the real roots of the product of the factors

    P(phi) = phi^2 + 2 cos a cos b phi + (cos^2 a - cos^2 g)(cos^2 b - cos^2 g) / sin^2 g

over ``a = i pi/A``, ``b = j pi/B``, ``g = k pi/C`` (linear ``phi + cos a cos b``
when ``g = pi/2``).  Roots are kept as (factor, branch) pairs with refinable
interval enclosures; coincidences are decided exactly.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Optional

from .cyclotomic import (
    AngleFraction,
    CosValue,
    TrigPolyExpr,
    certified_sign,
    cos_value,
    formal_null_test,
)
from .interval import DyadicInterval, FixedInterval, format_dyadic

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
START_PREC = 64
PREC_CAP = 4096


class InvalidParams(ValueError):
    pass


class CertificationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class KnotParams:
    a: int
    b: int
    c: int
    mirror: bool = False

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise InvalidParams("a, b, c must be positive")
        if gcd(self.a, self.b) != 1:
            raise InvalidParams(f"gcd({self.a}, {self.b}) != 1")
        if self.a % 2 == 0:
            raise InvalidParams("a must be odd; use KnotParams.make to canonicalize")

    @classmethod
    def make(cls, a: int, b: int, c: int) -> "KnotParams":
        """Canonical form: swap ``a, b`` when ``a`` is even and remember the mirror."""
        if min(a, b, c) < 1:
            raise InvalidParams("a, b, c must be positive")
        if gcd(a, b) != 1:
            raise InvalidParams(f"gcd({a}, {b}) != 1")
        if a % 2 == 0:
            return cls(b, a, c, True)
        return cls(a, b, c, False)

    @property
    def original(self) -> tuple[int, int, int]:
        return (self.b, self.a, self.c) if self.mirror else (self.a, self.b, self.c)

    def factor_indices(self):
        for i in range(1, (self.a - 1) // 2 + 1):
            for j in range(1, self.b):
                for k in range(1, self.c // 2 + 1):
                    yield i, j, k

    @property
    def degree_bound(self) -> int:
        return (self.a - 1) * (self.b - 1) * (self.c - 1) // 2


def zero_multiplicity(p: KnotParams) -> int:
    return (p.a - 1) // 2 * (gcd(p.b, p.c) - 1) + p.b // 2 * (gcd(p.a, p.c) - 1)


# -- quadratic factors ----------------------------------------------------------

def _numer(ca, cb, cg):
    return (ca * ca - cg * cg) * (cb * cb - cg * cg)


@dataclass(eq=False)
class QuadraticFactor:
    """One factor of the critical polynomial, indexed by ``(i, j, k)``."""

    params: KnotParams
    i: int
    j: int
    k: int

    def __post_init__(self):
        p = self.params
        if not (1 <= self.i <= (p.a - 1) // 2 and 1 <= self.j <= p.b - 1 and 1 <= self.k <= p.c // 2):
            raise ValueError(f"indices {(self.i, self.j, self.k)} out of range for {p}")
        self._cache: dict[int, tuple] = {}

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.k)

    @cached_property
    def alpha(self) -> AngleFraction:
        return AngleFraction.of(self.i, self.params.a)

    @cached_property
    def beta(self) -> AngleFraction:
        return AngleFraction.of(self.j, self.params.b)

    @cached_property
    def gamma(self) -> AngleFraction:
        return AngleFraction.of(self.k, self.params.c)

    @property
    def degree(self) -> int:
        return 1 if 2 * self.k == self.params.c else 2

    @cached_property
    def cos(self) -> tuple[CosValue, CosValue, CosValue]:
        return (cos_value(self.alpha.num, self.alpha.den),
                cos_value(self.beta.num, self.beta.den),
                cos_value(self.gamma.num, self.gamma.den))

    def slots(self, prec: int) -> tuple[FixedInterval, FixedInterval, FixedInterval]:
        return tuple(c.fixed(prec) for c in self.cos)

    # exact facts from integer arithmetic

    @property
    def constant_vanishes(self) -> bool:
        """``K = 0``: ``gamma`` equals ``alpha``, ``beta`` or ``pi - beta``."""
        g = self.gamma.value
        return g in (self.alpha.value, self.beta.value, 1 - self.beta.value)

    @property
    def linear_vanishes(self) -> bool:
        return 2 * self.j == self.params.b

    @property
    def degenerate(self) -> bool:
        """Double root at 0."""
        return self.degree == 2 and self.linear_vanishes and self.gamma.value == self.alpha.value

    def linear_coefficient(self, prec: int) -> FixedInterval:
        ca, cb, _ = self.slots(prec)
        return 2 * ca * cb

    def constant_term(self, prec: int) -> FixedInterval:
        ca, cb, cg = self.slots(prec)
        if self.degree == 1:
            return ca * cb
        return _numer(ca, cb, cg) / (1 - cg * cg)

    def discriminant_expr(self) -> TrigPolyExpr:
        # sin^2 g - sin^2 a sin^2 b, same sign as the discriminant
        return TrigPolyExpr.of(lambda ca, cb, cg: (1 - cg * cg) - (1 - ca * ca) * (1 - cb * cb),
                               self.alpha, self.beta, self.gamma)

    def value_expr(self, phi: Fraction) -> TrigPolyExpr:
        """``den^2 * sin^2 g * P(phi)`` (or ``den * P`` when linear) as a ring expression."""
        phi = Fraction(phi)
        n, d = phi.numerator, phi.denominator
        if self.degree == 1:
            return TrigPolyExpr.of(lambda ca, cb: n + d * ca * cb, self.alpha, self.beta)

        def fn(ca, cb, cg):
            s = 1 - cg * cg
            return (n * n + 2 * n * d * ca * cb) * s + d * d * _numer(ca, cb, cg)

        return TrigPolyExpr.of(fn, self.alpha, self.beta, self.gamma)

    def eval_interval(self, phi: FixedInterval) -> FixedInterval:
        prec = phi.prec
        if self.degree == 1:
            return phi + self.constant_term(prec)
        return phi * phi + self.linear_coefficient(prec) * phi + self.constant_term(prec)

    def __repr__(self) -> str:
        p = self.params
        return f"QuadraticFactor({p.a},{p.b},{p.c}; {self.i},{self.j},{self.k})"


def build_quadratic(p: KnotParams, i: int, j: int, k: int) -> QuadraticFactor:
    return QuadraticFactor(p, i, j, k)


def discriminant_sign(q: QuadraticFactor) -> int:
    if q.degree != 2:
        raise ValueError("linear factor has no discriminant")
    if q.degenerate:
        return 0
    s = certified_sign(q.discriminant_expr())
    if s == 0:
        raise CertificationError(f"{q}: discriminant vanishes outside the degenerate case")
    return s


# -- roots ----------------------------------------------------------------------

@dataclass(eq=False)
class FactorRoot:
    """Real root ``branch`` (0 = smaller) of a factor, with a refinable enclosure."""

    factor: QuadraticFactor
    branch: int
    exact: Optional[Fraction] = None
    multiplicity: int = 1
    _iv: Optional[DyadicInterval] = field(default=None, repr=False)
    _prec: int = field(default=0, repr=False)

    def enclosure(self, prec: int = START_PREC) -> DyadicInterval:
        if self.exact is not None:
            return DyadicInterval.point(self.exact)
        if self._iv is not None and self._prec >= prec:
            return self._iv
        iv = _branch_interval(self.factor, self.branch, prec).to_dyadic()
        if self._iv is not None:
            iv = iv.intersect(self._iv)
        self._iv, self._prec = iv, prec
        return iv

    @property
    def prec(self) -> int:
        return self._prec

    def refine(self) -> DyadicInterval:
        return self.enclosure(max(self._prec, START_PREC // 2) * 2)

    def key(self) -> tuple:
        return self.factor.indices + (self.branch,)

    def __repr__(self) -> str:
        v = self.exact if self.exact is not None else self._iv
        return f"FactorRoot({self.factor.indices}, branch={self.branch}, {v})"


def _branch_interval(q: QuadraticFactor, branch: int, prec: int) -> FixedInterval:
    ca, cb, cg = q.slots(prec)
    half_l = ca * cb
    if q.degree == 1:
        return -half_l
    k = _numer(ca, cb, cg) / (1 - cg * cg)
    disc = half_l.square() - k
    if disc.hi < 0:
        disc = FixedInterval(0, 0, prec)
    r = disc.sqrt()
    return -half_l - r if branch == 0 else -half_l + r


def factor_roots(q: QuadraticFactor) -> list[FactorRoot]:
    """Real roots of one factor, ascending."""
    zero = Fraction(0)
    if q.degree == 1:
        if q.linear_vanishes:
            return [FactorRoot(q, 0, zero)]
        return [FactorRoot(q, 0)]
    if q.degenerate:
        return [FactorRoot(q, 0, zero, 2)]
    if q.constant_vanishes:
        # roots 0 and -2 cos a cos b; cos a > 0, so the sign follows cos b
        if q.beta.value < Fraction(1, 2):
            return [FactorRoot(q, 0), FactorRoot(q, 1, zero)]
        return [FactorRoot(q, 0, zero), FactorRoot(q, 1)]
    s = discriminant_sign(q)
    if s < 0:
        return []
    return [FactorRoot(q, 0), FactorRoot(q, 1)]


def isolate_quadratic(q: QuadraticFactor, acc=Fraction(1, 1 << 64)) -> list[tuple[DyadicInterval, int]]:
    out = []
    for r in factor_roots(q):
        iv = r.enclosure(START_PREC)
        while iv.width > acc:
            iv = r.refine()
        out.append((iv, r.multiplicity))
    return out


class Relation(Enum):
    DISTINCT = "distinct"
    CASE1 = "identical-case1"
    CASE2 = "identical-case2"
    CASE3 = "identical-case3"


def same_family_relation(q1: QuadraticFactor, q2: QuadraticFactor) -> Relation:
    """Whether two factors with the same ``(i, j)`` are the same polynomial.

    They differ by a constant, so they share a root iff they coincide:
    case 1 both constants vanish, case 2 ``sin b = 1/2`` with ``g1 = a/2`` and
    ``g2 = pi/2 - a/2`` (either order), case 3 the same ``g``.
    """
    if (q1.i, q1.j) != (q2.i, q2.j) or q1.params != q2.params:
        raise ValueError("factors do not share (i, j)")
    if q1.degree != q2.degree:
        return Relation.DISTINCT
    g1, g2 = q1.gamma.value, q2.gamma.value
    if g1 == g2:
        return Relation.CASE3
    if q1.degree == 1:
        return Relation.DISTINCT
    if q1.constant_vanishes and q2.constant_vanishes:
        return Relation.CASE1
    a = q1.alpha.value
    if q1.beta.value in (Fraction(1, 6), Fraction(5, 6)):
        if {g1, g2} == {a / 2, Fraction(1, 2) - a / 2}:
            return Relation.CASE2
    return Relation.DISTINCT


def resultant_expr(q1: QuadraticFactor, q2: QuadraticFactor) -> TrigPolyExpr:
    """``s1^2 s2^2 Res(P1, P2)`` with ``s = sin^2 g``; same sign as the resultant."""

    def fn(a1, b1, g1, a2, b2, g2):
        s1 = 1 - g1 * g1
        s2 = 1 - g2 * g2
        n1 = _numer(a1, b1, g1)
        n2 = _numer(a2, b2, g2)
        l1 = 2 * a1 * b1
        l2 = 2 * a2 * b2
        # Res(x^2 + l1 x + k1, x^2 + l2 x + k2) = (k1 - k2)^2 - (l1 - l2)(l2 k1 - l1 k2)
        dk = n1 * s2 - n2 * s1
        return dk * dk - (l1 - l2) * (l2 * n1 * s2 - l1 * n2 * s1) * s1 * s2

    return TrigPolyExpr.of(fn, q1.alpha, q1.beta, q1.gamma, q2.alpha, q2.beta, q2.gamma)


def _pair_expr(q1: QuadraticFactor, q2: QuadraticFactor) -> TrigPolyExpr:
    """An expression vanishing iff the two factors share a root."""
    if q1.degree == 2 and q2.degree == 2:
        return resultant_expr(q1, q2)
    if q1.degree == 1 and q2.degree == 1:
        return TrigPolyExpr.of(lambda a1, b1, a2, b2: a1 * b1 - a2 * b2,
                               q1.alpha, q1.beta, q2.alpha, q2.beta)
    lin, quad = (q1, q2) if q1.degree == 1 else (q2, q1)

    def fn(a1, b1, a2, b2, g2):
        x = a1 * b1  # the linear root is -x
        s2 = 1 - g2 * g2
        return (x * x - 2 * a2 * b2 * x) * s2 + _numer(a2, b2, g2)

    return TrigPolyExpr.of(fn, lin.alpha, lin.beta, quad.alpha, quad.beta, quad.gamma)


FAIL = None


def resultant_sign_test(q1: QuadraticFactor, q2: QuadraticFactor, acc) -> int | None:
    """Interval sign of the pair expression at accuracy ``acc``; ``None`` is FAIL."""
    acc = Fraction(acc)
    prec = max(0, (acc.denominator // acc.numerator).bit_length() - 1)
    return _pair_expr(q1, q2).interval(prec).sign()


# -- coincidence decisions ----------------------------------------------------

class _Oracle:
    """Caches pair decisions between factors."""

    def __init__(self):
        self.pairs: dict[tuple, object] = {}
        self.stats = {"sign_tests": 0, "formal_tests": 0, "refinements": 0}

    def common_branches(self, q1: QuadraticFactor, q2: QuadraticFactor,
                        roots1: list[FactorRoot], roots2: list[FactorRoot]) -> set[tuple[int, int]]:
        """Pairs ``(b1, b2)`` of branches denoting the same real number."""
        key = (q1.indices, q2.indices)
        hit = self.pairs.get(key)
        if hit is not None:
            return hit
        result = self._decide(q1, q2, roots1, roots2)
        self.pairs[key] = result
        self.pairs[(q2.indices, q1.indices)] = {(b, a) for a, b in result}
        return result

    def _decide(self, q1, q2, roots1, roots2) -> set[tuple[int, int]]:
        if not roots1 or not roots2:
            return set()
        if (q1.i, q1.j) == (q2.i, q2.j):
            rel = same_family_relation(q1, q2)
            if rel is not Relation.DISTINCT:
                return {(r.branch, r.branch) for r in roots1}
            # different constants: only exact zeros can meet
            return {(r.branch, s.branch) for r in roots1 for s in roots2
                    if r.exact is not None and s.exact is not None and r.exact == s.exact}
        expr = _pair_expr(q1, q2)
        self.stats["sign_tests"] += 1
        if expr.interval(START_PREC).sign() is not None:
            return set()
        self.stats["formal_tests"] += 1
        if not formal_null_test(expr):
            return set()
        # they share a root
        if q1.degree == 2 and q2.degree == 2:
            same_l = formal_null_test(TrigPolyExpr.of(lambda a1, b1, a2, b2: a1 * b1 - a2 * b2,
                                                      q1.alpha, q1.beta, q2.alpha, q2.beta))
            if same_l:
                # equal linear terms and a common root force equal constants
                return {(r.branch, r.branch) for r in roots1}
        return {self._locate_common(q1, q2, roots1, roots2)}

    def _locate_common(self, q1, q2, roots1, roots2) -> tuple[int, int]:
        """The unique common root: identify its branch in each factor by refinement."""
        prec = START_PREC
        b1 = b2 = None
        while b1 is None or b2 is None:
            x = _common_root_interval(q1, q2, prec)
            if x is not None:
                if b1 is None:
                    b1 = _matching_branch(roots1, x, prec)
                if b2 is None:
                    b2 = _matching_branch(roots2, x, prec)
            prec *= 2
            self.stats["refinements"] += 1
            if prec > 4 * PREC_CAP:
                raise CertificationError(f"cannot locate the common root of {q1} and {q2}")
        return b1, b2


def _common_root_interval(q1, q2, prec) -> Optional[DyadicInterval]:
    if q1.degree == 1:
        return _branch_interval(q1, 0, prec).to_dyadic()
    if q2.degree == 1:
        return _branch_interval(q2, 0, prec).to_dyadic()
    dl = q1.linear_coefficient(prec) - q2.linear_coefficient(prec)
    if dl.contains_zero():
        return None
    x = (q2.constant_term(prec) - q1.constant_term(prec)) / dl
    return x.to_dyadic()


def _matching_branch(roots: list[FactorRoot], x: DyadicInterval, prec: int) -> Optional[int]:
    """The branch equal to ``x``, known once every other branch is separated from it."""
    if len(roots) == 1:
        return roots[0].branch
    ivs = [r.enclosure(prec) for r in roots]
    touching = [r for r, iv in zip(roots, ivs) if iv.overlaps(x)]
    if len(touching) == 1:
        return touching[0].branch
    return None


def coincide(r1: FactorRoot, r2: FactorRoot, oracle: Optional[_Oracle] = None) -> bool:
    """Exact equality of two factor roots."""
    if r1.factor is r2.factor:
        return r1.branch == r2.branch
    if r1.exact is not None and r2.exact is not None:
        return r1.exact == r2.exact
    oracle = oracle or _Oracle()
    roots1 = factor_roots(r1.factor) if r1.factor is not None else [r1]
    roots2 = factor_roots(r2.factor) if r2.factor is not None else [r2]
    return (r1.branch, r2.branch) in oracle.common_branches(r1.factor, r2.factor, roots1, roots2)


# -- the critical set ---------------------------------------------------------

@dataclass
class CriticalRoot:
    members: list[FactorRoot]
    interval: DyadicInterval
    exact: Optional[Fraction] = None

    @property
    def multiplicity(self) -> int:
        return sum(m.multiplicity for m in self.members)

    @property
    def provenance(self) -> list[tuple[int, int, int]]:
        return sorted({m.factor.indices for m in self.members})

    def refine(self) -> DyadicInterval:
        if self.exact is not None:
            return self.interval
        m = min(self.members, key=lambda r: r.prec)
        m.refine()
        iv = self.members[0].enclosure(self.members[0].prec)
        for r in self.members[1:]:
            iv = iv.intersect(r.enclosure(r.prec))
        self.interval = iv
        return iv

    def to_json(self) -> dict:
        return {
            "lo": format_dyadic(self.interval.lo),
            "hi": format_dyadic(self.interval.hi),
            "multiplicity": self.multiplicity,
            "provenance": [list(t) for t in self.provenance],
        }


@dataclass
class CriticalSet:
    params: KnotParams
    roots: list[CriticalRoot]
    per_double_point: dict  # (i, j) -> [(root index, multiplicity)], ascending
    samples: list[Fraction] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def distinct_count(self) -> int:
        return len(self.roots)

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def multiplicity_at_zero(self) -> int:
        for r in self.roots:
            if r.exact == 0:
                return r.multiplicity
        return 0

    def roots_above(self, i: int, j: int, phi: Fraction) -> int:
        """Roots of the double point ``(i, j)`` strictly above ``phi``, with multiplicity."""
        phi = Fraction(phi)
        count = 0
        for idx, mult in self.per_double_point.get((i, j), []):
            if compare_root(self.roots[idx], phi) > 0:
                count += mult
        return count

    def is_critical(self, phi: Fraction) -> bool:
        return any(compare_root(r, Fraction(phi)) == 0 for r in self.roots)

    def to_json(self) -> dict:
        p = self.params
        return {
            "version": FORMAT_VERSION,
            "params": {"a": p.a, "b": p.b, "c": p.c, "mirror": p.mirror},
            "distinct": self.distinct_count,
            "with_multiplicity": self.total_multiplicity,
            "zero_multiplicity": self.multiplicity_at_zero(),
            "roots": [r.to_json() for r in self.roots],
            "samples": [_fmt_q(s) for s in self.samples],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def _fmt_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def compare_root(r: CriticalRoot, phi: Fraction) -> int:
    """Sign of ``root - phi``; 0 only if ``phi`` is exactly the root."""
    if r.exact is not None:
        return (r.exact > phi) - (r.exact < phi)
    steps = 0
    while r.interval.contains(phi):
        m = r.members[0]
        if steps == 8:
            # a rational root is rare but possible: settle it exactly
            if certified_sign(m.factor.value_expr(phi)) == 0:
                r.exact = phi
                r.interval = DyadicInterval.point(phi)
                return 0
        r.refine()
        steps += 1
    return 1 if r.interval.lo > phi else -1


def critical_set(p: KnotParams, acc=Fraction(1, 1 << 64)) -> CriticalSet:
    acc = Fraction(acc)
    oracle = _Oracle()
    factors = [QuadraticFactor(p, i, j, k) for i, j, k in p.factor_indices()]
    froots: dict[tuple, list[FactorRoot]] = {}
    all_roots: list[FactorRoot] = []
    for q in factors:
        rs = factor_roots(q)
        froots[q.indices] = rs
        all_roots.extend(rs)
    for r in all_roots:
        r.enclosure(START_PREC)

    classes = _merge(all_roots, froots, oracle)
    for cl in classes:
        while cl.interval.width > acc:
            cl.refine()
    index = {}
    for n, cl in enumerate(classes):
        for m in cl.members:
            index[id(m)] = n
    per_dp: dict = {}
    for i in range(1, (p.a - 1) // 2 + 1):
        for j in range(1, p.b):
            tally: dict[int, int] = {}
            for k in range(1, p.c // 2 + 1):
                for r in froots[(i, j, k)]:
                    n = index[id(r)]
                    tally[n] = tally.get(n, 0) + r.multiplicity
            per_dp[(i, j)] = sorted(tally.items())
    cs = CriticalSet(p, classes, per_dp, stats=dict(oracle.stats))
    cs.samples = sample_points(cs)
    return cs


def _merge(all_roots: list[FactorRoot], froots: dict, oracle: _Oracle) -> list[CriticalRoot]:
    """Group equal roots, then refine until the groups are disjoint and sorted."""
    items = sorted(all_roots, key=lambda r: (r.enclosure().lo, r.key()))
    clusters = _overlap_clusters(items, lambda r: r.enclosure(r.prec or START_PREC))
    classes: list[CriticalRoot] = []
    for cluster in clusters:
        groups = _equal_groups(cluster, froots, oracle)
        classes.extend(_separate(groups))
    classes.sort(key=lambda c: c.interval.lo)
    for x, y in zip(classes, classes[1:]):
        if not x.interval.hi < y.interval.lo:
            raise CertificationError("critical root classes are not disjoint")
    return classes


def _overlap_clusters(items, iv_of) -> list[list]:
    clusters: list[list] = []
    hi = None
    for r in items:
        iv = iv_of(r)
        if clusters and iv.lo <= hi:
            clusters[-1].append(r)
            hi = max(hi, iv.hi)
        else:
            clusters.append([r])
            hi = iv.hi
    return clusters


def _equal_groups(cluster: list[FactorRoot], froots: dict, oracle: _Oracle) -> list[list[FactorRoot]]:
    if len(cluster) == 1:
        return [cluster]
    parent = list(range(len(cluster)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(len(cluster)):
        for v in range(u + 1, len(cluster)):
            if find(u) == find(v):
                continue
            r, s = cluster[u], cluster[v]
            if not r.enclosure(r.prec).overlaps(s.enclosure(s.prec)):
                continue
            if _equal(r, s, froots, oracle):
                parent[find(u)] = find(v)
    groups: dict[int, list] = {}
    for u in range(len(cluster)):
        groups.setdefault(find(u), []).append(cluster[u])
    return list(groups.values())


def _equal(r: FactorRoot, s: FactorRoot, froots: dict, oracle: _Oracle) -> bool:
    if r.exact is not None and s.exact is not None:
        return r.exact == s.exact
    if r.factor is s.factor:
        return r.branch == s.branch
    pairs = oracle.common_branches(r.factor, s.factor, froots[r.factor.indices], froots[s.factor.indices])
    return (r.branch, s.branch) in pairs


def _separate(groups: list[list[FactorRoot]]) -> list[CriticalRoot]:
    """Refine distinct groups of one cluster until their hulls are disjoint."""
    classes = []
    for g in groups:
        exact = next((m.exact for m in g if m.exact is not None), None)
        cl = CriticalRoot(g, DyadicInterval.point(exact) if exact is not None else g[0].enclosure(g[0].prec), exact)
        if exact is None:
            iv = cl.interval
            for m in g[1:]:
                iv = iv.intersect(m.enclosure(m.prec))
            cl.interval = iv
        classes.append(cl)
    rounds = 0
    while True:
        classes.sort(key=lambda c: c.interval.lo)
        clash = {n for n in range(len(classes) - 1)
                 if classes[n].interval.hi >= classes[n + 1].interval.lo}
        if not clash:
            return classes
        for n in clash:
            for cl in (classes[n], classes[n + 1]):
                if cl.exact is None:
                    cl.refine()
        rounds += 1
        if rounds > 16:
            raise CertificationError("distinct critical roots failed to separate")


# -- sample points ------------------------------------------------------------

def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def simplest_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    """Simplest rational in the open interval ``(lo, hi)``; ``None`` is infinite.

    Simplest means least denominator, then least ``|numerator|``, negative
    first on ties.
    """
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("empty interval")
    if (lo is None or lo < 0) and (hi is None or hi > 0):
        return Fraction(0)
    if hi is not None and hi <= 0:
        return -simplest_between(-hi, None if lo is None else -lo)
    # 0 <= lo < hi
    n = _floor(lo) + 1
    if hi is None or n < hi:
        return Fraction(n)
    fl = _floor(lo)
    frac_lo = lo - fl
    inner = simplest_between(1 / (hi - fl), None if frac_lo == 0 else 1 / frac_lo)
    return fl + 1 / inner


def sample_points(cs: CriticalSet) -> list[Fraction]:
    roots = cs.roots
    if not roots:
        return [Fraction(0)]
    out = []
    for n in range(len(roots) + 1):
        left = roots[n - 1] if n > 0 else None
        right = roots[n] if n < len(roots) else None
        out.append(_sample(left, right))
    return out


def _sample(left: Optional[CriticalRoot], right: Optional[CriticalRoot]) -> Fraction:
    rounds = 0
    while True:
        gap_lo = None if left is None else left.interval.hi
        gap_hi = None if right is None else right.interval.lo
        hull_lo = None if left is None else left.interval.lo
        hull_hi = None if right is None else right.interval.hi
        q = simplest_between(gap_lo, gap_hi)
        if simplest_between(hull_lo, hull_hi) == q:
            return q
        rounds += 1
        if rounds % 8 == 0:
            # the hull's simplest rational may be a root itself
            h = simplest_between(hull_lo, hull_hi)
            for r in (left, right):
                if r is not None and r.exact is None and r.interval.contains(h):
                    compare_root(r, h)
        for r in (left, right):
            if r is not None and r.exact is None:
                r.refine()
