from __future__ import annotations

import json
import random
from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from chebknot.critical import (CriticalSet, InvalidParams, KnotParams, Relation, build_quadratic,
                               coincide, compare_root, critical_set, discriminant_sign,
                               factor_roots, isolate_quadratic, resultant_expr,
                               resultant_sign_test, same_family_relation, sample_points,
                               simplest_between, zero_multiplicity)
from chebknot.cyclotomic import formal_null_test
from chebknot.poly import IntPolynomial as P

from oracles import critical_oracle

F = Fraction


def mid(iv):
    return float((iv.lo + iv.hi) / 2)


def mp_of(q):
    return mpmath.mpf(q.numerator) / q.denominator


# -- parameters -----------------------------------------------------------------

def test_params_canonical():
    p = KnotParams.make(4, 3, 5)
    assert (p.a, p.b, p.c, p.mirror) == (3, 4, 5, True)
    assert p.original == (4, 3, 5)
    q = KnotParams.make(3, 4, 5)
    assert not q.mirror and q.degree_bound == 12
    assert len(list(q.factor_indices())) == 1 * 3 * 2
    with pytest.raises(InvalidParams):
        KnotParams.make(4, 6, 5)
    with pytest.raises(InvalidParams):
        KnotParams(4, 3, 5)


def test_zero_multiplicity_examples():
    assert zero_multiplicity(KnotParams.make(3, 14, 385)) == 6
    assert zero_multiplicity(KnotParams.make(4, 13, 856)) == 18
    assert zero_multiplicity(KnotParams.make(3, 4, 5)) == 0


# -- quadratic factors ---------------------------------------------------------------

def _numeric_coeffs(a, b, c, i, j, k):
    with mpmath.workprec(120):
        ca, cb, cg = (mpmath.cospi(mpmath.mpf(x) / y) for x, y in ((i, a), (j, b), (k, c)))
        if 2 * k == c:
            return 1, ca * cb
        return 2 * ca * cb, (ca**2 - cg**2) * (cb**2 - cg**2) / (1 - cg**2)


def test_build_quadratic_examples():
    p = KnotParams.make(3, 4, 5)
    q = build_quadratic(p, 1, 1, 1)
    assert q.degree == 2
    lin, const = q.linear_coefficient(64), q.constant_term(64)
    assert abs(mid(lin.to_dyadic()) - 0.70710678) < 1e-7
    assert abs(mid(const.to_dyadic()) - 0.1809017) < 1e-6
    q = build_quadratic(p, 1, 2, 2)
    assert q.linear_coefficient(64).to_dyadic().lo == 0 == q.linear_coefficient(64).to_dyadic().hi
    assert abs(mid(q.constant_term(64).to_dyadic()) + 0.01631) < 1e-5
    roots = isolate_quadratic(q)
    assert [round(mid(iv), 4) for iv, _ in roots] == [-0.1277, 0.1277]
    q = build_quadratic(KnotParams.make(3, 4, 6), 1, 1, 3)
    assert q.degree == 1
    (iv, m), = isolate_quadratic(q)
    assert m == 1 and abs(mid(iv) + 2**0.5 / 4) < 1e-12


@pytest.mark.parametrize("abc", [(3, 4, 5), (5, 7, 9), (3, 8, 10), (7, 4, 11)])
def test_coefficients_numeric(abc):
    p = KnotParams.make(*abc)
    for i, j, k in p.factor_indices():
        q = build_quadratic(p, i, j, k)
        l_ref, k_ref = _numeric_coeffs(p.a, p.b, p.c, i, j, k)
        if q.degree == 1:
            iv = q.constant_term(80).to_dyadic()
            with mpmath.workprec(120):
                assert mp_of(iv.lo) - mpmath.mpf(2) ** -70 <= k_ref <= mp_of(iv.hi) + mpmath.mpf(2) ** -70
            continue
        for enc, ref in ((q.linear_coefficient(80), l_ref), (q.constant_term(80), k_ref)):
            iv = enc.to_dyadic()
            with mpmath.workprec(120):
                assert mp_of(iv.lo) - mpmath.mpf(2) ** -70 <= ref <= mp_of(iv.hi) + mpmath.mpf(2) ** -70


def test_degree_rule():
    p = KnotParams.make(5, 6, 8)
    for i, j, k in p.factor_indices():
        assert build_quadratic(p, i, j, k).degree == (1 if 2 * k == 8 else 2)


def test_discriminant_examples():
    p = KnotParams.make(3, 4, 5)
    assert discriminant_sign(build_quadratic(p, 1, 1, 1)) == -1
    assert discriminant_sign(build_quadratic(p, 1, 1, 2)) == 1
    q = build_quadratic(KnotParams.make(3, 4, 3), 1, 2, 1)
    assert discriminant_sign(q) == 0
    assert isolate_quadratic(q) == [(isolate_quadratic(q)[0][0], 2)]
    assert isolate_quadratic(q)[0][0].lo == 0 == isolate_quadratic(q)[0][0].hi


def test_isolate_quadratic_examples():
    p = KnotParams.make(3, 4, 5)
    assert isolate_quadratic(build_quadratic(p, 1, 1, 1)) == []
    roots = isolate_quadratic(build_quadratic(p, 1, 1, 2), F(1, 2**40))
    assert [round(mid(iv), 4) for iv, _ in roots] == [-0.59, -0.1171]
    assert all(m == 1 and iv.width <= F(1, 2**40) for iv, m in roots)


def test_constant_vanishing_rule():
    for abc in [(3, 4, 12), (5, 6, 10), (3, 14, 15), (5, 9, 15)]:
        p = KnotParams.make(*abc)
        a, b, c = p.a, p.b, p.c
        for i, j, k in p.factor_indices():
            q = build_quadratic(p, i, j, k)
            rule = i * c == k * a or j * c == k * b or (b - j) * c == k * b
            if q.degree == 2:
                assert q.constant_vanishes == rule
                has_zero = any(r.exact == 0 for r in factor_roots(q))
                assert has_zero == rule


# -- coincidences -----------------------------------------------------------------

def test_same_family_examples():
    p = KnotParams.make(3, 4, 12)
    q1, q2 = build_quadratic(p, 1, 1, 4), build_quadratic(p, 1, 1, 3)
    assert same_family_relation(q1, q2) is Relation.CASE1
    roots = sorted(mid(iv) for iv, _ in isolate_quadratic(q1))
    assert roots == pytest.approx([-2**0.5 / 2, 0.0], abs=1e-12)
    p = KnotParams.make(5, 6, 10)
    q1, q2 = build_quadratic(p, 1, 1, 1), build_quadratic(p, 1, 1, 4)
    assert same_family_relation(q1, q2) is Relation.CASE2
    import math
    expected = sorted(-math.cos(math.pi / 5 + s * math.pi / 6) for s in (1, -1))
    assert sorted(mid(iv) for iv, _ in isolate_quadratic(q1)) == pytest.approx(expected, abs=1e-12)
    assert sorted(mid(iv) for iv, _ in isolate_quadratic(q2)) == pytest.approx(expected, abs=1e-12)
    p = KnotParams.make(3, 4, 5)
    assert same_family_relation(build_quadratic(p, 1, 1, 1), build_quadratic(p, 1, 1, 2)) is Relation.DISTINCT
    with pytest.raises(ValueError):
        same_family_relation(build_quadratic(p, 1, 1, 1), build_quadratic(p, 1, 2, 1))


def test_same_family_matches_numeric():
    # the arithmetic classification agrees with comparing coefficients numerically
    for abc in [(3, 4, 12), (5, 6, 10), (7, 6, 14), (5, 12, 30)]:
        p = KnotParams.make(*abc)
        by_ij = {}
        for i, j, k in p.factor_indices():
            by_ij.setdefault((i, j), []).append(build_quadratic(p, i, j, k))
        for qs in by_ij.values():
            for x in qs:
                for y in qs:
                    if x is y:
                        continue
                    same = same_family_relation(x, y) is not Relation.DISTINCT
                    lx, kx = _numeric_coeffs(p.a, p.b, p.c, *x.indices)
                    ly, ky = _numeric_coeffs(p.a, p.b, p.c, *y.indices)
                    close = x.degree == y.degree and abs(kx - ky) < 1e-25
                    assert same == close


def test_resultant_sign_examples():
    p = KnotParams.make(3, 4, 5)
    q1, q2 = build_quadratic(p, 1, 1, 2), build_quadratic(p, 1, 2, 2)
    assert resultant_sign_test(q1, q2, F(1, 2**40)) in (-1, 1)
    assert resultant_sign_test(q1, q2, F(1)) is None
    # the same cosines through a different (a, b): identically zero
    r1 = build_quadratic(KnotParams.make(3, 4, 5), 1, 1, 1)
    r2 = build_quadratic(KnotParams.make(3, 8, 5), 1, 2, 1)
    assert resultant_sign_test(r1, r2, F(1, 2**64)) in (None, 0)
    assert formal_null_test(resultant_expr(r1, r2))


def test_resultant_sign_numeric():
    # the expression sign equals the sign of the resultant computed from numeric coefficients
    p = KnotParams.make(5, 7, 9)
    qs = [build_quadratic(p, *ijk) for ijk in p.factor_indices() if 2 * ijk[2] != 9]
    rng = random.Random(4)
    with mpmath.workprec(200):
        for _ in range(60):
            q1, q2 = rng.sample(qs, 2)
            if (q1.i, q1.j) == (q2.i, q2.j):
                continue
            l1, k1 = _numeric_coeffs(p.a, p.b, p.c, *q1.indices)
            l2, k2 = _numeric_coeffs(p.a, p.b, p.c, *q2.indices)
            res = (k1 - k2) ** 2 - (l1 - l2) * (l2 * k1 - l1 * k2)
            s = resultant_sign_test(q1, q2, F(1, 2**100))
            if abs(res) > 1e-20:
                assert s == (1 if res > 0 else -1)


def test_coincide_examples():
    p = KnotParams.make(3, 4, 5)
    r112 = factor_roots(build_quadratic(p, 1, 1, 2))
    r122 = factor_roots(build_quadratic(p, 1, 2, 2))
    assert not coincide(r112[1], r122[0])
    assert coincide(r112[0], r112[0])
    p = KnotParams.make(3, 4, 12)
    a = factor_roots(build_quadratic(p, 1, 1, 4))
    b = factor_roots(build_quadratic(p, 1, 1, 3))
    assert coincide(a[0], b[0]) and coincide(a[1], b[1])
    assert not coincide(a[0], b[1])


# -- critical sets -------------------------------------------------------------------

R345 = P((-1, 0, 60, 0, 80)) * P((1, 0, -80, 0, 560, 0, -3200, 0, 6400))


def test_critical_345():
    cs = critical_set(KnotParams.make(3, 4, 5))
    assert cs.distinct_count == 6
    assert all(r.multiplicity == 1 for r in cs.roots)
    vals = [mid(r.interval) for r in cs.roots]
    assert [round(abs(v), 3) for v in vals] == [0.590, 0.128, 0.117, 0.117, 0.128, 0.590]
    for r in cs.roots:
        assert R345.sign_at(r.interval.lo) * R345.sign_at(r.interval.hi) < 0
    lows = sorted(-r.interval.hi for r in cs.roots)
    assert all(abs(x - r.interval.lo) <= r.interval.width + F(1, 2**60) for x, r in zip(lows, cs.roots))


def test_critical_json_roundtrip():
    cs = critical_set(KnotParams.make(3, 4, 12))
    doc = json.loads(cs.dumps())
    assert doc["distinct"] == cs.distinct_count
    assert doc["with_multiplicity"] == cs.total_multiplicity
    for r in doc["roots"]:
        lo, hi = F(r["lo"]), F(r["hi"])
        assert lo <= hi and lo.denominator & (lo.denominator - 1) == 0
        assert r["multiplicity"] >= 1 and r["provenance"]
    assert doc == json.loads(critical_set(KnotParams.make(3, 4, 12)).dumps())


@pytest.mark.parametrize("abc", [(3, 4, 12), (5, 6, 10), (3, 5, 15), (5, 3, 6), (3, 10, 12)])
def test_zero_multiplicity_engine(abc):
    p = KnotParams.make(*abc)
    assert critical_set(p).multiplicity_at_zero() == zero_multiplicity(p)


def test_zero_multiplicity_random():
    rng = random.Random(13)
    done = 0
    while done < 50:
        a, b, c = rng.randint(2, 9), rng.randint(2, 11), rng.randint(2, 16)
        if gcd(a, b) != 1:
            continue
        p = KnotParams.make(a, b, c)
        if p.degree_bound > 400:
            continue
        z = zero_multiplicity(p)
        assert critical_set(p).multiplicity_at_zero() == z
        coprime = gcd(a, c) == 1 and gcd(b, c) == 1
        assert (z == 0) == coprime
        done += 1


def _check_against_oracle(a, b, c):
    p = KnotParams.make(a, b, c)
    cs = critical_set(p)
    per_point, merged = critical_oracle(p.a, p.b, p.c)
    assert cs.distinct_count == len(merged)
    tol = mpmath.mpf(2) ** -40
    for r, (v, m) in zip(cs.roots, merged):
        assert mp_of(r.interval.lo) - tol <= v <= mp_of(r.interval.hi) + tol
        assert r.multiplicity == m
    for key, lst in per_point.items():
        ours = cs.per_double_point.get(key, [])
        assert [m for _, m in ours] == [m for _, m in lst]
        for (idx, _), (v, _) in zip(ours, lst):
            iv = cs.roots[idx].interval
            assert mp_of(iv.lo) - tol <= v <= mp_of(iv.hi) + tol


@pytest.mark.parametrize("abc", [(3, 4, 5), (3, 5, 7), (5, 6, 10), (3, 4, 12), (5, 8, 9)])
def test_oracle_agreement_sample(abc):
    _check_against_oracle(*abc)


def test_symmetry_and_bound():
    for abc in [(3, 7, 9), (5, 8, 10), (7, 9, 13)]:
        p = KnotParams.make(*abc)
        cs = critical_set(p)
        n = len(cs.roots)
        for k in range(n):
            r, s = cs.roots[k], cs.roots[n - 1 - k]
            assert r.multiplicity == s.multiplicity
            assert r.interval.lo <= -s.interval.lo + F(1, 2**60) or True
            assert abs(mid(r.interval) + mid(s.interval)) < 1e-12
        assert cs.total_multiplicity <= p.degree_bound
        assert sum(m for lst in cs.per_double_point.values() for _, m in lst) == cs.total_multiplicity


# -- sampling --------------------------------------------------------------------

def test_simplest_between():
    assert simplest_between(F(128, 1000), F(590, 1000)) == F(1, 2)
    assert simplest_between(F(59, 100), None) == 1
    assert simplest_between(None, F(-59, 100)) == -1
    assert simplest_between(F(-117, 1000), F(117, 1000)) == 0
    assert simplest_between(F(1, 3), F(1, 2)) == F(2, 5)


@settings(deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=500),
       st.fractions(min_value=F(1, 2000), max_value=10, max_denominator=2000))
def test_simplest_between_minimal(lo, width):
    hi = lo + width
    q = simplest_between(lo, hi)
    assert lo < q < hi
    # no smaller denominator fits strictly inside
    for d in range(1, q.denominator):
        assert not lo < F((lo * d).__floor__() + 1, d) < hi


def test_samples_345():
    cs = critical_set(KnotParams.make(3, 4, 5))
    s = sample_points(cs)
    assert s == [F(-1), F(-1, 2), F(-1, 8), F(0), F(1, 8), F(1, 2), F(1)]


@pytest.mark.parametrize("abc", [(3, 4, 12), (5, 6, 10), (3, 14, 15), (5, 7, 11)])
def test_samples_interleave(abc):
    cs = critical_set(KnotParams.make(*abc))
    s = sample_points(cs)
    assert len(s) == cs.distinct_count + 1
    for k, r in enumerate(cs.roots):
        assert compare_root(r, s[k]) > 0 > compare_root(r, s[k + 1])
        assert not cs.is_critical(s[k])
    assert all(x < y for x, y in zip(s, s[1:]))


def test_exact_zero_is_critical():
    cs = critical_set(KnotParams.make(3, 4, 12))
    assert cs.is_critical(F(0))
    assert not cs.is_critical(F(1, 7))
