from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import pytest
import sympy

from chebknot.critical import KnotParams, critical_set, sample_points
from chebknot.diagram import build_diagram
from chebknot.invariants import (CutoffExceeded, LaurentPolynomial, TwoBridgeFraction,
                                 bracket_bruteforce, continued_fraction, determinant,
                                 goeritz_determinant, jones, jones_from_pd, kauffman_bracket,
                                 pd_writhe, twist_sequence, two_bridge_fraction)

F = Fraction
L = LaurentPolynomial.from_dict

TREFOIL = [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]
FIGURE8 = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]
CINQUEFOIL = [(1, 6, 2, 7), (3, 8, 4, 9), (5, 10, 6, 1), (7, 2, 8, 3), (9, 4, 10, 5)]


def torus_jones(p: int, q: int) -> LaurentPolynomial:
    """Positive torus knot Jones polynomial from the closed formula, via sympy."""
    t = sympy.Symbol("t")
    expr = t ** sympy.Rational((p - 1) * (q - 1), 2) * (1 - t**(p + 1) - t**(q + 1) + t**(p + q)) / (1 - t**2)
    poly = sympy.Poly(sympy.cancel(expr), t)
    return L({m[0]: int(c) for m, c in zip(poly.monoms(), poly.coeffs())})


def test_laurent_basics():
    x = L({1: 1, 3: 1, 4: -1})
    assert str(x) == "t + t^3 - t^4"
    assert x.invert().invert() == x
    assert x(1) == 1 and x(-1) == -3
    assert (x * L({-1: 1})) == x.shift(-1)
    assert LaurentPolynomial.one().is_one()


def test_known_pd_codes():
    assert pd_writhe(TREFOIL) == 3
    assert jones_from_pd(TREFOIL, 3) == torus_jones(2, 3)
    assert pd_writhe(FIGURE8) == 0
    assert jones_from_pd(FIGURE8, 0) == L({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert pd_writhe(CINQUEFOIL) == -5
    assert jones_from_pd(CINQUEFOIL, -5) == torus_jones(2, 5).invert()
    assert [goeritz_determinant(pd) for pd in (TREFOIL, FIGURE8, CINQUEFOIL)] == [3, 5, 5]


def test_bracket_on_known_codes():
    for pd in (TREFOIL, FIGURE8, CINQUEFOIL):
        assert kauffman_bracket(pd) == bracket_bruteforce(pd)


def _samples(grid, max_size=12):
    for a, b, c in grid:
        if gcd(a, b) != 1:
            continue
        p = KnotParams.make(a, b, c)
        cs = critical_set(p)
        for phi in sample_points(cs):
            d = build_diagram(p, phi, cs)
            if d.size <= max_size:
                yield d


GRID = [(a, b, c) for a in (3, 4, 5) for b in range(4, 8) for c in range(4, 10) if a < b]


def test_bracket_matches_state_sum():
    n = 0
    for d in _samples(GRID, 11):
        pd = d.pd_code()
        assert kauffman_bracket(pd) == bracket_bruteforce(pd)
        n += 1
    assert n > 100


def test_determinant_matches_goeritz():
    for d in _samples(GRID, 16):
        v = jones(d)
        assert abs(v(-1)) == goeritz_determinant(d.pd_code()) == determinant(d)
        assert v(1) == 1


def test_mirror_inverts_jones():
    for d in itertools.islice(_samples(GRID, 14), 80):
        assert jones(d.mirrored()) == jones(d).invert()


def test_chebyshev_trefoil_and_figure_eight():
    d = build_diagram(KnotParams.make(3, 4, 5), F(0))
    assert jones(d) == torus_jones(2, 3)
    assert jones(build_diagram(KnotParams.make(3, 5, 7), F(0))) == L({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})


def test_cutoff():
    d = build_diagram(KnotParams.make(3, 13, 14), F(1, 3))
    with pytest.raises(CutoffExceeded):
        jones(d, cutoff=d.size - 1)


# -- two-bridge ------------------------------------------------------------------

def test_continued_fraction():
    assert continued_fraction([2, 1, 3]) == (11, 4)
    assert continued_fraction([3]) == (3, 1)
    assert continued_fraction([1, 1, 1, 1]) == (5, 3)


def test_fraction_classes():
    f = TwoBridgeFraction(23, 19)
    assert f.canonical() == TwoBridgeFraction(23, 17)
    assert f.equivalent(TwoBridgeFraction(23, 17))
    assert not f.equivalent(TwoBridgeFraction(23, 4))
    assert f.same_up_to_mirror(TwoBridgeFraction(23, 4))
    assert TwoBridgeFraction(5, 2).equivalent(TwoBridgeFraction(5, 3).mirror())
    with pytest.raises(ValueError):
        TwoBridgeFraction(0, 1)


def test_trefoil_twists():
    d = build_diagram(KnotParams.make(3, 4, 5), F(0))
    assert [x.twist for x in d.crossings] == [-1, 1, -1]
    seq = twist_sequence(d)
    terms = [m if n % 2 == 0 else -m for n, m in enumerate(seq)]
    assert len(set(terms)) == 1
    assert two_bridge_fraction(d).alpha == 3


TB_GRID = [(3, b, c) for b in (4, 5, 7, 8, 10, 11) for c in range(b + 1, b + 7)] + \
          [(4, b, c) for b in (5, 7, 9) for c in range(b + 1, b + 5)]


def _two_bridge_corpus():
    out = []
    for d in _samples(TB_GRID, 16):
        out.append((d, two_bridge_fraction(d), jones(d)))
    return out


def test_two_bridge_consistency():
    corpus = _two_bridge_corpus()
    assert len(corpus) > 150
    for d, f, v in corpus:
        assert f.alpha == determinant(d)
    for (_, f, v), (_, g, w) in itertools.combinations(corpus, 2):
        if f.equivalent(g):
            assert v == w
        elif f.same_up_to_mirror(g):
            assert v == w.invert()
        if v != w and v != w.invert():
            assert not f.same_up_to_mirror(g)


def test_two_bridge_rejects_other_a():
    d = build_diagram(KnotParams.make(5, 6, 7), F(1, 3))
    with pytest.raises(ValueError):
        two_bridge_fraction(d)


def test_nine_five():
    d = build_diagram(KnotParams.make(3, 13, 326), F(1, 85))
    assert d.size == 12
    v = jones(d)
    assert v == L({1: 1, 2: -2, 3: 3, 4: -3, 5: 4, 6: -3, 7: 3, 8: -2, 9: 1, 10: -1})
    assert determinant(d) == 23
    f = two_bridge_fraction(d)
    assert f == TwoBridgeFraction(23, 19)
    # 23/4 = [5, 1, 3] is the standard form of 9_5
    assert f.same_up_to_mirror(TwoBridgeFraction(23, 4))
