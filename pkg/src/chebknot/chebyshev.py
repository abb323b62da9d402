"""Chebyshev families, minimal polynomials of cos(pi/n) and their factorizations.

Notation: ``T_n`` (first kind), ``V_n`` (second kind, ``V_n(cos x) = sin nx / sin x``),
``M_n`` the primitive minimal polynomial of ``cos(pi/n)`` and ``Pi_n`` the
odd-index product polynomial with ``(-1)^n Pi_n(-T_2) = V_{2n+1}``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .poly import IntPolynomial
from . import mincache


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def split_two(n: int) -> tuple[int, int]:
    """Write ``n = 2^k q`` with ``q`` odd; return ``(k, q)``."""
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


@lru_cache(maxsize=None)
def cheb_T(n: int) -> IntPolynomial:
    """First-kind Chebyshev polynomial, from the explicit coefficient formula."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return IntPolynomial((1,))
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        # n/(n-k) * C(n-k, k) * 2^(n-2k-1), signed
        num = n * comb(n - k, k) << (n - 2 * k)
        c = num // (2 * (n - k))
        coeffs[n - 2 * k] = -c if k & 1 else c
    return IntPolynomial(coeffs)


@lru_cache(maxsize=None)
def cheb_V(n: int) -> IntPolynomial:
    """Second-kind polynomial ``V_n = U_{n-1}``; ``V_0 = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return IntPolynomial()
    m = n - 1
    coeffs = [0] * (m + 1)
    for k in range(m // 2 + 1):
        c = comb(m - k, k) << (m - 2 * k)
        coeffs[m - 2 * k] = -c if k & 1 else c
    return IntPolynomial(coeffs)


def cheb_T_recurrence(n: int) -> IntPolynomial:
    """``T_n`` from ``T_{n+1} = 2t T_n - T_{n-1}``; slow, kept as a cross-check."""
    two_t = IntPolynomial((0, 2))
    prev, cur = IntPolynomial((1,)), IntPolynomial((0, 1))
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, two_t * cur - prev
    return cur


def cheb_V_recurrence(n: int) -> IntPolynomial:
    two_t = IntPolynomial((0, 2))
    prev, cur = IntPolynomial(), IntPolynomial((1,))
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, two_t * cur - prev
    return cur


@lru_cache(maxsize=None)
def pi_poly(n: int) -> IntPolynomial:
    """``Pi_0 = 1``, ``Pi_1 = 2t - 1``, ``Pi_{n+1} = 2t Pi_n - Pi_{n-1}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    two_t = IntPolynomial((0, 2))
    prev, cur = IntPolynomial((1,)), IntPolynomial((-1, 2))
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, two_t * cur - prev
    return cur


def minpoly_degree(n: int) -> int:
    return 1 if n == 1 else euler_phi(2 * n) // 2


def minpoly_lc(n: int) -> int:
    """Leading coefficient of ``M_n``: ``2^deg``, except ``2^(deg-1)`` for powers of two."""
    d = minpoly_degree(n)
    if n == 1:
        return 1
    k, q = split_two(n)
    return 1 << (d - 1) if q == 1 else 1 << d


_memo: dict[int, IntPolynomial] = {}
_memo_lock = threading.Lock()


def minimal_cos_poly(n: int) -> IntPolynomial:
    """Primitive minimal polynomial ``M_n`` of ``cos(pi/n)`` over the rationals."""
    if n < 1:
        raise ValueError("n must be positive")
    hit = _memo.get(n)
    if hit is not None:
        return hit
    hit = mincache.lookup(n)
    if hit is None:
        hit = _compute_minpoly(n)
        mincache.store(n, hit)
    with _memo_lock:
        # racing computations produce identical values; keep the first
        return _memo.setdefault(n, hit)


def _compute_minpoly(n: int) -> IntPolynomial:
    if n == 1:
        return IntPolynomial((1, 1))
    k, m = split_two(n)
    if m == 1:
        return cheb_T(1 << (k - 1))
    if k:
        return minimal_cos_poly(m).compose(cheb_T(1 << k))
    # odd m >= 3: Pi_{(m-1)/2} is the product of M_d over d | m, d > 1
    product = pi_poly((m - 1) // 2)
    for d in divisors(m):
        if 1 < d < m:
            product = product.exact_div(minimal_cos_poly(d))
    return product.primitive()


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def factor_T(n: int) -> list[IntPolynomial]:
    """Irreducible factors of ``T_n``; their plain product is ``T_n``."""
    if n < 1:
        raise ValueError("n must be positive")
    k, q = split_two(n)
    return [minimal_cos_poly((2 << k) * d) for d in divisors(q)]


def factor_V(n: int) -> tuple[int, list[IntPolynomial]]:
    """Content and irreducible factors of ``V_n``, grouped by the divisor ``d``.

    For ``d | n``, ``d > 1`` the roots ``cos(k'pi/d)`` with ``k'`` odd are those
    of ``M_d``; when ``d`` is odd the even ``k'`` give ``M_d(-t)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    factors = []
    for d in divisors(n):
        if d == 1:
            continue
        m = minimal_cos_poly(d)
        factors.append(m)
        if d % 2 == 1:
            factors.append(m.reflect().primitive())
    lc = 1
    for f in factors:
        lc *= f.lc
    content, rem = divmod(cheb_V(n).lc, lc)
    if rem:
        raise ArithmeticError(f"factor_V({n}): leading coefficients do not divide")
    return content, factors


@dataclass(frozen=True)
class BivariatePoly:
    """Polynomial in ``s, t`` as ``{(i, j): c}`` for ``c s^i t^j``.

    ``symmetric`` optionally holds the same polynomial written in
    ``S = s + t`` and ``T = s t`` as ``{(p, q): c}`` for ``c S^p T^q``.
    """

    terms: dict
    symmetric: dict | None = None

    def evaluate(self, s, t):
        return sum(c * s**i * t**j for (i, j), c in self.terms.items())

    def evaluate_symmetric(self, S, T):
        if self.symmetric is None:
            raise ValueError("polynomial has no symmetric form")
        return sum(c * S**p * T**q for (p, q), c in self.symmetric.items())

    def is_symmetric(self) -> bool:
        return all(self.terms.get((j, i), 0) == c for (i, j), c in self.terms.items())


def cheb_diff_quotient(n: int) -> BivariatePoly:
    """``B_n(s, t) = (T_n(t) - T_n(s)) / (t - s)`` with its ``(S, T)`` form.

    ``(t^k - s^k)/(t - s) = sum_{i+j=k-1} s^i t^j`` termwise; the symmetric form
    uses ``h_k = S h_{k-1} - T h_{k-2}`` for the complete homogeneous sums.
    """
    if n < 1:
        raise ValueError("n must be positive")
    tn = cheb_T(n)
    terms: dict = {}
    for k, c in enumerate(tn.coeffs):
        if k == 0 or c == 0:
            continue
        for i in range(k):
            key = (i, k - 1 - i)
            terms[key] = terms.get(key, 0) + c
    terms = {key: c for key, c in terms.items() if c}

    # h_0 = 1, h_1 = S, h_k = S h_{k-1} - T h_{k-2}, all as dicts over (p, q)
    h = [{(0, 0): 1}, {(1, 0): 1}]
    for k in range(2, n):
        nxt: dict = {}
        for (p, q), c in h[k - 1].items():
            nxt[(p + 1, q)] = nxt.get((p + 1, q), 0) + c
        for (p, q), c in h[k - 2].items():
            nxt[(p, q + 1)] = nxt.get((p, q + 1), 0) - c
        h.append({key: c for key, c in nxt.items() if c})
    sym: dict = {}
    for k, c in enumerate(tn.coeffs):
        if k == 0 or c == 0:
            continue
        for key, hc in h[k - 1].items():
            sym[key] = sym.get(key, 0) + c * hc
    sym = {key: c for key, c in sym.items() if c}
    return BivariatePoly(terms, sym)
