"""Independent numeric oracles shared by the tests.

Nothing here imports the package's algebra: Chebyshev coefficients come from
sympy, roots from mpmath, and knot diagrams from a sampled polyline.
"""
from __future__ import annotations

import math
from functools import lru_cache
from math import comb

import mpmath
import sympy


@lru_cache(maxsize=None)
def cheb_coeffs(n: int) -> tuple[int, ...]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.chebyshevt(n, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _hsum(t, s, m):
    """(t^m - s^m)/(t - s) without cancellation."""
    return sum(t**i * s**(m - 1 - i) for i in range(m))


def qc_phi_coeffs(c: int, s, t):
    """Coefficients (lowest first) of phi -> (T_c(t+phi) - T_c(s+phi))/(t-s)."""
    co = cheb_coeffs(c)
    out = []
    for k in range(c):
        acc = mpmath.mpf(0)
        for n in range(k + 1, c + 1):
            if co[n]:
                acc += co[n] * comb(n, k) * _hsum(t, s, n - k)
        out.append(acc)
    return out


def _cluster(values, tol):
    values = sorted(values)
    out = []
    for v in values:
        if out and abs(v - out[-1][0]) < tol:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, m) for v, m in out]


def double_point_params(a: int, b: int):
    """{(i, j): (s, t)} for a odd, using the crossing parametrization."""
    out = {}
    for i in range(1, (a - 1) // 2 + 1):
        for j in range(1, b):
            qp = mpmath.mpf(j) / b + mpmath.mpf(i) / a
            qm = mpmath.mpf(j) / b - mpmath.mpf(i) / a
            out[i, j] = (mpmath.cospi(qm), mpmath.cospi(qp))
    return out


def critical_oracle(a: int, b: int, c: int, prec: int = 300):
    """Real roots in phi of Q_c over all double points, per point and merged.

    Returns ``(per_point, merged)``; each is a list of ``(value, multiplicity)``.
    """
    with mpmath.workprec(prec):
        per_point = {}
        everything = []
        for key, (s, t) in double_point_params(a, b).items():
            co = qc_phi_coeffs(c, s, t)
            roots = mpmath.polyroots(list(reversed(co)), maxsteps=400, extraprec=2 * prec)
            real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(2) ** -60]
            # complex pairs from a double real root have tiny imaginary parts
            cl = _cluster(real, mpmath.mpf(2) ** -60)
            per_point[key] = cl
            for v, m in cl:
                everything.extend([v] * m)
        merged = _cluster(everything, mpmath.mpf(2) ** -60)
    return per_point, merged


# -- a polyline diagram oracle ------------------------------------------------------

def _cheb(n: int, x: float) -> float:
    co = cheb_coeffs(n)
    acc = 0.0
    for c in reversed(co):
        acc = acc * x + c
    return acc


def polyline_crossings(a: int, b: int, c: int, phi: float, samples: int = 4000):
    """Crossings of the projection of t -> (T_a, T_b, T_c(t + phi)), t in [-1, 1].

    Returns a list of (t_first, t_second, over_is_second, sign) computed from a
    sampled polyline with floating point and a grid hash.
    """
    ts = [math.cos(math.pi * (1 - k / samples)) for k in range(samples + 1)]
    pts = [(_cheb(a, t), _cheb(b, t)) for t in ts]
    cell = 4.0 / math.sqrt(samples)
    grid: dict = {}
    for k in range(samples):
        (x0, y0), (x1, y1) = pts[k], pts[k + 1]
        for gx in range(int((min(x0, x1) + 2) // cell), int((max(x0, x1) + 2) // cell) + 1):
            for gy in range(int((min(y0, y1) + 2) // cell), int((max(y0, y1) + 2) // cell) + 1):
                grid.setdefault((gx, gy), []).append(k)
    seen = set()
    out = []
    for seglist in grid.values():
        for u in range(len(seglist)):
            for v in range(u + 1, len(seglist)):
                i, j = seglist[u], seglist[v]
                if abs(i - j) < 2 or (i, j) in seen:
                    continue
                seen.add((i, j))
                p, r = pts[i], (pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1])
                q, w = pts[j], (pts[j + 1][0] - pts[j][0], pts[j + 1][1] - pts[j][1])
                den = r[0] * w[1] - r[1] * w[0]
                if den == 0:
                    continue
                qp = (q[0] - p[0], q[1] - p[1])
                su = (qp[0] * w[1] - qp[1] * w[0]) / den
                sv = (qp[0] * r[1] - qp[1] * r[0]) / den
                if not (0 <= su < 1 and 0 <= sv < 1):
                    continue
                t1 = ts[i] + su * (ts[i + 1] - ts[i])
                t2 = ts[j] + sv * (ts[j + 1] - ts[j])
                if t1 > t2:
                    t1, t2 = t2, t1
                    r, w = w, r
                z1, z2 = _cheb(c, t1 + phi), _cheb(c, t2 + phi)
                over_second = z2 > z1
                over, under = (w, r) if over_second else (r, w)
                cross = over[0] * under[1] - over[1] * under[0]
                out.append((t1, t2, over_second, 1 if cross > 0 else -1))
    out.sort()
    return out


def polyline_gauss(a: int, b: int, c: int, phi: float, samples: int = 4000):
    """Gauss code ("O1 U2 ...") and per-label sign from the polyline oracle."""
    xs = polyline_crossings(a, b, c, phi, samples)
    visits = []
    for n, (t1, t2, over_second, sign) in enumerate(xs):
        visits.append((t1, n, not over_second))
        visits.append((t2, n, over_second))
    visits.sort()
    label = {}
    for _, n, _ in visits:
        label.setdefault(n, len(label) + 1)
    code = " ".join(("O" if over else "U") + str(label[n]) for _, n, over in visits)
    signs = {label[n]: xs[n][3] for n in range(len(xs))}
    return code, signs
