"""Knot invariants from PD codes: Jones polynomial, determinant, two-bridge fraction.

The Kauffman bracket is a sweep over crossings that merges states by the
matching they induce on the open edge ends, so the work is governed by the
frontier width rather than ``2^n``.  The determinant is computed a second,
independent way from the Goeritz matrix of a checkerboard colouring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .diagram import KnotDiagram

DEFAULT_CUTOFF = 30


class CutoffExceeded(RuntimeError):
    pass


class ConventionError(ArithmeticError):
    """Raised when two independent computations disagree."""


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial as sorted ``((exponent, coeff), ...)``."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "LaurentPolynomial":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls(((0, 1),))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial.from_dict({e: c * other for e, c in self.terms})
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e + k, c) for e, c in self.terms))

    def invert(self) -> "LaurentPolynomial":
        """Substitute ``t -> 1/t``."""
        return LaurentPolynomial(tuple(sorted((-e, c) for e, c in self.terms)))

    def __call__(self, x):
        return sum(c * Fraction(x) ** e for e, c in self.terms)

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda ec: ec[0]):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            text += f" {sgn} {body}"
        return text


# -- Kauffman bracket --------------------------------------------------------

def _join(partner: dict, x: int, y: int) -> int:
    """Connect edge ends ``x`` and ``y``; returns the number of loops closed."""
    if x == y:
        return 1
    px = partner.pop(x, None)
    py = partner.pop(y, None)
    if px is not None and px == y:
        # x and y were the two ends of one open path
        return 1
    if px is not None:
        partner.pop(px, None)
    if py is not None:
        partner.pop(py, None)
    e1 = x if px is None else px
    e2 = y if py is None else py
    if e1 == e2:
        return 1
    partner[e1] = e2
    partner[e2] = e1
    return 0


def _bracket_dict(pd: Sequence[Sequence[int]]) -> dict:
    """Kauffman bracket as ``{A-exponent: coeff}``, normalised so the unknot is 1."""
    if not pd:
        return {0: 1}
    states: dict = {(): {0: 1}}
    for a, b, c, d in pd:
        nxt: dict = {}
        for key, poly in states.items():
            for pairs, aexp in (((a, b), (c, d)), 1), (((a, d), (b, c)), -1):
                partner = dict(key)
                loops = 0
                for x, y in pairs:
                    loops += _join(partner, x, y)
                nkey = tuple(sorted(partner.items()))
                acc = nxt.setdefault(nkey, {})
                # each closed loop multiplies by d = -A^2 - A^-2
                p = {e + aexp: v for e, v in poly.items()}
                for _ in range(loops):
                    q: dict = {}
                    for e, v in p.items():
                        q[e + 2] = q.get(e + 2, 0) - v
                        q[e - 2] = q.get(e - 2, 0) - v
                    p = q
                for e, v in p.items():
                    acc[e] = acc.get(e, 0) + v
        states = {k: {e: v for e, v in p.items() if v} for k, p in nxt.items()}
    total = states.get((), {})
    # every state closed at least one loop too many: divide by d once
    return _divide_by_loop(total)


def _divide_by_loop(p: dict) -> dict:
    """Exact division by ``-A^2 - A^-2``."""
    # -A^-2 (A^4 + 1) q = p  <=>  (A^4 + 1) q = -A^2 p
    num = {e + 2: -v for e, v in p.items() if v}
    if not num:
        return {}
    floor_exp = min(num)
    q: dict = {}
    while num and max(num) - 4 >= floor_exp:
        top = max(num)
        c = num[top]
        q[top - 4] = c
        for e in (top, top - 4):
            num[e] = num.get(e, 0) - c
            if num[e] == 0:
                del num[e]
    if num:
        raise ConventionError("bracket is not divisible by the loop value")
    return q


def kauffman_bracket(pd: Sequence[Sequence[int]]) -> dict:
    return _bracket_dict(pd)


def jones_from_pd(pd: Sequence[Sequence[int]], writhe: int) -> LaurentPolynomial:
    """``V(t) = (-A^3)^(-w) <K>`` with ``A = t^(-1/4)``."""
    br = _bracket_dict(pd)
    sign = -1 if writhe % 2 else 1
    out = {}
    for e, v in br.items():
        ae = e - 3 * writhe
        if ae % 4:
            raise ConventionError("bracket exponents are not compatible with a knot")
        out[-ae // 4] = sign * v
    return LaurentPolynomial.from_dict(out)


def pd_writhe(pd: Sequence[Sequence[int]]) -> int:
    """Writhe from PD labels along a single closed component ``1..2n``."""
    n = 2 * len(pd)
    w = 0
    for _, j, _, l in pd:
        w += 1 if (j - l) % n == 1 else -1
    return w


def jones(d: KnotDiagram, cutoff: int = DEFAULT_CUTOFF) -> LaurentPolynomial:
    if d.size > cutoff:
        raise CutoffExceeded(f"{d.size} crossings exceed the cutoff {cutoff}")
    order = _sweep_order(d)
    pd = d.pd_code()
    return jones_from_pd([pd[k] for k in order], d.writhe)


def _sweep_order(d: KnotDiagram) -> list[int]:
    """Crossings sorted along the long axis of the projection."""
    p = d.params
    if p.b >= p.a:
        key = [x.point.x_float() for x in d.crossings]
    else:
        key = [x.point.y_float() for x in d.crossings]
    return sorted(range(d.size), key=lambda k: (key[k], k))


def bracket_bruteforce(pd: Sequence[Sequence[int]]) -> dict:
    """Plain ``2^n`` state sum; used as an independent check."""
    n = len(pd)
    if n == 0:
        return {0: 1}
    total: dict = {}
    for mask in range(1 << n):
        adj: dict = {}
        aexp = 0
        for k, (a, b, c, d) in enumerate(pd):
            if mask >> k & 1:
                pairs = ((a, b), (c, d))
                aexp += 1
            else:
                pairs = ((a, d), (b, c))
                aexp -= 1
            for x, y in pairs:
                adj.setdefault(("e", x), []).append(("s", k, x, y))
                adj.setdefault(("e", y), []).append(("s", k, x, y))
        loops = _count_loops(adj)
        # d^(loops - 1)
        poly = {aexp: 1}
        for _ in range(loops - 1):
            q: dict = {}
            for e, v in poly.items():
                q[e + 2] = q.get(e + 2, 0) - v
                q[e - 2] = q.get(e - 2, 0) - v
            poly = q
        for e, v in poly.items():
            total[e] = total.get(e, 0) + v
    return {e: v for e, v in total.items() if v}


def _count_loops(adj: dict) -> int:
    seen = set()
    loops = 0
    for node in adj:
        if node in seen:
            continue
        loops += 1
        stack = [node]
        seen.add(node)
        while stack:
            cur = stack.pop()
            nbrs = adj[cur] if cur[0] == "e" else [("e", cur[2]), ("e", cur[3])]
            for nb in nbrs:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return loops


# -- Goeritz determinant -----------------------------------------------------------

def _faces(pd: Sequence[Sequence[int]]) -> tuple[list[list[tuple[int, int]]], dict]:
    where: dict = {}
    for c, X in enumerate(pd):
        for k, e in enumerate(X):
            where.setdefault(e, []).append((c, k))
    face_of: dict = {}
    faces = []
    for c in range(len(pd)):
        for k in range(4):
            if (c, k) in face_of:
                continue
            fid = len(faces)
            corners = []
            cur = (c, k)
            while cur not in face_of:
                face_of[cur] = fid
                corners.append(cur)
                cc, kk = cur
                slot = (cc, (kk + 1) % 4)
                e = pd[cc][slot[1]]
                occ = where[e]
                other = occ[1] if occ[0] == slot else occ[0]
                cur = other
            faces.append(corners)
    return faces, face_of


def goeritz_determinant(pd: Sequence[Sequence[int]]) -> int:
    if not pd:
        return 1
    faces, face_of = _faces(pd)
    n = len(pd)
    if len(faces) != n + 2:
        raise ConventionError(f"{len(faces)} faces for {n} crossings: PD code is not planar")
    # checkerboard: corners k and k+1 of a crossing lie on opposite colours
    colour = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for c, k in faces[f]:
            for kk in ((k + 1) % 4, (k + 3) % 4):
                g = face_of[(c, kk)]
                want = 1 - colour[f]
                if g in colour:
                    if colour[g] != want:
                        raise ConventionError("faces are not two-colourable")
                else:
                    colour[g] = want
                    stack.append(g)
    white = [f for f in range(len(faces)) if colour[f] == 0]
    index = {f: m for m, f in enumerate(white)}
    size = len(white)
    G = [[0] * size for _ in range(size)]
    for c in range(n):
        w_corners = [k for k in range(4) if colour[face_of[(c, k)]] == 0]
        eta = 1 if w_corners == [1, 3] else -1
        f, g = (face_of[(c, k)] for k in w_corners)
        if f == g:
            continue
        x, y = index[f], index[g]
        G[x][y] -= eta
        G[y][x] -= eta
    for x in range(size):
        G[x][x] = -sum(G[x][y] for y in range(size) if y != x)
    minor = [row[1:] for row in G[1:]]
    return abs(_det(minor))


def _det(M: list[list[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for s in range(k + 1, n):
                A[r][s] = (A[r][s] * A[k][k] - A[r][k] * A[k][s]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def determinant(d: KnotDiagram, cutoff: int = DEFAULT_CUTOFF) -> int:
    """``|V(-1)|``, certified equal to the Goeritz determinant."""
    v = jones(d, cutoff)(-1)
    g = goeritz_determinant(d.pd_code())
    if abs(v) != g:
        raise ConventionError(f"|V(-1)| = {abs(v)} but Goeritz gives {g}")
    return g


# -- two-bridge fractions -------------------------------------------------------

@dataclass(frozen=True)
class TwoBridgeFraction:
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    def _classes(self) -> set[int]:
        a = self.alpha
        if a == 1:
            return {0}
        b = self.beta % a
        return {b, pow(b, -1, a)}

    def canonical(self) -> "TwoBridgeFraction":
        """Least representative of ``beta^(+-1) mod alpha`` in ``[0, alpha)``."""
        return TwoBridgeFraction(self.alpha, min(self._classes()))

    def equivalent(self, other: "TwoBridgeFraction") -> bool:
        return self.alpha == other.alpha and bool(self._classes() & other._classes())

    def mirror(self) -> "TwoBridgeFraction":
        return TwoBridgeFraction(self.alpha, -self.beta)

    def same_up_to_mirror(self, other: "TwoBridgeFraction") -> bool:
        return self.equivalent(other) or self.equivalent(other.mirror())

    def __str__(self) -> str:
        return f"{self.alpha}/{self.beta}"


def continued_fraction(terms: Iterable[int]) -> tuple[int, int]:
    """``(p, q)`` with ``p/q = [m_1; m_2, ...]`` via 2x2 matrix products."""
    p0, p1, q0, q1 = 1, 0, 0, 1  # matrix [[p0, p1], [q0, q1]]
    for m in terms:
        p0, p1 = m * p0 + p1, p0
        q0, q1 = m * q0 + q1, q0
    return p0, q0


def twist_sequence(d: KnotDiagram) -> list[int]:
    """Signed twist counts per line along the long axis (Conway normal form reading)."""
    p = d.params
    if not (p.a == 3 or (p.mirror and p.b == 4)):
        raise ValueError("two-bridge reading needs a = 3 or a = 4")
    groups: dict = {}
    for x in d.crossings:
        pos = x.point.position()
        # canonical a = 3: lines are the columns; original a = 4: canonical rows
        key = pos[0] if p.a == 3 else pos[1]
        groups.setdefault(key, []).append(x.twist)
    return [sum(groups[k]) for k in sorted(groups)]


def two_bridge_fraction(d: KnotDiagram, det: Optional[int] = None) -> TwoBridgeFraction:
    seq = twist_sequence(d)
    terms = [m if n % 2 == 0 else -m for n, m in enumerate(seq)]
    if not terms:
        return TwoBridgeFraction(1, 0)
    p, q = continued_fraction(terms)
    alpha = abs(p)
    if alpha == 0:
        raise ConventionError("continued fraction has a zero numerator")
    beta = q if p > 0 else -q
    if d.params.mirror:
        # canonical coordinates transpose the plane, which reflects the reading
        beta = -beta
    beta = beta % alpha if alpha > 1 else 0
    frac = TwoBridgeFraction(alpha, beta)
    if det is None:
        det = determinant(d)
    if alpha != det:
        raise ConventionError(f"fraction numerator {alpha} differs from determinant {det}")
    return frac
