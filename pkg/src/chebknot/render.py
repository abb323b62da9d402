"""Deterministic drawings of knot diagrams: SVG projection and ASCII billiard."""
from __future__ import annotations

import math
from fractions import Fraction

from .diagram import KnotDiagram

SVG_SIZE = 400
SVG_MARGIN = 20


def _fold(s: Fraction) -> Fraction:
    """Fold a real ``s`` (in units of pi) to ``[0, 1]`` as cos does."""
    r = s % 2
    return r if r <= 1 else 2 - r


def _fold_slope(s: Fraction) -> int:
    """Direction of ``_fold`` at a non-integer ``s``."""
    return 1 if int(s % 2) == 0 else -1


def _visit_angles(d: KnotDiagram) -> list[tuple[Fraction, Fraction]]:
    """Per crossing: (over angle, under angle) as fractions of pi."""
    out = []
    for x in d.crossings:
        first, second = x.point.high.value, x.point.low.value
        if first < second:
            first, second = second, first
        # first visit has the larger folded angle
        out.append((second, first) if x.over_second else (first, second))
    return out


def _svg_point(a: int, b: int, theta: float) -> tuple[int, int]:
    span = SVG_SIZE - 2 * SVG_MARGIN
    x = math.cos(a * theta)
    y = math.cos(b * theta)
    return (SVG_MARGIN + round((x + 1) / 2 * span),
            SVG_MARGIN + round((1 - y) / 2 * span))


def render_svg(d: KnotDiagram, samples_per_unit: int = 24) -> str:
    a, b, _ = d.params.original
    unit = a * b
    steps = samples_per_unit * unit
    gap = Fraction(1, 4 * unit)
    unders = sorted(u for _, u in _visit_angles(d))
    # traversal runs from theta = pi down to 0 (parameter ascending)
    lines: list[list[tuple[int, int]]] = [[]]
    k = steps
    while k >= 0:
        q = Fraction(k, steps)
        if any(abs(q - u) < gap for u in unders):
            if lines[-1]:
                lines.append([])
        else:
            pt = _svg_point(a, b, float(q) * math.pi)
            if not lines[-1] or lines[-1][-1] != pt:
                lines[-1].append(pt)
        k -= 1
    lines = [ln for ln in lines if ln]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
           f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
           f'<!-- C({a},{b},{d.params.original[2]},{d.phi}) crossings={d.size} -->']
    for ln in lines:
        pts = " ".join(f"{x},{y}" for x, y in ln)
        out.append(f'<polyline fill="none" stroke="black" stroke-width="2" points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(d: KnotDiagram) -> str:
    """Billiard trajectory on the ``b x a`` lattice, 3 characters per unit.

    Columns follow x (increasing to the right) and rows follow y (top is y = 1).
    Crossings show the over strand.
    """
    a, b, _ = d.params.original
    width, height = 3 * b + 1, 3 * a + 1
    grid = [[" "] * width for _ in range(height)]

    def cell(k: Fraction) -> tuple[int, int]:
        # lattice position at theta = k pi / (a b)
        X = b * _fold(Fraction(a) * k / (a * b))
        Y = a * _fold(Fraction(b) * k / (a * b))
        return int(3 * (b - X)), int(3 * Y)

    def glyph(q: Fraction) -> str:
        # screen direction of travel at angle q pi (theta decreasing)
        dcol = _fold_slope(a * q)          # X falls as theta falls, so column grows
        drow = -_fold_slope(b * q)
        return "\\" if dcol * drow > 0 else "/"

    n = a * b
    for k in range(n):
        c0, r0 = cell(Fraction(n - k))
        c1, r1 = cell(Fraction(n - k - 1))
        dc, dr = (c1 - c0) // 3, (r1 - r0) // 3
        ch = "\\" if dc * dr > 0 else "/"
        for s in (1, 2):
            grid[r0 + s * dr][c0 + s * dc] = ch
        for c, r in ((c0, r0), (c1, r1)):
            if grid[r][c] == " ":
                grid[r][c] = "+"
    for over, _ in _visit_angles(d):
        k = over * n
        c, r = cell(k)
        grid[r][c] = glyph(over)
    start, end = cell(Fraction(n)), cell(Fraction(0))
    grid[start[1]][start[0]] = "o"
    grid[end[1]][end[0]] = "o"
    header = f"C({a},{b},{d.params.original[2]},{d.phi}) crossings={d.size}"
    return header + "\n" + "\n".join("".join(row).rstrip() for row in grid) + "\n"


def render(d: KnotDiagram, fmt: str) -> str:
    if fmt == "svg":
        return render_svg(d)
    if fmt == "ascii":
        return render_ascii(d)
    raise ValueError(f"unknown format {fmt!r}")
