"""Deterministic SVG pictures of complexes and curve systems.

Connected discs get a native polygon layout: boundary vertices on a circle,
internal edges as chords, sutures as curves through their recorded crossing
points. Everything else falls back to a labeled grid of squares, matched
sides carrying the same edge label.
"""

from __future__ import annotations

import math
from typing import Optional

from .surface import SquareComplex, invariants, validate_complex
from .sutures import CurveSystem

_HEADER = ('<?xml version="1.0" encoding="UTF-8"?>\n'
           '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           'viewBox="0 0 {w} {h}">\n'
           '<rect width="{w}" height="{h}" fill="white"/>\n')


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _line(x1, y1, x2, y2, color="black", width=1.5) -> str:
    return (f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{color}" stroke-width="{width}"/>\n')


def _curve(p0, p1, ctrl, color="red", width=1.8) -> str:
    return (f'<path d="M {_fmt(p0[0])} {_fmt(p0[1])} Q {_fmt(ctrl[0])} '
            f'{_fmt(ctrl[1])} {_fmt(p1[0])} {_fmt(p1[1])}" fill="none" '
            f'stroke="{color}" stroke-width="{width}"/>\n')


def _text(x, y, s, size=11, color="black") -> str:
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
            f'fill="{color}" text-anchor="middle" '
            f'font-family="monospace">{s}</text>\n')


def _dot(x, y, color="seagreen", r=2.5) -> str:
    return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{color}"/>\n'


def _is_disc(c: SquareComplex) -> bool:
    if c.square_count == 0 or not validate_complex(c).ok:
        return False
    if c.internal_vertices():
        return False
    inv = invariants(c)
    return inv.components == 1 and inv.boundary_components == 1 and inv.chi == 1


def render_svg(c: SquareComplex, g: Optional[CurveSystem] = None) -> str:
    if _is_disc(c):
        return _render_disc(c, g)
    return _render_grid(c, g)


def _lerp(p, q, t):
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def _render_disc(c: SquareComplex, g: Optional[CurveSystem]) -> str:
    size, rad = 420.0, 170.0
    cx = cy = size / 2
    cycle = c.boundary_cycles[0]
    vclass_pos = {}
    for i, slot in enumerate(cycle):
        ang = math.pi / 2 + 2 * math.pi * i / len(cycle)
        start, _ = c.edge_endpoints(slot)
        vclass_pos[start.key] = (cx + rad * math.cos(ang),
                                 cy - rad * math.sin(ang))

    def corner_xy(sq: int, k: int):
        return vclass_pos[c.corner_class[(sq, k)].key]

    def side_geom(sq: int, k: int):
        return corner_xy(sq, k), corner_xy(sq, (k + 1) % 4)

    out = [_HEADER.format(w=int(size), h=int(size))]
    for slot in cycle:
        p, q = side_geom(*slot)
        out.append(_line(*p, *q, "black", 2.0))
    for a, b in c.sorted_gluings():
        p, q = side_geom(*a)
        out.append(_line(*p, *q, "seagreen", 1.2))
    for v in c.vertex_classes:
        x, y = vclass_pos[v.key]
        out.append(_dot(x, y))
        lx, ly = _lerp((cx, cy), (x, y), 1.12)
        out.append(_text(lx, ly + 4, "+" if v.sign > 0 else "&#8722;", 12))
    if g is not None:
        for sq in range(c.square_count):
            centroid = (
                sum(corner_xy(sq, k)[0] for k in range(4)) / 4,
                sum(corner_xy(sq, k)[1] for k in range(4)) / 4,
            )
            for (k1, p1), (k2, p2) in g.chords[sq]:
                m1 = g.side_count((sq, k1))
                m2 = g.side_count((sq, k2))
                a0, a1 = side_geom(sq, k1)
                b0, b1 = side_geom(sq, k2)
                pa = _lerp(a0, a1, (p1 + 1) / (m1 + 1))
                pb = _lerp(b0, b1, (p2 + 1) / (m2 + 1))
                out.append(_curve(pa, pb, centroid))
            for i in range(g.loops[sq]):
                r = 6 + 4 * i
                out.append(f'<circle cx="{_fmt(centroid[0])}" '
                           f'cy="{_fmt(centroid[1])}" r="{r}" fill="none" '
                           'stroke="red" stroke-width="1.5"/>\n')
    out.append("</svg>\n")
    return "".join(out)


def _render_grid(c: SquareComplex, g: Optional[CurveSystem]) -> str:
    cell, pad = 120.0, 45.0
    cols = max(1, math.ceil(math.sqrt(max(c.square_count, 1))))
    rows = max(1, math.ceil(max(c.square_count, 1) / cols))
    w = cols * (cell + pad) + pad
    h = rows * (cell + pad) + pad + 10
    out = [_HEADER.format(w=int(w), h=int(h))]
    labels = {pair: chr(ord("a") + i)
              for i, pair in enumerate(c.sorted_gluings())}

    def corner_xy(sq: int, k: int):
        col, row = sq % cols, sq // cols
        x0 = pad + col * (cell + pad)
        y0 = pad + row * (cell + pad)
        # corner 0 bottom-left, anticlockwise in math orientation
        return {
            0: (x0, y0 + cell),
            1: (x0 + cell, y0 + cell),
            2: (x0 + cell, y0),
            3: (x0, y0),
        }[k]

    for sq in range(c.square_count):
        corners = [corner_xy(sq, k) for k in range(4)]
        for k in range(4):
            p, q = corners[k], corners[(k + 1) % 4]
            slot = (sq, k)
            glued = c.is_glued(slot)
            out.append(_line(*p, *q, "seagreen" if glued else "black",
                             1.2 if glued else 2.0))
            mid = _lerp(p, q, 0.5)
            outward = _lerp(_lerp(corners[0], corners[2], 0.5), mid, 1.16)
            if glued:
                pair = (slot, c.partner(slot))
                pair = pair if pair[0] <= pair[1] else (pair[1], pair[0])
                tick = _lerp(p, q, 0.42)
                out.append(_text(outward[0], outward[1] + 4,
                                 labels[pair], 12, "seagreen"))
                out.append(_dot(tick[0], tick[1], "seagreen", 1.8))
        for k in range(4):
            x, y = corners[k]
            inner = _lerp((x, y), _lerp(corners[0], corners[2], 0.5), 0.12)
            out.append(_text(inner[0], inner[1] + 4,
                             "+" if k % 2 else "&#8722;", 11))
        out.append(_text(_lerp(corners[0], corners[2], 0.5)[0],
                         corner_xy(sq, 3)[1] - 8, f"#{sq}", 11))
        if g is not None:
            centroid = _lerp(corners[0], corners[2], 0.5)
            for (k1, p1), (k2, p2) in g.chords[sq]:
                a0, a1 = corners[k1], corners[(k1 + 1) % 4]
                b0, b1 = corners[k2], corners[(k2 + 1) % 4]
                pa = _lerp(a0, a1, (p1 + 1) / (g.side_count((sq, k1)) + 1))
                pb = _lerp(b0, b1, (p2 + 1) / (g.side_count((sq, k2)) + 1))
                out.append(_curve(pa, pb, centroid))
            for i in range(g.loops[sq]):
                out.append(f'<circle cx="{_fmt(centroid[0])}" '
                           f'cy="{_fmt(centroid[1])}" r="{8 + 5 * i}" '
                           'fill="none" stroke="red" stroke-width="1.5"/>\n')
    out.append("</svg>\n")
    return "".join(out)
