"""SVG pictures of the R/Q recursion on the closed unit disk.

Arcs of ``R_n`` are drawn grey and arcs of ``Q_n`` black on top of them;
chords are hyperbolic geodesics (circles orthogonal to the boundary, or a
diameter). Output is plain SVG 1.1 built from strings with fixed float
formatting, so equal inputs give byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .circle import Arc, ArcSet
from .components import ComponentPool, HyperbolicComponent
from .lamination import Leaf, RQTrace, leaves_of, polygon_edges, rq_trace

GREY = "#9a9a9a"
BLACK = "#000000"
LEAF = "#3060c0"


@dataclass
class RenderSpec:
    component: HyperbolicComponent
    step: int | str = "all"  # an index n, or "all" for steps 1..N side by side
    size: int = 240  # pixels per disk
    labels: bool = True
    leaves: bool = False  # also draw ℓ₀, ℓ₀′ and the chain ℓ₁..ℓ_{N-1}

    def steps(self) -> list[int]:
        n = self.component.period
        if self.step == "all":
            return list(range(1, n + 1))
        step = int(self.step)
        if not 0 <= step <= n:
            raise ValueError(f"step must lie in 0..{n}")
        return [step]


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Disk:
    def __init__(self, cx: float, cy: float, r: float):
        self.cx, self.cy, self.r = cx, cy, r

    def point(self, theta: Fraction, scale: float = 1.0) -> tuple[float, float]:
        t = 2 * math.pi * float(theta)
        return self.cx + scale * self.r * math.cos(t), self.cy - scale * self.r * math.sin(t)

    def arc_path(self, arc: Arc) -> str:
        if arc.full:
            x0, y0 = self.point(Fraction(0))
            x1, y1 = self.point(Fraction(1, 2))
            r = _f(self.r)
            return (f"M {_f(x0)} {_f(y0)} A {r} {r} 0 1 0 {_f(x1)} {_f(y1)} "
                    f"A {r} {r} 0 1 0 {_f(x0)} {_f(y0)}")
        x0, y0 = self.point(arc.start)
        x1, y1 = self.point(arc.end)
        large = 1 if arc.length > Fraction(1, 2) else 0
        r = _f(self.r)
        # counterclockwise in the plane is sweep-flag 0 once y points down
        return f"M {_f(x0)} {_f(y0)} A {r} {r} 0 {large} 0 {_f(x1)} {_f(y1)}"

    def geodesic_path(self, a: Fraction, b: Fraction) -> str:
        if (b - a) % 1 > Fraction(1, 2):
            a, b = b, a
        x0, y0 = self.point(a)
        x1, y1 = self.point(b)
        d = (b - a) % 1
        if d == Fraction(1, 2):
            return f"M {_f(x0)} {_f(y0)} L {_f(x1)} {_f(y1)}"
        rho = self.r * math.tan(math.pi * float(d))
        # b is counterclockwise of a, the geodesic bends towards the centre
        return f"M {_f(x0)} {_f(y0)} A {_f(rho)} {_f(rho)} 0 0 1 {_f(x1)} {_f(y1)}"


def _label(disk: _Disk, x: Fraction, d: int, marked: bool) -> str:
    lx, ly = disk.point(x, 1.13)
    num = int(x * d)
    sup = '<tspan baseline-shift="super" font-size="8">e</tspan>' if marked else ""
    return (f'<text x="{_f(lx)}" y="{_f(ly + 4)}" font-size="11" text-anchor="middle" '
            f'font-family="sans-serif">{num}{sup}</text>')


def _draw_set(disk: _Disk, s: ArcSet, colour: str, width: float) -> list[str]:
    out = []
    for arc in s.arcs():
        if arc.is_point:
            x, y = disk.point(arc.start)
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(width)}" fill="{colour}"/>')
        else:
            out.append(f'<path d="{disk.arc_path(arc)}" fill="none" stroke="{colour}" '
                       f'stroke-width="{_f(width)}" stroke-linecap="butt"/>')
    return out


def _chords(disk: _Disk, trace: RQTrace, n: int, which: str, colour: str) -> list[str]:
    out = []
    for e in polygon_edges(trace, n, which):
        if isinstance(e, Leaf):
            out.append(f'<path d="{disk.geodesic_path(e.a, e.b)}" fill="none" stroke="{colour}" '
                       f'stroke-width="1.200"/>')
    return out


def disk_elements(trace: RQTrace, n: int, disk: _Disk, spec: RenderSpec) -> list[str]:
    h = trace.component
    out = [f'<circle cx="{_f(disk.cx)}" cy="{_f(disk.cy)}" r="{_f(disk.r)}" fill="none" '
           f'stroke="#d0d0d0" stroke-width="1.000"/>']
    r_set = trace.R[n]
    # R_N has no Q; it is drawn as its own Q
    q_set = trace.Q[n] if n < h.period else r_set
    out += _draw_set(disk, r_set, GREY, 5.0)
    out += _draw_set(disk, q_set, BLACK, 3.0)
    out += _chords(disk, trace, n, "R", GREY)
    if n < h.period:
        out += _chords(disk, trace, n, "Q", BLACK)
    if spec.leaves:
        seen = []
        for leaf in leaves_of(h).leaves:
            if leaf.endpoints in seen:
                continue
            seen.append(leaf.endpoints)
            out.append(f'<path d="{disk.geodesic_path(leaf.a, leaf.b)}" fill="none" stroke="{LEAF}" '
                       f'stroke-width="0.800" stroke-dasharray="3,2"/>')
    if spec.labels:
        d = trace.denominator
        marks = trace.endpoint_marks[n]
        pts = sorted({x for arc in r_set.arcs() if not arc.full for x in (arc.start, arc.end)}
                     | {x for arc in q_set.arcs() if not arc.full for x in (arc.start, arc.end)})
        out += [_label(disk, x, d, x in marks) for x in pts]
    out.append(f'<text x="{_f(disk.cx)}" y="{_f(disk.cy + disk.r + 34)}" font-size="12" '
               f'text-anchor="middle" font-family="sans-serif">{escape(f"R{n}, Q{n}" if n < h.period else f"R{n}")}</text>')
    return out


def render_svg(spec: RenderSpec, pool: ComponentPool) -> str:
    h = spec.component
    trace = rq_trace(h, pool)
    steps = spec.steps()
    size = spec.size
    pad = 44
    width = len(steps) * (size + 2 * pad)
    height = size + 2 * pad + 24
    body = []
    for i, n in enumerate(steps):
        cx = pad + size / 2 + i * (size + 2 * pad)
        disk = _Disk(cx, pad + size / 2, size / 2)
        body.append(f'<g id="step-{n}">')
        body += ["  " + e for e in disk_elements(trace, n, disk, spec)]
        body.append("</g>")
    title = escape(f"H{h.label()}, K = {h.kneading}")
    head = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    return "\n".join(head + body + ["</svg>", ""])


__all__ = ["RenderSpec", "render_svg", "disk_elements"]
