"""Worked examples of the R/Q recursion, written out over a common denominator.

Angles are shown as numerators over ``2 * lcm(den θ⁻, den θ⁺)``; a superscript
``ᵉ`` marks an endpoint that is an image of θ⁻ or θ⁺. Each chain runs from
the wake (or from ``Q_r`` at a return time r) up to the next return time, and
is followed by the words its last set can be coded by.

Order of the ∪-components: the image of a union keeps the order of its
components, and at a return time the components of ``Q_r`` are listed along
the closed piece they lie in, starting from its first endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circle import Arc, format_angle
from .coding import A, B, STAR, closed_piece, itinerary, pieces
from .components import ComponentPool, HyperbolicComponent, conspicuous_components
from .lamination import RQTrace, flip_side_check, leaves_of, rq_trace

MARK = "ᵉ"
MAPSTO = " ↦ "
CUP = "∪"

# (title, component, bracket style)
EXAMPLES = [
    ("Example 1", ("13/31", "18/31"), "closed"),
    ("Example 2", ("2/5", "3/5"), "open"),
    ("Example 3", ("26/63", "37/63"), "open"),
    ("Example 4", ("10/63", "17/63"), "open"),
]


def numerator(x: Fraction, d: int) -> int:
    n = x * d
    if n.denominator != 1:
        raise ValueError(f"{x} is not a multiple of 1/{d}")
    return int(n)


def format_arc(arc: Arc, d: int, marks=frozenset(), style: str = "closed") -> str:
    if arc.full:
        return "𝕋"

    def end(x):
        return f"{numerator(x, d)}{MARK if x in marks else ''}"

    if arc.is_point:
        return "{" + end(arc.start) + "}"
    left, right = ("[", "]") if style == "closed" else ("(", ")")
    return f"{left}{end(arc.start)},{end(arc.end)}{right}"


def format_arcs(arcs: list[Arc], d: int, marks=frozenset(), style: str = "closed") -> str:
    if not arcs:
        return "∅"
    return CUP.join(format_arc(a, d, marks, style) for a in arcs)


def format_fraction_arc(arc: Arc, d: int) -> str:
    """Arc with endpoints written as fractions over d, brackets from the arc itself."""
    left = "[" if arc.start_closed else "("
    right = "]" if arc.end_closed else ")"
    return f"{left}{numerator(arc.start, d)}/{d},{numerator(arc.end, d)}/{d}{right}"


def _fuse(arcs: list[Arc]) -> list[Arc]:
    # the two halves of Π₀ share one image; keep the first copy
    out: list[Arc] = []
    for a in arcs:
        if a not in out:
            out.append(a)
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(out):
            for j, b in enumerate(out):
                if i != j and a.end == b.start and (a.end_closed or b.start_closed):
                    out[i] = Arc(a.start, b.end, a.start_closed, b.end_closed, a.start == b.end)
                    del out[j]
                    changed = True
                    break
            if changed:
                break
    return out


def ordered_components(trace: RQTrace) -> tuple[list[list[Arc]], list[list[Arc]]]:
    """R_n and Q_n as ordered component lists (see the module docstring)."""
    h = trace.component
    spec = h.star_spec
    rts = set(trace.return_times)
    R = [trace.R[0].arcs()]
    Q = []
    for n in range(h.period):
        if n in rts:
            piece = closed_piece(spec, h.kneading[n - 1]).arcs()[0]
            q = sorted(trace.Q[n].arcs(), key=lambda a: (a.start - piece.start) % 1)
        else:
            q = list(R[n])
        if sorted(q, key=lambda a: a.start) != trace.Q[n].arcs():
            raise AssertionError(f"ordered Q_{n} disagrees with the trace")
        Q.append(q)
        r = _fuse([a.image() for a in q])
        if sorted(r, key=lambda a: a.start) != trace.R[n + 1].arcs():
            raise AssertionError(f"ordered R_{n + 1} disagrees with the trace")
        R.append(r)
    return R, Q


@dataclass
class Chain:
    steps: list[str]
    codings: list[str]
    indices: list[tuple[str, int]]  # ("R", n) or ("Q", n) for each step

    def line(self) -> str:
        return MAPSTO.join(self.steps)


def chains(h: HyperbolicComponent, pool: ComponentPool, style: str = "closed") -> list[Chain]:
    trace = rq_trace(h, pool)
    d = trace.denominator
    R, Q = ordered_components(trace)
    marks = trace.endpoint_marks
    family = conspicuous_components(h, pool)
    n_per = h.period
    bounds = trace.return_times + [n_per]
    out = []
    start = 1
    for k, stop in enumerate(bounds):
        if k == 0:
            idx = [("R", n) for n in range(1, stop + 1)]
        else:
            idx = [("Q", start)] + [("R", n) for n in range(start + 1, stop + 1)]
        steps = []
        for kind, n in idx:
            arcs = Q[n] if kind == "Q" else R[n]
            steps.append(format_arcs(arcs, d, marks[n], style))
        if stop == n_per:
            codings = [h.kneading, h.discarded + STAR]
        else:
            hp = next(c for c in family if c.period == stop)
            codings = [hp.kneading, hp.discarded + STAR, h.kneading[:stop]]
        out.append(Chain(steps, codings, idx))
        start = stop
    return out


def coding_phrase(words: list[str]) -> str:
    if len(words) == 1:
        return words[0]
    return ", ".join(words[:-1]) + " or " + words[-1]


def _component_line(h: HyperbolicComponent, d: int | None) -> str:
    parts = [f"Π₁ = [{format_angle(h.theta_minus)},{format_angle(h.theta_plus)}]"]
    if d is not None:
        pc = pieces(h.star_spec)
        parts.append("⋆-piece = " + CUP.join(format_fraction_arc(a, d) for a in pc[STAR].arcs()))
        parts.append("A-piece = " + format_fraction_arc(pc[A].arcs()[0], d))
        parts.append("B-piece = " + format_fraction_arc(pc[B].arcs()[0], d))
    parts.append(f"K = {h.kneading}")
    parts.append(f"per = {h.period}")
    return ", ".join(parts)


def flip_lines(h: HyperbolicComponent, d: int) -> list[str]:
    leaves = leaves_of(h)
    if not leaves.flip:
        return []
    m = h.period // 2
    maj, majp = leaves.major, leaves.major_prime
    lo, hi = sorted((maj.a, maj.b))
    lo_p, hi_p = sorted((majp.a, majp.b))
    spec = h.star_spec
    lines = [
        f"ℓ₀ = {{{format_angle(lo)}, {format_angle(hi)}}} is invariant under σ^{m} with its endpoints swapped;"
        f" ℓ₀′ = {{{format_angle(lo_p)}, {format_angle(hi_p)}}}",
        f"the Π₀-side of {numerator(lo, d)}/{d} maps under σ^{m} to the non-Π₀-side of {numerator(hi, d)}/{d}: "
        + ("yes" if flip_side_check(h, leaves) else "no"),
    ]
    i_minus = itinerary(spec, h.theta_minus)
    i_plus = itinerary(spec, h.theta_plus)
    lines.append(
        f"I_H({format_angle(h.theta_minus)}) = {i_minus}, I_H({format_angle(h.theta_plus)}) = {i_plus}"
    )
    return lines


def example(title: str, h: HyperbolicComponent, pool: ComponentPool, style: str) -> dict:
    trace = rq_trace(h, pool)
    d = trace.denominator
    family = conspicuous_components(h, pool)
    others = sorted((c for c in family if c != h), key=lambda c: (c.period, c.theta_minus))
    cs = chains(h, pool, style)
    return {
        "title": title,
        "component": h,
        "others": others,
        "denominator": d,
        "style": style,
        "chains": cs,
        "flip": flip_lines(h, d),
        "trace": trace,
    }


def build(pool: ComponentPool) -> list[dict]:
    out = []
    for title, (tm, tp), style in EXAMPLES:
        h = pool.find(Fraction(tm), Fraction(tp))
        if h is None:
            raise ValueError(f"({tm}, {tp}) missing from the pool")
        out.append(example(title, h, pool, style))
    return out


def render_text(examples: list[dict]) -> str:
    lines = []
    for ex in examples:
        h, d = ex["component"], ex["denominator"]
        lines.append(f"{ex['title']}: H = {h.label()}")
        lines.append("  H:  " + _component_line(h, d))
        for c in ex["others"]:
            lines.append("  H': " + _component_line(c, None))
        lines.append("  conspicuous: " + ", ".join(c.label() for c in [h] + ex["others"]))
        lines.append(f"  denominator: {d}")
        for ch in ex["chains"]:
            lines.append("  " + ch.line())
            lines.append("    coding: " + coding_phrase(ch.codings))
        for fl in ex["flip"]:
            lines.append("  " + fl)
        lines.append("")
    return "\n".join(lines)


def render_json(examples: list[dict]) -> dict:
    out = []
    for ex in examples:
        h = ex["component"]
        out.append(
            {
                "title": ex["title"],
                "theta_minus": format_angle(h.theta_minus),
                "theta_plus": format_angle(h.theta_plus),
                "period": h.period,
                "kneading": h.kneading,
                "discarded_kneading": h.discarded,
                "denominator": ex["denominator"],
                "conspicuous": [
                    {
                        "theta_minus": format_angle(c.theta_minus),
                        "theta_plus": format_angle(c.theta_plus),
                        "period": c.period,
                        "kneading": c.kneading,
                    }
                    for c in [h] + ex["others"]
                ],
                "chains": [
                    {"steps": ch.steps, "sets": [f"{k}{n}" for k, n in ch.indices], "codings": ch.codings}
                    for ch in ex["chains"]
                ],
                "flip": ex["flip"],
                "trace": ex["trace"].to_json(),
            }
        )
    return {"schema_version": 1, "examples": out}


def appendix_report(pool: ComponentPool | None = None, fmt: str = "text"):
    if pool is None:
        from .components import pair_periodic_angles

        pool = pair_periodic_angles(6)
    exs = build(pool)
    return render_text(exs) if fmt == "text" else render_json(exs)


__all__ = [
    "EXAMPLES",
    "format_arc",
    "format_arcs",
    "ordered_components",
    "chains",
    "Chain",
    "coding_phrase",
    "build",
    "render_text",
    "render_json",
    "appendix_report",
]
