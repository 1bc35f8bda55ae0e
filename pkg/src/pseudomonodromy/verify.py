"""Decision procedures for the discontinuity locus and its marker structure.

Membership in the discontinuity locus and in the exceptional set (iterated
preimages of the two wake angles) is decided by forward iteration: rational
orbits are eventually periodic, so the search is finite.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .circle import ArcSet, double, format_angle, lasso, union_all
from .coding import A, B, OPPOSITE, STAR, cylinder_set, itinerary, symbol
from .components import ComponentPool, HyperbolicComponent, conspicuous_components
from .lamination import star_piece, wake


class TheoremViolation(RuntimeError):
    """An itinerary fits no marker block; the implementation or the theorem is wrong."""


def xi_contains(h: HyperbolicComponent, theta: Fraction) -> bool:
    """Does some forward iterate (n >= 1) of theta hit theta_minus or theta_plus?"""
    targets = {h.theta_minus, h.theta_plus}
    pre, pts = lasso(Fraction(theta) % 1)
    return any(x in targets for x in pts[1:]) or (pts[pre] in targets)


def disc_entry(h: HyperbolicComponent, theta: Fraction) -> int | None:
    """Smallest m >= 1 with σ^m(theta) in the closed wake interval, if any."""
    pre, pts = lasso(Fraction(theta) % 1)
    for m in range(1, len(pts) + 1):
        x = pts[m] if m < len(pts) else pts[pre]
        if h.in_wake(x):
            return m
    return None


def disc_contains(h: HyperbolicComponent, theta: Fraction) -> bool:
    return disc_entry(h, theta) is not None


def remark_condition(h: HyperbolicComponent) -> bool:
    """No σ^k(θ±), 0 <= k < per-1, lies in the closed ⋆-piece."""
    spec = h.star_spec
    for start in (h.theta_minus, h.theta_plus):
        x = start
        for _ in range(h.period - 1):
            if symbol(spec, x) == STAR:
                return False
            x = double(x)
    return True


@dataclass
class VerificationReport:
    component: HyperbolicComponent
    covered: bool
    residual_points: list[Fraction]
    residual_in_xi: list[bool]
    conspicuous_used: list[HyperbolicComponent]
    residual_is_finite: bool = True
    remark_condition: bool = False

    def to_json(self) -> dict:
        h = self.component
        return {
            "schema_version": 1,
            "theta_minus": format_angle(h.theta_minus),
            "theta_plus": format_angle(h.theta_plus),
            "period": h.period,
            "kneading": h.kneading,
            "covered": self.covered,
            "residual_is_finite": self.residual_is_finite,
            "residual_points": [
                {"angle": format_angle(x), "in_xi": ok}
                for x, ok in zip(self.residual_points, self.residual_in_xi)
            ],
            "remark_condition": self.remark_condition,
            "conspicuous": [
                {
                    "theta_minus": format_angle(c.theta_minus),
                    "theta_plus": format_angle(c.theta_plus),
                    "period": c.period,
                    "kneading": c.kneading,
                }
                for c in self.conspicuous_used
            ],
        }


def marker_cover(h: HyperbolicComponent, family: list[HyperbolicComponent]) -> ArcSet:
    """Union of the cylinders of K(H') and K̂(H')⋆ over the given components."""
    spec = h.star_spec
    parts = []
    for c in family:
        parts.append(cylinder_set(spec, c.kneading))
        parts.append(cylinder_set(spec, c.discarded + STAR))
    return union_all(parts)


def verify_main_theorem(h: HyperbolicComponent, pool: ComponentPool) -> VerificationReport:
    family = conspicuous_components(h, pool)
    residual = wake(h) - marker_cover(h, family)
    finite = residual.is_finite()
    pts = residual.isolated_points() if finite else residual.endpoints()
    in_xi = [xi_contains(h, x) for x in pts]
    covered = finite and all(in_xi)
    return VerificationReport(h, covered, pts, in_xi, family, finite, remark_condition(h))


# ------------------------------------------------------------------ markers

KHAT_STAR = "khat_star"
TERMINAL = "terminal_k"
FREE = "free"


@dataclass(frozen=True)
class Block:
    kind: str  # khat_star | terminal_k | free
    index: int | None  # position in the conspicuous list (None for free runs)
    word: str  # K̂(H_i) or K(H_i) as read; ⋆s are not included
    start: int  # position of the block's first symbol


@dataclass
class MarkerChain:
    """Parse of I_H(theta) from its first ⋆ onward.

    Each ``khat_star`` / ``terminal_k`` block follows a ⋆; ``free`` blocks are
    ⋆-free stretches between a terminal block and the next ⋆. The parse
    covers positions ``[star_positions[0], stop)``; from ``cycle_start`` on it
    repeats with period ``cycle_length``.
    """

    star_positions: list[int]
    blocks: list[Block]
    infinite: bool
    stop: int
    cycle_start: int
    cycle_length: int
    exceptional: bool = False
    failed_at: int | None = None
    family: list[HyperbolicComponent] = field(default_factory=list)

    def expand(self) -> str:
        out = []
        for b in self.blocks:
            if b.kind != FREE:
                out.append(STAR)
            out.append(b.word)
        return "".join(out)

    def markers(self) -> list[str]:
        """Markers as ∗-words (∗ standing for the flipped letter)."""
        out, cur = [], ""
        for b in self.blocks:
            if b.kind == FREE:
                continue
            cur += "∗" + b.word
            if b.kind == TERMINAL:
                out.append(cur)
                cur = ""
        if cur:
            out.append(cur + "…")
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "star_positions": self.star_positions,
            "blocks": [
                {"kind": b.kind, "index": b.index, "word": b.word, "start": b.start} for b in self.blocks
            ],
            "infinite": self.infinite,
            "exceptional": self.exceptional,
            "failed_at": self.failed_at,
            "cycle_start": self.cycle_start,
            "cycle_length": self.cycle_length,
            "markers": self.markers(),
        }

    def __str__(self) -> str:
        if self.infinite and self.cycle_length:
            head = self.expand()
            split = self.cycle_start - self.star_positions[0]
            return f"{head[:split]}({head[split:]})*"
        return self.expand()


def marker_decomposition(
    h: HyperbolicComponent,
    theta: Fraction,
    pool: ComponentPool,
    depth: int | None = None,
    family: list[HyperbolicComponent] | None = None,
) -> MarkerChain | None:
    """Split I_H(theta) after its first ⋆ into K̂(H_i)⋆ and K(H_i) blocks.

    Returns None when theta is not in the discontinuity locus. Raises
    TheoremViolation when the parse fails at a point outside the exceptional
    set; at exceptional points the partial parse is returned with
    ``exceptional=True``.
    """
    theta = Fraction(theta) % 1
    if family is None:
        family = conspicuous_components(h, pool)
    word = itinerary(h.star_spec, theta)
    return parse_markers(h, theta, word, family, depth)


def parse_markers(h, theta, word, family, depth=None) -> MarkerChain | None:
    pre, per = len(word.prefix), len(word.cycle)
    first = next((i for i in range(pre + per) if word[i] == STAR), None)
    if first is None:
        return None
    exceptional = xi_contains(h, theta)
    kh = h.kneading
    by_period: dict[int, int] = {}
    for i, c in enumerate(family):
        by_period.setdefault(c.period, i)
    n_h = h.period
    limit = depth if depth is not None else None

    blocks: list[Block] = []
    stars: list[int] = []
    # a parse state is determined by the position of a ⋆ (or the start of a
    # free run) modulo the cycle once past the preperiod
    seen: dict[tuple[str, int], int] = {}
    pos, state = first, "star"
    cycle_start = cycle_length = 0
    infinite = False
    failed_at = None
    while True:
        if limit is not None and pos - first >= limit:
            break
        if pos >= pre:
            key = (state, (pos - pre) % per)
            if key in seen:
                cycle_start, cycle_length = seen[key], pos - seen[key]
                infinite = all(b.kind == KHAT_STAR for b in blocks if b.start >= cycle_start)
                break
            seen[key] = pos
        if state == "free":
            horizon = max(pos, pre) + per
            j = next((k for k in range(pos, horizon) if word[k] == STAR), None)
            if j is None:
                # no ⋆ ever again
                blocks.append(Block(FREE, None, word.take(horizon)[pos:], pos))
                cycle_start, pos = max(pos, pre), horizon
                cycle_length = per
                break
            blocks.append(Block(FREE, None, word.take(j)[pos:], pos))
            pos, state = j, "star"
            continue
        stars.append(pos)
        j = 1
        closed = False
        while True:
            sym = word[pos + j]
            i = by_period.get(j)
            if i is not None:
                if sym == STAR:
                    blocks.append(Block(KHAT_STAR, i, word.take(pos + j)[pos + 1:], pos + 1))
                    pos, state, closed = pos + j, "star", True
                    break
                if sym == family[i].kneading[-1] and (j == n_h or sym != kh[j - 1]):
                    blocks.append(Block(TERMINAL, i, word.take(pos + j + 1)[pos + 1:], pos + 1))
                    pos, state, closed = pos + j + 1, "free", True
                    break
            if j < n_h and sym == kh[j - 1]:
                j += 1
                continue
            break
        if not closed:
            failed_at = pos + j
            break
    if failed_at is not None and not exceptional:
        raise TheoremViolation(
            f"I_H({format_angle(theta)}) = {word} fits no marker block at position {failed_at}"
            f" for {h.label()}"
        )
    stop = cycle_start + cycle_length if cycle_length else (failed_at if failed_at is not None else pos)
    return MarkerChain(stars, blocks, infinite, stop, cycle_start, cycle_length, exceptional, failed_at, family)


def _points(theta: Fraction, depth: int | None):
    """The first ``depth`` orbit points (the whole lasso when depth is None)."""
    pre, pts = lasso(Fraction(theta) % 1)
    if depth is None:
        return pts
    per = len(pts) - pre
    return [pts[m] if m < pre else pts[pre + (m - pre) % per] for m in range(depth)]


def compare_codings(h: HyperbolicComponent, theta: Fraction, depth: int | None = None) -> list[tuple[int, str, str]]:
    """Positions m < depth where I⁺_H(theta) and I⁻_H(theta) differ.

    Without ``depth`` the whole lasso of the orbit is examined, which covers
    every difference of the (eventually periodic) sequences.
    """
    plus, minus = h.plus_spec, h.minus_spec
    out = []
    for m, x in enumerate(_points(theta, depth)):
        sp, sm = symbol(plus, x), symbol(minus, x)
        if sp != sm:
            out.append((m, sp, sm))
    return out


def star_positions(h: HyperbolicComponent, theta: Fraction, depth: int | None = None) -> list[int]:
    """Positions m < depth with σ^m(theta) in the closed ⋆-piece."""
    spec = h.star_spec
    return [m for m, x in enumerate(_points(theta, depth)) if symbol(spec, x) == STAR]


def check_opposite(diffs) -> bool:
    return all({sp, sm} == {A, B} for _, sp, sm in diffs)


def corollary_check(h: HyperbolicComponent, theta: Fraction, family: list[HyperbolicComponent]) -> str | None:
    """Check the two-coding characterisation at one angle; None if it holds.

    Requires: theta in Disc(H) iff the marker parse succeeds (parses at Ξ
    points are not held against it), and I⁺, I⁻ differ exactly at the ⋆
    positions, with opposite letters.
    """
    theta = Fraction(theta) % 1
    word = itinerary(h.star_spec, theta)
    try:
        chain = parse_markers(h, theta, word, family)
    except TheoremViolation as exc:
        return str(exc)
    if (chain is not None) != disc_contains(h, theta):
        return f"{format_angle(theta)}: parse and Disc membership disagree"
    diffs = compare_codings(h, theta)
    if [m for m, _, _ in diffs] != star_positions(h, theta):
        return f"{format_angle(theta)}: differences are not the ⋆ positions"
    if not check_opposite(diffs):
        return f"{format_angle(theta)}: a difference is not an A/B pair"
    return None


_SWEEP: tuple | None = None


def _sweep_init(pool_data: dict, angles: list[str]) -> None:
    global _SWEEP
    _SWEEP = (ComponentPool.from_json(pool_data), [Fraction(a) for a in angles])


def _sweep_one(key: tuple[str, str]) -> tuple[int, list[str]]:
    pool, angles = _SWEEP
    h = pool.find(Fraction(key[0]), Fraction(key[1]))
    family = conspicuous_components(h, pool)
    bad = [msg for msg in (corollary_check(h, t, family) for t in angles) if msg]
    return len(angles), [f"{h.label()} {msg}" for msg in bad]


def corollary_sweep(pool: ComponentPool, max_period: int, angles, jobs: int | None = None) -> tuple[int, list[str]]:
    """Run corollary_check for every component of period <= max_period and
    every angle; returns (number of cases, failure messages)."""
    comps = [h for h in pool if 2 <= h.period <= max_period]
    keys = [(str(h.theta_minus), str(h.theta_plus)) for h in comps]
    angles = [str(Fraction(a) % 1) for a in angles]
    jobs = jobs or os.cpu_count() or 1
    if jobs == 1:
        _sweep_init(pool.to_json(), angles)
        results = [_sweep_one(k) for k in keys]
    else:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_sweep_init,
                                 initargs=(pool.to_json(), angles)) as ex:
            results = list(ex.map(_sweep_one, keys))
    return sum(n for n, _ in results), [m for _, bad in results for m in bad]


def marker_alphabet(family: list[HyperbolicComponent]) -> list[str]:
    out = []
    for c in family:
        out.append(STAR + c.kneading)
        out.append(STAR + c.discarded + STAR)
    return out


__all__ = [
    "TheoremViolation",
    "xi_contains",
    "disc_entry",
    "disc_contains",
    "remark_condition",
    "VerificationReport",
    "verify_main_theorem",
    "marker_cover",
    "Block",
    "MarkerChain",
    "marker_decomposition",
    "parse_markers",
    "compare_codings",
    "star_positions",
    "check_opposite",
    "corollary_check",
    "corollary_sweep",
    "marker_alphabet",
    "OPPOSITE",
    "star_piece",
]
