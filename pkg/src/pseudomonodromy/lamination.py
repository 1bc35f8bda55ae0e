"""Leaf system of a component and the R/Q arc-set recursion.

For a component H of period N with kneading ``k_1 ... k_N``:

* ``R_0`` is the closed ⋆-piece (the preimage of the wake interval).
* ``Q_n = R_n`` unless n is a return time, where ``Q_n = R_n ∩ closure(T_{k_n})``.
* ``R_{n+1} = σ(Q_n)``.

Every ``Q_n`` lies in a closed A- or B-piece, whose length is below 1/2, so
its doubling image is computed exactly arc by arc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .circle import Arc, ArcSet, circle_distance, chords_cross, double, halves, iterate
from .coding import STAR, closed_piece, pieces
from .components import ComponentPool, HyperbolicComponent, return_times


@dataclass(frozen=True)
class Leaf:
    """An unordered chord of the closed disk; ``a``/``b`` keep the orientation given."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a leaf needs two distinct endpoints")

    @property
    def endpoints(self) -> frozenset:
        return frozenset((self.a, self.b))

    @property
    def length(self) -> Fraction:
        return circle_distance(self.a, self.b)

    def image(self) -> Leaf:
        return Leaf(double(self.a), double(self.b))

    def same_set(self, other: Leaf) -> bool:
        return self.endpoints == other.endpoints

    def crosses(self, other: Leaf) -> bool:
        return chords_cross(self.a, self.b, other.a, other.b)

    def __str__(self) -> str:
        return f"{{{self.a}, {self.b}}}"


@dataclass
class LeafSystem:
    minor: Leaf
    chain: list[Leaf]  # ℓ_1 .. ℓ_{N-1}
    major: Leaf  # ℓ_0 = ℓ_N as a set
    major_prime: Leaf
    flip: bool

    @property
    def leaves(self) -> list[Leaf]:
        return [self.major_prime, self.major] + self.chain


def leaves_of(h: HyperbolicComponent) -> LeafSystem:
    n = h.period
    if n < 2:
        raise ValueError("period must be at least 2")
    minor = Leaf(h.theta_minus, h.theta_plus)
    chain = [minor]
    for _ in range(n - 2):
        chain.append(chain[-1].image())
    last = chain[-1].image()  # ℓ_N
    tm0, tm1 = halves(h.theta_minus)
    tp0, tp1 = halves(h.theta_plus)
    cand = [Leaf(tm0, tp1), Leaf(tp0, tm1)]
    if cand[0].same_set(last):
        major_prime = cand[1]
    elif cand[1].same_set(last):
        major_prime = cand[0]
    else:
        raise RuntimeError(f"no major leaf of {h.label()} matches ℓ_N = {last}")
    # ℓ_N lists the images of (θ⁻, θ⁺); keep that orientation on ℓ_0
    major = last
    flip = False
    if n % 2 == 0:
        half = Leaf(iterate(h.theta_minus, n // 2), iterate(h.theta_plus, n // 2))
        flip = half.a == h.theta_plus and half.b == h.theta_minus
    return LeafSystem(minor, chain, major, major_prime, flip)


@dataclass
class RQTrace:
    component: HyperbolicComponent
    return_times: list[int]
    R: list[ArcSet]  # R_0 .. R_N
    Q: list[ArcSet]  # Q_0 .. Q_{N-1}
    endpoint_marks: list[frozenset] = field(default_factory=list)  # per n, images of θ±

    @property
    def denominator(self) -> int:
        h = self.component
        return 2 * lcm(h.theta_minus.denominator, h.theta_plus.denominator)

    def to_json(self) -> dict:
        d = self.denominator

        def arcs(s: ArcSet, marks):
            out = []
            for arc in s.arcs():
                out.append(
                    {
                        "start": int(arc.start * d),
                        "end": int(arc.end * d),
                        "start_closed": arc.start_closed,
                        "end_closed": arc.end_closed,
                        "start_mark": arc.start in marks,
                        "end_mark": arc.end in marks,
                    }
                )
            return out

        h = self.component
        return {
            "schema_version": 1,
            "theta_minus": f"{h.theta_minus.numerator}/{h.theta_minus.denominator}",
            "theta_plus": f"{h.theta_plus.numerator}/{h.theta_plus.denominator}",
            "period": h.period,
            "denominator": d,
            "return_times": self.return_times,
            "R": [arcs(r, self.endpoint_marks[i]) for i, r in enumerate(self.R)],
            "Q": [arcs(q, self.endpoint_marks[i]) for i, q in enumerate(self.Q)],
        }


def star_piece(h: HyperbolicComponent) -> ArcSet:
    return pieces(h.star_spec)[STAR]


def wake(h: HyperbolicComponent) -> ArcSet:
    return ArcSet([Arc.closed(h.theta_minus, h.theta_plus)])


def rq_trace(h: HyperbolicComponent, pool: ComponentPool) -> RQTrace:
    n_per = h.period
    rts = return_times(h, pool)
    spec = h.star_spec
    R = [star_piece(h)]
    Q: list[ArcSet] = []
    marks = [frozenset()]
    for n in range(n_per):
        r = R[n]
        if n in rts:
            q = r & closed_piece(spec, h.kneading[n - 1])
        else:
            q = r
        Q.append(q)
        R.append(q.image())
        marks.append(frozenset((iterate(h.theta_minus, n), iterate(h.theta_plus, n))))
    return RQTrace(h, rts, R, Q, marks)


@dataclass
class CheckReport:
    component: HyperbolicComponent
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    converse_holds: bool = True  # every return time n has R_n ⊃ Π₀ (recorded, not asserted)
    converse_counterexamples: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed:
            self.failures.append(f"{name}: {detail}" if detail else name)


def _germ_side(h: HyperbolicComponent, x: Fraction, eps: Fraction, region: ArcSet) -> int:
    """+1 or -1 for the side of x on which ``region`` lies (0 if neither or both)."""
    right = (x + eps) % 1 in region
    left = (x - eps) % 1 in region
    if right and not left:
        return 1
    if left and not right:
        return -1
    return 0


def flip_side_check(h: HyperbolicComponent, leaves: LeafSystem) -> bool:
    """The Π₀-side germ of each endpoint of ℓ_0 returns to the same side under
    σ^N; for flipped systems σ^{N/2} sends it to the non-Π₀ side of the other
    endpoint."""
    n = h.period
    pi0 = star_piece(h)
    d = 2 * lcm(h.theta_minus.denominator, h.theta_plus.denominator)
    eps = Fraction(1, 4 * d * 2**n)
    for x, other in ((leaves.major.a, leaves.major.b), (leaves.major.b, leaves.major.a)):
        s = _germ_side(h, x, eps, pi0)
        if s == 0:
            return False
        if iterate(x, n) != x or (x + s * eps * 2**n) % 1 not in pi0:
            return False
        if leaves.flip:
            m = n // 2
            y = iterate(x, m)
            if y != other:
                return False
            if (y + s * eps * 2**m) % 1 in pi0:
                return False
    return True


def structural_checks(
    h: HyperbolicComponent,
    trace: RQTrace | None = None,
    leaves: LeafSystem | None = None,
    pool: ComponentPool | None = None,
) -> CheckReport:
    if trace is None:
        if pool is None:
            raise ValueError("need a trace or a pool")
        trace = rq_trace(h, pool)
    if leaves is None:
        leaves = leaves_of(h)
    rep = CheckReport(h)
    n_per = h.period
    spec = h.star_spec
    pi0 = star_piece(h)
    int_pi0 = pi0.interior()
    rts = set(trace.return_times)

    def kpiece(n):
        return pieces(spec)[h.kneading[n - 1]]

    # leaf dynamics and geometry
    cur = leaves.minor
    for n in range(1, n_per):
        rep.record("leaf_chain", leaves.chain[n - 1].same_set(cur), f"ℓ_{n}")
        cur = cur.image()
    rep.record("leaf_chain", cur.same_set(leaves.major), "σ(ℓ_{N-1}) = ℓ_0")
    rep.record("majors_map_to_minor", leaves.major.image().same_set(leaves.minor)
               and leaves.major_prime.image().same_set(leaves.minor))
    all_leaves = leaves.leaves
    for i, l1 in enumerate(all_leaves):
        for l2 in all_leaves[i + 1:]:
            rep.record("leaves_noncrossing", not l1.crosses(l2), f"{l1} × {l2}")
    lmin, lmaj = leaves.minor.length, leaves.major.length
    rep.record("minor_shortest", all(lmin <= l.length for l in all_leaves))
    rep.record("majors_longest", all(l.length <= lmaj for l in all_leaves)
               and leaves.major_prime.length == lmaj)
    comp_len = pi0.arcs()[0].length
    rep.record("minor_twice_pi0_component", lmin == 2 * comp_len)

    # (a) leaves avoid int(Π₀)
    for leaf in all_leaves:
        rep.record("a_leaves_avoid_pi0", leaf.a not in int_pi0 and leaf.b not in int_pi0, str(leaf))

    # (b) endpoints of ℓ_n in closure(T_{k_n}), 1 <= n <= N-1
    for n in range(1, n_per):
        closed = kpiece(n).closure()
        leaf = leaves.chain[n - 1]
        rep.record("b_endpoints_in_kpiece", leaf.a in closed and leaf.b in closed, f"n={n}")

    # (c) dichotomy, nonempty intersection with the closed k-piece, (d) returns
    for n in range(1, n_per + 1):
        r = trace.R[n]
        inside = r <= kpiece(n).closure()
        covers = r >= pi0
        rep.record("c_dichotomy", inside or covers, f"n={n}")
        rep.record("R_meets_kpiece", not (r & kpiece(n)).is_empty, f"n={n}")
        if n < n_per:
            if covers:
                rep.record("d_cover_implies_return", n in rts, f"n={n}")
            if n in rts and not covers:
                rep.converse_holds = False
                rep.converse_counterexamples.append(n)

    # (e) last step
    r_last = trace.R[n_per]
    rep.record("e_RN_covers_pi0", r_last >= pi0)
    rep.record("e_RN_in_kN_or_star", r_last <= (kpiece(n_per) | pi0))

    # Q_n arcs shorter than 1/2; R_0 = Π₀; R_{n+1} = σ(Q_n)
    rep.record("Q_short_arcs", all(a.length < Fraction(1, 2) for q in trace.Q for a in q.arcs()))
    rep.record("R0_is_pi0", trace.R[0] == pi0)
    rep.record("flip_sides", flip_side_check(h, leaves))
    if leaves.flip:
        m = n_per // 2
        y = Leaf(iterate(leaves.major.a, m), iterate(leaves.major.b, m))
        rep.record("flip_swaps_major", y.a == leaves.major.b and y.b == leaves.major.a)
    return rep


def polygon_edges(trace: RQTrace, n: int, which: str = "R") -> list:
    """Edges of the polygon spanned by R_n (or Q_n): its arcs, then the chords
    joining the end of each component to the start of the next one."""
    sets = trace.R if which == "R" else trace.Q
    if not 0 <= n < len(sets):
        raise ValueError(f"step {n} out of range")
    arcs = sets[n].arcs()
    if not arcs or arcs[0].full:
        return list(arcs)
    chords = []
    for i, arc in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)]
        if arc.end != nxt.start:
            chords.append(Leaf(arc.end, nxt.start))
    return list(arcs) + chords
