"""Exact arithmetic on the circle T = R/Z.

Angles are :class:`fractions.Fraction` values reduced into ``[0, 1)``.
:class:`ArcSet` is a finite union of circular arcs with per-endpoint
open/closed flags. Internally every set is stored as sorted, disjoint,
non-adjacent intervals of ``[0, 1)``; an arc through 0 is split there and
fused again by :meth:`ArcSet.arcs`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Iterator

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def angle(value, denominator=None) -> Fraction:
    """Build an angle reduced mod 1 from an int, Fraction or ``"p/q"`` string."""
    if denominator is not None:
        value = Fraction(value, denominator)
    elif isinstance(value, str):
        value = parse_angle(value)
    return Fraction(value) % 1


def parse_angle(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ValueError(f"not a rational angle: {text!r}")
    value = Fraction(text)
    return value % 1


def format_angle(theta: Fraction) -> str:
    return f"{theta.numerator}/{theta.denominator}"


def double(theta: Fraction) -> Fraction:
    """The angle-doubling map."""
    return (2 * theta) % 1


def iterate(theta: Fraction, n: int) -> Fraction:
    return (theta * 2**n) % 1


def halves(theta: Fraction) -> tuple[Fraction, Fraction]:
    """Both preimages under doubling, in increasing order."""
    return theta / 2, (theta + 1) / 2


def exact_period(theta: Fraction) -> int | None:
    """Exact period under doubling, or None for strictly preperiodic angles."""
    q = theta.denominator
    if q % 2 == 0:
        return None
    if q == 1:
        return 1
    n, r = 1, 2 % q
    while r != 1:
        r = (2 * r) % q
        n += 1
    return n


@lru_cache(maxsize=1 << 16)
def lasso(theta: Fraction) -> tuple[int, tuple[Fraction, ...]]:
    """``(preperiod, points)`` where ``points`` lists the whole orbit once,
    tail first; the point after the last one is ``points[preperiod]``."""
    q = theta.denominator
    n = theta.numerator % q
    # iterate numerators modulo the fixed denominator q
    seen: dict[int, int] = {}
    nums: list[int] = []
    while n not in seen:
        seen[n] = len(nums)
        nums.append(n)
        n = (2 * n) % q
    return seen[n], tuple(Fraction(k, q) for k in nums)


def forward_orbit(theta: Fraction) -> tuple[int, list[Fraction]]:
    """Return ``(preperiod, cycle)`` of the doubling orbit of a rational angle."""
    pre, pts = lasso(Fraction(theta) % 1)
    return pre, list(pts[pre:])


def orbit_points(theta: Fraction) -> list[Fraction]:
    """Every distinct point of the forward orbit, tail first then the cycle."""
    return list(lasso(Fraction(theta) % 1)[1])


def circle_distance(a: Fraction, b: Fraction) -> Fraction:
    d = (b - a) % 1
    return min(d, 1 - d)


def ccw_between(a: Fraction, x: Fraction, b: Fraction) -> bool:
    """True when x lies strictly inside the counterclockwise arc from a to b."""
    if a == b:
        return x != a
    return ZERO < (x - a) % 1 < (b - a) % 1


def chords_cross(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> bool:
    """Do the chords {a, b} and {c, d} intersect inside the open disk?"""
    if len({a, b, c, d}) < 4:
        return False
    return ccw_between(a, c, b) != ccw_between(a, d, b)


@dataclass(frozen=True)
class Arc:
    """A counterclockwise arc from ``start`` to ``end``.

    ``start == end`` is a single point when both ends are closed, the circle
    minus that point when both are open, or the whole circle when ``full``
    is set.
    """

    start: Fraction
    end: Fraction
    start_closed: bool = True
    end_closed: bool = True
    full: bool = False

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start) % 1)
        object.__setattr__(self, "end", Fraction(self.end) % 1)
        if self.full:
            return
        if self.start == self.end and self.start_closed != self.end_closed:
            raise ValueError("half-open arc from a point to itself; use Arc(..., full=True)")

    @classmethod
    def closed(cls, start, end) -> Arc:
        return cls(start, end, True, True)

    @classmethod
    def open(cls, start, end) -> Arc:
        return cls(start, end, False, False)

    @classmethod
    def point(cls, x) -> Arc:
        return cls(x, x, True, True)

    @property
    def is_point(self) -> bool:
        return not self.full and self.start == self.end and self.start_closed

    @property
    def is_punctured(self) -> bool:
        return not self.full and self.start == self.end and not self.start_closed

    @property
    def length(self) -> Fraction:
        if self.full or self.is_punctured:
            return ONE
        return (self.end - self.start) % 1

    def __contains__(self, x) -> bool:
        x = Fraction(x) % 1
        if self.full:
            return True
        if self.is_point:
            return x == self.start
        if x == self.start:
            return self.start_closed
        if x == self.end:
            return self.end_closed
        return ccw_between(self.start, x, self.end)

    def intervals(self) -> list[tuple[Fraction, Fraction, bool, bool]]:
        if self.full:
            return [(ZERO, ONE, True, False)]
        s, e = self.start, self.end
        if self.is_punctured:
            return [(s, ONE, False, False)] + ([(ZERO, s, True, False)] if s > 0 else [])
        if s <= e:
            return [(s, e, self.start_closed, self.end_closed)]
        out = [(s, ONE, self.start_closed, False)]
        if e > 0 or self.end_closed:
            out.append((ZERO, e, True, self.end_closed))
        return out

    def image(self) -> Arc:
        """Image under doubling; only defined for arcs shorter than 1/2."""
        if self.length >= HALF:
            raise ValueError(f"arc {self} has length >= 1/2; doubling image is not an arc")
        return Arc(double(self.start), double(self.end), self.start_closed, self.end_closed)

    def preimages(self) -> tuple[Arc, Arc]:
        if self.full or self.is_punctured:
            raise ValueError("use ArcSet.preimage for arcs of length 1")
        s0, s1 = halves(self.start)
        e0, e1 = halves(self.end)
        if self.start <= self.end:
            pairs = ((s0, e0), (s1, e1))
        else:
            pairs = ((s0, e1), (s1, e0))
        return tuple(Arc(s, e, self.start_closed, self.end_closed) for s, e in pairs)

    def closure(self) -> Arc:
        if self.is_punctured:
            return Arc(self.start, self.start, True, False, True)
        return Arc(self.start, self.end, True, True, self.full)

    def interior(self) -> Arc | None:
        if self.is_point:
            return None
        return Arc(self.start, self.end, False, False, self.full)

    def __str__(self) -> str:
        if self.full:
            return "T"
        left = "[" if self.start_closed else "("
        right = "]" if self.end_closed else ")"
        return f"{left}{format_angle(self.start)},{format_angle(self.end)}{right}"


_ARC_RE = re.compile(r"\s*([\[(])\s*([^,\s]+)\s*,\s*([^\])\s]+)\s*([\])])\s*")


def parse_arc(text: str) -> Arc:
    """Parse ``"[a,b]"``, ``"(a,b)"``, ``"[a,b)"`` or ``"(a,b]"``."""
    m = _ARC_RE.fullmatch(text)
    if not m:
        raise ValueError(f"not an arc: {text!r}")
    lb, a, b, rb = m.groups()
    return Arc(parse_angle(a), parse_angle(b), lb == "[", rb == "]")


Interval = tuple  # (lo, hi, lo_closed, hi_closed), 0 <= lo <= hi <= 1


def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    items = []
    for lo, hi, lc, hc in intervals:
        if hi == ONE:
            hc = False
        if lo > hi or (lo == hi and not (lc and hc)):
            continue
        items.append((lo, hi, lc, hc))
    items.sort(key=lambda t: (t[0], not t[2]))
    merged: list[list] = []
    for lo, hi, lc, hc in items:
        if merged:
            cur = merged[-1]
            if lo < cur[1] or (lo == cur[1] and (cur[3] or lc)):
                if hi > cur[1]:
                    cur[1], cur[3] = hi, hc
                elif hi == cur[1]:
                    cur[3] = cur[3] or hc
                continue
        merged.append([lo, hi, lc, hc])
    return tuple(tuple(m) for m in merged)


class ArcSet:
    """Finite union of circular arcs, stored in a unique canonical form."""

    __slots__ = ("_iv", "_hash")

    def __init__(self, arcs: Iterable[Arc] = ()):
        ivs = []
        for arc in arcs:
            ivs.extend(arc.intervals())
        self._iv = _normalize(ivs)
        self._hash = None

    @classmethod
    def _from_intervals(cls, intervals: Iterable[Interval]) -> ArcSet:
        obj = cls.__new__(cls)
        obj._iv = _normalize(intervals)
        obj._hash = None
        return obj

    @classmethod
    def empty(cls) -> ArcSet:
        return cls()

    @classmethod
    def full(cls) -> ArcSet:
        return cls([Arc(0, 0, full=True)])

    @classmethod
    def points(cls, xs: Iterable) -> ArcSet:
        return cls(Arc.point(x) for x in xs)

    @classmethod
    def parse(cls, text: str) -> ArcSet:
        text = text.strip()
        if text in ("", "∅"):
            return cls.empty()
        if text == "T":
            return cls.full()
        return cls(parse_arc(part) for part in text.split("∪"))

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._iv

    def __eq__(self, other) -> bool:
        return isinstance(other, ArcSet) and self._iv == other._iv

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._iv)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._iv)

    @property
    def is_empty(self) -> bool:
        return not self._iv

    @property
    def is_full(self) -> bool:
        return self._iv == ((ZERO, ONE, True, False),)

    def arcs(self) -> list[Arc]:
        """Connected components as arcs, sorted by start, with the arc through 0 fused."""
        ivs = list(self._iv)
        if not ivs:
            return []
        if self.is_full:
            return [Arc(0, 0, full=True)]
        wrap = None
        first, last = ivs[0], ivs[-1]
        if len(ivs) > 1 and first[0] == ZERO and first[2] and last[1] == ONE:
            wrap = Arc(last[0], first[1], last[2], first[3])
            ivs = ivs[1:-1]
        out = [Arc(lo, hi % 1, lc, hc) for lo, hi, lc, hc in ivs]
        if wrap is not None:
            out.append(wrap)
        out.sort(key=lambda a: a.start)
        return out

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.arcs())

    def __len__(self) -> int:
        return len(self.arcs())

    def __contains__(self, x) -> bool:
        x = Fraction(x) % 1
        for lo, hi, lc, hc in self._iv:
            if x < lo:
                return False
            if x == lo:
                return lc
            if x < hi or (x == hi and hc):
                return True
        return False

    contains_point = __contains__

    def union(self, other: ArcSet) -> ArcSet:
        return ArcSet._from_intervals(self._iv + other._iv)

    def complement(self) -> ArcSet:
        out = []
        pos, pos_closed = ZERO, True
        for lo, hi, lc, hc in self._iv:
            out.append((pos, lo, pos_closed, not lc))
            pos, pos_closed = hi, not hc
        out.append((pos, ONE, pos_closed, False))
        return ArcSet._from_intervals(out)

    def intersect(self, other: ArcSet) -> ArcSet:
        out = []
        a, b = self._iv, other._iv
        i = j = 0
        while i < len(a) and j < len(b):
            alo, ahi, alc, ahc = a[i]
            blo, bhi, blc, bhc = b[j]
            if alo > blo:
                lo, lc = alo, alc
            elif blo > alo:
                lo, lc = blo, blc
            else:
                lo, lc = alo, alc and blc
            if ahi < bhi:
                hi, hc = ahi, ahc
            elif bhi < ahi:
                hi, hc = bhi, bhc
            else:
                hi, hc = ahi, ahc and bhc
            out.append((lo, hi, lc, hc))
            if (ahi, ahc) < (bhi, bhc):
                i += 1
            else:
                j += 1
        return ArcSet._from_intervals(out)

    def difference(self, other: ArcSet) -> ArcSet:
        return self.intersect(other.complement())

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement

    def issubset(self, other: ArcSet) -> bool:
        return (self - other).is_empty

    def issuperset(self, other: ArcSet) -> bool:
        return other.issubset(self)

    __le__ = issubset
    __ge__ = issuperset

    def preimage(self) -> ArcSet:
        """Full preimage under doubling; every interval has two preimages."""
        out = []
        for lo, hi, lc, hc in self._iv:
            out.append((lo / 2, hi / 2, lc, hc))
            out.append(((lo + 1) / 2, (hi + 1) / 2, lc, hc))
        return ArcSet._from_intervals(out)

    def image(self) -> ArcSet:
        """Image under doubling, taken arc by arc.

        Raises ValueError if some component has length >= 1/2.
        """
        return ArcSet(arc.image() for arc in self.arcs())

    def closure(self) -> ArcSet:
        return ArcSet(arc.closure() for arc in self.arcs())

    def interior(self) -> ArcSet:
        return ArcSet(a for a in (arc.interior() for arc in self.arcs()) if a is not None)

    def is_finite(self) -> bool:
        return all(lo == hi for lo, hi, _, _ in self._iv)

    def isolated_points(self) -> list[Fraction]:
        return [lo for lo, hi, _, _ in self._iv if lo == hi]

    def endpoints(self) -> list[Fraction]:
        pts = []
        for arc in self.arcs():
            if arc.full:
                continue
            pts.append(arc.start)
            if arc.end != arc.start:
                pts.append(arc.end)
        return pts

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi, _, _ in self._iv), ZERO)

    def __str__(self) -> str:
        if self.is_empty:
            return "∅"
        return "∪".join(str(a) for a in self.arcs())

    def __repr__(self) -> str:
        return f"ArcSet({str(self)!r})"


def union_all(sets: Iterable[ArcSet]) -> ArcSet:
    ivs = []
    for s in sets:
        ivs.extend(s.intervals)
    return ArcSet._from_intervals(ivs)


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def count_exact_period(n: int) -> int:
    """Number of angles of exact period n under doubling."""
    return sum(mobius(n // d) * (2**d - 1) for d in range(1, n + 1) if n % d == 0)


def angles_of_period(n: int) -> list[Fraction]:
    q = 2**n - 1
    return [Fraction(k, q) for k in range(q) if exact_period(Fraction(k, q)) == n]
