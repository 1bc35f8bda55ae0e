"""Itinerary codings of angles under doubling.

Four partitions of the circle are supported, all determined by one or two
angles:

``circ(a)``
    open A-piece ``((a+1)/2, a/2)``, open B-piece ``(a/2, (a+1)/2)``, and the
    two boundary points coded ``∘``.
``plus(a)``
    A-piece ``[(a+1)/2, a/2)`` and B-piece ``[a/2, (a+1)/2)``.
``minus(a)``
    A-piece ``((a+1)/2, a/2]`` and B-piece ``(a/2, (a+1)/2]``.
``star(tm, tp)``
    open A-piece ``((tp+1)/2, tm/2)``, open B-piece ``(tp/2, (tm+1)/2)`` and the
    closed ``⋆``-piece ``[tm/2, tp/2] ∪ [(tm+1)/2, (tp+1)/2]``.

Boundary table, for a point x equal to one of the partition points:

=========  =============  =============
kind       x = a/2        x = (a+1)/2
=========  =============  =============
circ       ∘              ∘
plus       B              A
minus      A              B
=========  =============  =============

For ``star`` all four points ``tm/2, tp/2, (tm+1)/2, (tp+1)/2`` are coded ``⋆``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .circle import Arc, ArcSet, double, halves, lasso

A = "A"
B = "B"
STAR = "⋆"
CIRC = "∘"

OPPOSITE = {A: B, B: A}

_STAR_ALIASES = {"*": STAR, "⋆": STAR, "∗": STAR, "S": STAR}
_CIRC_ALIASES = {"o": CIRC, "∘": CIRC}


def normalize_symbols(text: str) -> str:
    """Map ASCII spellings (``*``, ``o``) to the canonical symbols."""
    out = []
    for ch in text:
        ch = _STAR_ALIASES.get(ch, _CIRC_ALIASES.get(ch, ch))
        if ch not in (A, B, STAR, CIRC):
            raise ValueError(f"unknown symbol {ch!r}")
        out.append(ch)
    return "".join(out)


def _primitive_root(cycle: str) -> str:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return cycle[:d]
    return cycle


@dataclass(frozen=True)
class Word:
    """A finite word, or an eventually periodic infinite one.

    ``prefix`` is the preperiodic part and ``cycle`` the repeating block; a
    finite word has an empty cycle. Infinite words are kept in a minimal form
    (primitive cycle, shortest prefix), so equality is semantic.

    String form: ``"BABB⋆"`` for finite words and ``"B(A⋆)*"`` for infinite ones.
    """

    prefix: str = ""
    cycle: str = ""

    def __post_init__(self):
        if not self.cycle:
            return
        cycle = _primitive_root(self.cycle)
        prefix = self.prefix
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = cycle[-1] + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @property
    def infinite(self) -> bool:
        return bool(self.cycle)

    def __len__(self) -> int:
        if self.cycle:
            raise TypeError("infinite word has no length")
        return len(self.prefix)

    def __getitem__(self, i: int) -> str:
        if i < 0:
            raise IndexError("negative index")
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.cycle:
            raise IndexError(i)
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def take(self, n: int) -> str:
        if not self.cycle:
            return self.prefix[:n]
        if n <= len(self.prefix):
            return self.prefix[:n]
        rest = n - len(self.prefix)
        reps = -(-rest // len(self.cycle))
        return self.prefix + (self.cycle * reps)[:rest]

    def __str__(self) -> str:
        if not self.cycle:
            return self.prefix
        return f"{self.prefix}({self.cycle})*"

    @classmethod
    def parse(cls, text: str) -> Word:
        text = text.strip()
        if text.endswith(")*"):
            head, _, body = text[:-2].partition("(")
            return cls(normalize_symbols(head), normalize_symbols(body))
        return cls(normalize_symbols(text))


@dataclass(frozen=True)
class PartitionSpec:
    """Which partition to code against: ``circ``, ``plus``, ``minus`` or ``star``."""

    kind: str
    alpha: Fraction
    beta: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("circ", "plus", "minus", "star"):
            raise ValueError(f"unknown partition kind {self.kind!r}")
        object.__setattr__(self, "alpha", Fraction(self.alpha) % 1)
        if self.kind == "star":
            if self.beta is None:
                raise ValueError("star partition needs two angles")
            object.__setattr__(self, "beta", Fraction(self.beta) % 1)
            if not self.alpha < self.beta:
                raise ValueError("star partition needs theta_minus < theta_plus")

    @classmethod
    def circ(cls, alpha) -> PartitionSpec:
        return cls("circ", alpha)

    @classmethod
    def plus(cls, alpha) -> PartitionSpec:
        return cls("plus", alpha)

    @classmethod
    def minus(cls, alpha) -> PartitionSpec:
        return cls("minus", alpha)

    @classmethod
    def star(cls, theta_minus, theta_plus) -> PartitionSpec:
        return cls("star", theta_minus, theta_plus)


@lru_cache(maxsize=4096)
def pieces(spec: PartitionSpec) -> dict[str, ArcSet]:
    """The pieces of a partition as exact arc sets; they partition the circle."""
    if spec.kind == "star":
        tm0, tm1 = halves(spec.alpha)
        tp0, tp1 = halves(spec.beta)
        return {
            A: ArcSet([Arc.open(tp1, tm0)]),
            B: ArcSet([Arc.open(tp0, tm1)]),
            STAR: ArcSet([Arc.closed(tm0, tp0), Arc.closed(tm1, tp1)]),
        }
    lo, hi = halves(spec.alpha)
    if spec.kind == "circ":
        return {
            A: ArcSet([Arc.open(hi, lo)]),
            B: ArcSet([Arc.open(lo, hi)]),
            CIRC: ArcSet.points([lo, hi]),
        }
    if spec.kind == "plus":
        return {A: ArcSet([Arc(hi, lo, True, False)]), B: ArcSet([Arc(lo, hi, True, False)])}
    return {A: ArcSet([Arc(hi, lo, False, True)]), B: ArcSet([Arc(lo, hi, False, True)])}


def _bounds(spec: PartitionSpec) -> tuple[tuple[int, int], ...]:
    # boundary angles as (numerator, denominator) pairs, in increasing order
    try:
        return spec.__dict__["_bounds"]
    except KeyError:
        pass
    pts = list(halves(spec.alpha))
    if spec.kind == "star":
        tp0, tp1 = halves(spec.beta)
        pts = [pts[0], tp0, pts[1], tp1]
    out = tuple((x.numerator, x.denominator) for x in pts)
    object.__setattr__(spec, "_bounds", out)
    return out


def symbol(spec: PartitionSpec, x: Fraction) -> str:
    """Symbol of the piece containing x (integer comparisons, no arc sets)."""
    n, d = x.numerator, x.denominator
    bounds = _bounds(spec)
    if spec.kind == "star":
        (a0, b0), (a1, b1), (a2, b2), (a3, b3) = bounds
        if n * b0 < a0 * d:
            return A
        if n * b1 <= a1 * d:
            return STAR
        if n * b2 < a2 * d:
            return B
        if n * b3 <= a3 * d:
            return STAR
        return A
    (a0, b0), (a1, b1) = bounds
    lo, hi = n * b0 - a0 * d, n * b1 - a1 * d
    if lo > 0 and hi < 0:
        return B
    if lo != 0 and hi != 0:
        return A
    if spec.kind == "circ":
        return CIRC
    if spec.kind == "plus":
        return B if lo == 0 else A
    return A if lo == 0 else B


def itinerary(spec: PartitionSpec, theta: Fraction, length: int | None = None) -> Word:
    """Itinerary of theta: symbol j is the piece containing the j-th iterate.

    With ``length`` at most the orbit's preperiod plus period a finite word of
    that length is returned; otherwise (or with ``length=None``) the exact
    eventually periodic word.
    """
    theta = Fraction(theta) % 1
    pre, pts = lasso(theta)
    if length is not None and length <= len(pts):
        return Word("".join(symbol(spec, x) for x in pts[:length]))
    syms = "".join(symbol(spec, x) for x in pts)
    return Word(syms[:pre], syms[pre:])


def itinerary_prefix(spec: PartitionSpec, theta: Fraction, length: int) -> str:
    out, x = [], Fraction(theta) % 1
    for _ in range(length):
        out.append(symbol(spec, x))
        x = double(x)
    return "".join(out)


def kneading_of_angle(alpha: Fraction, length: int | None = None) -> Word:
    """Itinerary of alpha relative to its own ``circ`` partition."""
    return itinerary(PartitionSpec.circ(alpha), alpha, length)


def cylinder_set(spec: PartitionSpec, word: str) -> ArcSet:
    """Angles whose itinerary starts with ``word``, as an exact arc set.

    Built backwards: ``T_w = piece(w0) ∩ σ⁻¹(T_{w[1:]})``.
    """
    word = normalize_symbols(str(word))
    parts = pieces(spec)
    if not word:
        return ArcSet.full()
    result = parts[word[-1]]
    for sym in reversed(word[:-1]):
        result = parts[sym] & result.preimage()
    return result


def closed_piece(spec: PartitionSpec, sym: str) -> ArcSet:
    return pieces(spec)[sym].closure()
