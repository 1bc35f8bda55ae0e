"""Hyperbolic components as conjugate pairs of periodic angles.

A component is identified by its two external angles ``theta_minus <
theta_plus``; its wake is represented by the closed interval between them.
Components of period 2..P are enumerated by Lavaurs' pairing: periods are
processed in increasing order and, within a period, the smallest unpaired
angle is joined to the first larger unpaired angle whose chord crosses no
chord drawn so far.

A pool built up to period P is enough to decide conspicuousness for every
component of period <= P: a conspicuous H' has period below per(H), and the
no-smaller-period-in-between condition only involves components of period
below per(H').
"""

from __future__ import annotations

import bisect
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from .circle import angles_of_period, chords_cross, exact_period, format_angle, parse_angle
from .coding import OPPOSITE, PartitionSpec, itinerary_prefix

log = logging.getLogger(__name__)

# documentation names only; angle pairs are the identifiers
ALIASES = {
    "basilica": ("1/3", "2/3"),
    "rabbit": ("1/7", "2/7"),
    "airplane": ("3/7", "4/7"),
    "h4": ("2/5", "3/5"),
    "lobster": ("13/31", "18/31"),
    "h5": ("13/31", "18/31"),
    "h6": ("26/63", "37/63"),
    "h6'": ("10/63", "17/63"),
    "h4'": ("3/15", "4/15"),
    "h5'": ("5/31", "6/31"),
}


@dataclass(frozen=True, order=True)
class HyperbolicComponent:
    period: int
    theta_minus: Fraction
    theta_plus: Fraction
    kneading: str = field(compare=False)

    @classmethod
    def from_angles(cls, theta_minus, theta_plus) -> HyperbolicComponent:
        """Build a component from its two angles without checking the pairing."""
        tm, tp = Fraction(theta_minus) % 1, Fraction(theta_plus) % 1
        if not 0 < tm < tp < 1:
            raise ValueError("need 0 < theta_minus < theta_plus < 1")
        n = exact_period(tm)
        if n is None or n != exact_period(tp):
            raise ValueError("angles must be periodic with the same exact period")
        return cls(n, tm, tp, itinerary_prefix(PartitionSpec.plus(tm), tm, n))

    @property
    def discarded(self) -> str:
        return self.kneading[:-1]

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        return self.theta_minus, self.theta_plus

    @cached_property
    def star_spec(self) -> PartitionSpec:
        return PartitionSpec.star(self.theta_minus, self.theta_plus)

    @cached_property
    def plus_spec(self) -> PartitionSpec:
        return PartitionSpec.plus(self.theta_minus)

    @cached_property
    def minus_spec(self) -> PartitionSpec:
        return PartitionSpec.minus(self.theta_plus)

    def in_wake(self, x: Fraction) -> bool:
        return self.theta_minus <= x <= self.theta_plus

    def label(self) -> str:
        return f"({format_angle(self.theta_minus)}, {format_angle(self.theta_plus)})"

    def __str__(self) -> str:
        return f"H{self.label()} per={self.period} K={self.kneading}"


def kneading(h: HyperbolicComponent) -> str:
    return h.kneading


def discarded_kneading(h: HyperbolicComponent) -> str:
    return h.discarded


def wake_gt(h1: HyperbolicComponent, h2: HyperbolicComponent) -> bool:
    """``h1 ≻ h2``: the wake of h1 lies strictly inside the wake of h2."""
    if h1.key == h2.key:
        return False
    return h2.theta_minus <= h1.theta_minus and h1.theta_plus <= h2.theta_plus


def pair_periodic_angles(max_period: int) -> ComponentPool:
    """Enumerate all components of period 2..max_period by Lavaurs pairing."""
    if max_period < 2:
        raise ValueError("max_period must be at least 2")
    # sorted endpoints of every chord drawn so far, as (angle, chord index)
    endpoints: list[tuple[Fraction, int]] = []
    comps: list[HyperbolicComponent] = []
    for n in range(2, max_period + 1):
        current = angles_of_period(n)
        partner: dict[Fraction, Fraction] = {}
        chord_of: dict[Fraction, int] = {}
        events = sorted([(x, -1) for x in current] + endpoints)
        base = len(comps)
        new: list[tuple[Fraction, Fraction]] = []
        for i, (a, tag) in enumerate(events):
            if tag != -1 or a in partner:
                continue
            open_chords: set[int] = set()
            for x, t in events[i + 1:]:
                if t == -1:
                    if x in partner:
                        t = chord_of[x]
                    elif not open_chords:
                        partner[a], partner[x] = x, a
                        chord_of[a] = chord_of[x] = base + len(new)
                        new.append((a, x))
                        break
                    else:
                        continue
                open_chords ^= {t}
            else:
                raise RuntimeError(f"no partner for {a} at period {n}")
        for a, b in new:
            idx = len(comps)
            comps.append(HyperbolicComponent(n, a, b, itinerary_prefix(PartitionSpec.plus(a), a, n)))
            bisect.insort(endpoints, (a, idx))
            bisect.insort(endpoints, (b, idx))
    return ComponentPool(max_period, sorted(comps))


class ComponentPool:
    """All components of period 2..max_period, sorted by (period, theta_minus)."""

    def __init__(self, max_period: int, components):
        self.max_period = max_period
        self.components: list[HyperbolicComponent] = sorted(components)
        self._by_key = {h.key: h for h in self.components}

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComponentPool)
            and self.max_period == other.max_period
            and [(h.key, h.kneading) for h in self] == [(h.key, h.kneading) for h in other]
        )

    def of_period(self, n: int) -> list[HyperbolicComponent]:
        return [h for h in self.components if h.period == n]

    def find(self, theta_minus, theta_plus) -> HyperbolicComponent | None:
        return self._by_key.get((Fraction(theta_minus) % 1, Fraction(theta_plus) % 1))

    def get(self, name_or_pair) -> HyperbolicComponent:
        if isinstance(name_or_pair, str):
            name_or_pair = ALIASES[name_or_pair.lower()]
        tm, tp = (parse_angle(x) if isinstance(x, str) else Fraction(x) for x in name_or_pair)
        h = self.find(tm, tp)
        if h is None:
            raise KeyError(f"({tm}, {tp}) is not a component of this pool")
        return h

    @cached_property
    def _tree(self) -> tuple[dict, dict]:
        """Parent/children maps of wake nesting (the innermost strictly larger wake)."""
        parent: dict[tuple, HyperbolicComponent | None] = {}
        children: dict[tuple, list] = {h.key: [] for h in self.components}
        stack: list[HyperbolicComponent] = []
        for h in sorted(self.components, key=lambda c: (c.theta_minus, -c.theta_plus)):
            while stack and stack[-1].theta_plus < h.theta_minus:
                stack.pop()
            top = stack[-1] if stack else None
            parent[h.key] = top
            if top is not None:
                children[top.key].append(h)
            stack.append(h)
        return parent, children

    def parent(self, h: HyperbolicComponent) -> HyperbolicComponent | None:
        return self._tree[0][h.key]

    def children(self, h: HyperbolicComponent) -> list[HyperbolicComponent]:
        return self._tree[1][h.key]

    def descendants(self, h: HyperbolicComponent) -> list[HyperbolicComponent]:
        out, todo = [], list(self.children(h))
        while todo:
            c = todo.pop()
            out.append(c)
            todo.extend(self.children(c))
        return out

    def _check(self, h: HyperbolicComponent) -> None:
        if h.period > self.max_period:
            raise ValueError(f"pool of max period {self.max_period} cannot serve period {h.period}")

    def to_json(self) -> dict:
        return {
            "max_period": self.max_period,
            "components": [
                {
                    "period": h.period,
                    "theta_minus": format_angle(h.theta_minus),
                    "theta_plus": format_angle(h.theta_plus),
                    "kneading": h.kneading,
                }
                for h in self.components
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> ComponentPool:
        comps = []
        for c in data["components"]:
            h = HyperbolicComponent.from_angles(parse_angle(c["theta_minus"]), parse_angle(c["theta_plus"]))
            if h.period != int(c["period"]) or h.kneading != c["kneading"]:
                raise ValueError(f"stored data for {h.label()} does not match its angles")
            comps.append(h)
        return cls(int(data["max_period"]), comps)


def combinatorial_arc(h, h_prime, pool: ComponentPool) -> list[HyperbolicComponent]:
    """Components strictly between h and h' (with h' ≻ h), ordered from h outward."""
    if not wake_gt(h_prime, h):
        raise ValueError(f"{h_prime.label()} is not ≻ {h.label()}")
    between = [c for c in pool if wake_gt(h_prime, c) and wake_gt(c, h)]
    # nested wakes: the larger the wake, the closer to h
    return sorted(between, key=lambda c: c.theta_plus - c.theta_minus, reverse=True)


def conspicuous_components(h: HyperbolicComponent, pool: ComponentPool) -> list[HyperbolicComponent]:
    """Every H' ▷ h, h included, sorted by decreasing period."""
    pool._check(h)
    if pool.find(*h.key) is None:
        raise ValueError(f"{h.label()} is not in the pool")
    out = [h]
    # walk the subtree below h, tracking the smallest period strictly between
    todo = [(c, h.period) for c in pool.children(h)]
    while todo:
        c, floor = todo.pop()
        if c.period < h.period and c.period <= floor:
            out.append(c)
        nxt = min(floor, c.period)
        for g in pool.children(c):
            todo.append((g, nxt))
    out.sort(key=lambda c: (-c.period, c.theta_minus))
    return out


def return_times(h: HyperbolicComponent, pool: ComponentPool) -> list[int]:
    return sorted({c.period for c in conspicuous_components(h, pool) if c.key != h.key})


def validate_pair(theta_minus, theta_plus, pool: ComponentPool | None = None) -> HyperbolicComponent:
    """Check that two angles bound a component; raise ValueError saying why not."""
    tm, tp = Fraction(theta_minus) % 1, Fraction(theta_plus) % 1
    if not 0 < tm < tp < 1:
        raise ValueError(f"need 0 < theta_minus < theta_plus < 1, got {tm}, {tp}")
    pm, pp = exact_period(tm), exact_period(tp)
    if pm is None or pp is None:
        raise ValueError("both angles must be periodic (odd denominators)")
    if pm != pp:
        raise ValueError(f"period mismatch: {format_angle(tm)} has period {pm}, {format_angle(tp)} has {pp}")
    kp = itinerary_prefix(PartitionSpec.plus(tm), tm, pm)
    km = itinerary_prefix(PartitionSpec.minus(tp), tp, pm)
    if kp != km:
        raise ValueError(f"kneading mismatch: I+ gives {kp}, I- gives {km}")
    if pool is None or pool.max_period < pm:
        pool = pair_periodic_angles(pm)
    h = pool.find(tm, tp)
    if h is None:
        partner = next((c for c in pool.of_period(pm) if tm in c.key), None)
        crossing = [
            c for c in pool if c.period <= pm and chords_cross(tm, tp, c.theta_minus, c.theta_plus)
        ]
        msg = "not a Lavaurs pair"
        if partner is not None:
            msg += f"; {format_angle(tm)} is paired with {partner.label()}"
        if crossing:
            msg += f"; chord crosses {crossing[0].label()}"
        raise ValueError(msg)
    return h


def check_kneading_flip(h: HyperbolicComponent, h_prime: HyperbolicComponent) -> bool:
    """K(h') agrees with K(h) before position per(h') and is opposite there."""
    n = h_prime.period
    return (
        h_prime.kneading[: n - 1] == h.kneading[: n - 1]
        and h_prime.kneading[n - 1] == OPPOSITE[h.kneading[n - 1]]
    )


# ----------------------------------------------------------------- caching

_CONFIG_ENV = "PSEUDOMONODROMY_CACHE"


def cache_dir() -> Path:
    """Cache directory: env var, then config file, then ``~/.cache``."""
    env = os.environ.get(_CONFIG_ENV)
    if env:
        return Path(env)
    import configparser

    cfg_path = Path(os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config")) / "pseudomonodromy" / "config.ini"
    if cfg_path.exists():
        cfg = configparser.ConfigParser()
        cfg.read(cfg_path)
        if cfg.has_option("cache", "dir"):
            return Path(cfg.get("cache", "dir")).expanduser()
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "pseudomonodromy"


def save_pool(pool: ComponentPool, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(pool.to_json(), indent=1) + "\n")
    tmp.replace(path)


def load_pool(max_period: int, path: Path | None = None, use_cache: bool = True) -> ComponentPool:
    """Load a pool from JSON (at least ``max_period``), rebuilding on any problem."""
    if path is None:
        if not use_cache:
            return pair_periodic_angles(max_period)
        path = cache_dir() / f"pool_{max_period}.json"
    path = Path(path)
    if path.exists():
        try:
            pool = ComponentPool.from_json(json.loads(path.read_text()))
            if pool.max_period >= max_period:
                if pool.max_period > max_period:
                    pool = ComponentPool(max_period, [h for h in pool if h.period <= max_period])
                return pool
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("pool cache %s is corrupt (%s); rebuilding", path, exc)
    pool = pair_periodic_angles(max_period)
    try:
        save_pool(pool, path)
    except OSError as exc:
        log.warning("could not write pool cache %s: %s", path, exc)
    return pool
