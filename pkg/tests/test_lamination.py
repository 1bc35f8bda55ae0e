from fractions import Fraction as F

import pytest

from pseudomonodromy.circle import Arc, ArcSet, iterate
from pseudomonodromy.lamination import (
    Leaf,
    flip_side_check,
    leaves_of,
    polygon_edges,
    rq_trace,
    star_piece,
    structural_checks,
)


def nums(s: ArcSet, d: int):
    return [(int(a.start * d), int(a.end * d)) for a in s.arcs()]


def test_h4_leaves(pool10):
    lv = leaves_of(pool10.get("h4"))
    assert lv.major.endpoints == {F(1, 5), F(4, 5)}
    assert lv.major_prime.endpoints == {F(3, 10), F(7, 10)}
    assert lv.flip


def test_basilica_leaves(pool10):
    h = pool10.get("basilica")
    lv = leaves_of(h)
    assert lv.minor.endpoints == {F(1, 3), F(2, 3)}
    # of the two half-pairs only {1/3, 2/3} equals ℓ_2, so it is ℓ_0
    cands = [Leaf(F(1, 6), F(5, 6)), Leaf(F(1, 3), F(2, 3))]
    assert [c.same_set(lv.minor.image()) for c in cands] == [False, True]
    assert lv.major.endpoints == {F(1, 3), F(2, 3)}
    assert lv.major_prime.endpoints == {F(1, 6), F(5, 6)}
    assert lv.flip


def test_airplane_does_not_flip(pool10):
    assert not leaves_of(pool10.get("airplane")).flip


def test_leaf_rejects_point():
    with pytest.raises(ValueError):
        Leaf(F(1, 3), F(1, 3))


def test_lobster_trace(pool10):
    t = rq_trace(pool10.get("lobster"), pool10)
    assert t.denominator == 62
    assert t.return_times == [3]
    assert nums(t.R[1], 62) == [(26, 36)]
    assert t.R[2] == ArcSet([Arc.closed(F(52, 62), F(10, 62))])
    assert t.R[3] == ArcSet([Arc.closed(F(42, 62), F(20, 62))])
    assert nums(t.Q[3], 62) == [(18, 20), (42, 44)]
    assert nums(t.R[4], 62) == [(22, 26), (36, 40)]
    assert nums(t.R[5], 62) == [(10, 18), (44, 52)]
    assert t.R[0] == star_piece(t.component)


def test_h6_trace(pool10):
    t = rq_trace(pool10.get("h6"), pool10)
    assert t.denominator == 126
    assert t.Q[5] == ArcSet.parse("[37/126,50/126]∪[76/126,89/126]")
    assert nums(t.R[6], 126) == [(26, 52), (74, 100)]
    assert F(50, 126) in t.endpoint_marks[5] and F(37, 126) not in t.endpoint_marks[5]


def test_trace_recursion(pool10):
    for h in pool10:
        if h.period > 8:
            continue
        t = rq_trace(h, pool10)
        for n in range(h.period):
            assert t.R[n + 1] == t.Q[n].image()
            assert t.Q[n] <= t.R[n]
            if n not in t.return_times:
                assert t.Q[n] == t.R[n]
            assert t.endpoint_marks[n + 1] == {iterate(h.theta_minus, n), iterate(h.theta_plus, n)}


def test_structural_examples(pool10):
    for name in ("airplane", "h4", "lobster", "h6", "h6'"):
        rep = structural_checks(pool10.get(name), pool=pool10)
        assert rep.ok, rep.failures
        assert rep.converse_holds


def test_leaf_properties(pool10):
    for h in pool10:
        lv = leaves_of(h)
        cur = lv.minor
        for _ in range(h.period):
            cur = cur.image()
        assert cur.same_set(lv.minor)
        lengths = [leaf.length for leaf in lv.leaves]
        assert lv.minor.length == min(lengths) and lv.major.length == max(lengths)
        comp = star_piece(h).arcs()[0]
        assert lv.minor.length == 2 * comp.length
        assert lv.flip == (h.period % 2 == 0 and lv.minor.same_set(
            Leaf(iterate(h.theta_minus, h.period // 2), iterate(h.theta_plus, h.period // 2)))
            and iterate(h.theta_minus, h.period // 2) == h.theta_plus)


def test_flip_side_for_h4(pool10):
    h = pool10.get("h4")
    assert flip_side_check(h, leaves_of(h))


def test_polygon_edges(pool10):
    t = rq_trace(pool10.get("lobster"), pool10)
    e3 = polygon_edges(t, 3, "Q")
    assert sum(isinstance(e, Arc) for e in e3) == 2 and sum(isinstance(e, Leaf) for e in e3) == 2
    h4 = pool10.get("h4")
    t4 = rq_trace(h4, pool10)
    e0 = polygon_edges(t4, 0)
    chords = {e.endpoints for e in e0 if isinstance(e, Leaf)}
    lv = leaves_of(h4)
    assert chords == {lv.major.endpoints, lv.major_prime.endpoints}
    e2 = polygon_edges(t4, 2)
    # R_2 is the arc from 8/10 to 2/10 closed off by ℓ_0
    assert [str(e) for e in e2] == ["[4/5,1/5]", "{1/5, 4/5}"]
    with pytest.raises(ValueError):
        polygon_edges(t4, 9)
