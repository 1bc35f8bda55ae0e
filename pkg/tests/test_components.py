import json
import logging
from fractions import Fraction as F

import pytest

from oracles import circ_kneading_prefix, kneading_int, naive_lavaurs, periodic_angles
from pseudomonodromy.circle import chords_cross
from pseudomonodromy.components import (
    ComponentPool,
    HyperbolicComponent,
    check_kneading_flip,
    combinatorial_arc,
    conspicuous_components,
    discarded_kneading,
    kneading,
    load_pool,
    pair_periodic_angles,
    return_times,
    save_pool,
    validate_pair,
    wake_gt,
)


def keys(hs):
    return {(h.theta_minus, h.theta_plus) for h in hs}


def test_small_pools():
    assert keys(pair_periodic_angles(2)) == {(F(1, 3), F(2, 3))}
    p3 = pair_periodic_angles(3).of_period(3)
    assert {(F(1, 7), F(2, 7)), (F(3, 7), F(4, 7))} <= keys(p3)
    assert len(p3) == 3


def test_period_four_list():
    expected = {(F(a, 15), F(b, 15)) for a, b in [(1, 2), (3, 4), (6, 9), (7, 8), (11, 12), (13, 14)]}
    assert keys(pair_periodic_angles(4).of_period(4)) == expected


def mobius_count(n):
    # number of angles of exact period n, by inclusion-exclusion over divisors
    def mu(m):
        out, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
            p += 1
        return -out if m > 1 else out

    return sum(mu(n // d) * (2**d - 1) for d in range(1, n + 1) if n % d == 0)


def test_counts_follow_mobius(pool10):
    for n in range(2, 11):
        assert len(pool10.of_period(n)) == mobius_count(n) // 2
    assert len(pool10.of_period(4)) == 6


def test_pool_matches_naive_pairing(pool10):
    p8 = [h for h in pool10 if h.period <= 8]
    assert keys(p8) == naive_lavaurs(8)


def test_pool_is_noncrossing_and_periodic(pool10):
    hs = list(pool10)
    for h in hs:
        n = h.period
        assert circ_kneading_prefix(h.theta_minus, n)[:-1] == circ_kneading_prefix(h.theta_plus, n)[:-1]
        assert circ_kneading_prefix(h.theta_minus, n)[-1] == "∘"
        assert h.kneading == kneading_int(h.theta_minus.numerator, h.theta_minus.denominator, n)
    for i, a in enumerate(hs):
        for b in hs[i + 1:]:
            assert not chords_cross(a.theta_minus, a.theta_plus, b.theta_minus, b.theta_plus)


def test_every_periodic_angle_is_paired_once(pool10):
    for n in range(2, 9):
        ends = [x for h in pool10.of_period(n) for x in h.key]
        assert sorted(ends) == periodic_angles(n)


@pytest.mark.parametrize(
    "pair, k, khat",
    [(("1/3", "2/3"), "BA", "B"), (("3/7", "4/7"), "BAA", "BA"), (("13/31", "18/31"), "BABBA", "BABB")],
)
def test_kneadings(pool10, pair, k, khat):
    h = pool10.get(pair)
    assert kneading(h) == k and discarded_kneading(h) == khat


def test_wake_order(pool10):
    air, lob, bas = pool10.get("airplane"), pool10.get("lobster"), pool10.get("basilica")
    assert wake_gt(air, lob)
    assert not wake_gt(bas, air)
    assert not wake_gt(lob, lob)


def test_combinatorial_arc(pool10):
    air, h5, h6 = pool10.get("airplane"), pool10.get("h5"), pool10.get("h6")
    assert h5 in combinatorial_arc(h6, air, pool10)
    lob = pool10.get("lobster")
    assert all(c.period >= 3 for c in combinatorial_arc(lob, air, pool10))
    with pytest.raises(ValueError):
        combinatorial_arc(lob, lob, pool10)


def test_conspicuous_examples(pool10):
    air = pool10.get("airplane")
    assert conspicuous_components(air, pool10) == [air]
    assert keys(conspicuous_components(pool10.get("lobster"), pool10)) == {(F(13, 31), F(18, 31)), (F(3, 7), F(4, 7))}
    h6p = pool10.get("h6'")
    cs = conspicuous_components(h6p, pool10)
    assert keys(cs) == {(F(10, 63), F(17, 63)), (F(5, 31), F(6, 31)), (F(3, 15), F(4, 15))}
    assert [c.period for c in cs] == [6, 5, 4]
    assert [c.kneading for c in cs] == ["BBABBB", "BBABA", "BBAA"]


def test_return_times(pool10):
    assert return_times(pool10.get("airplane"), pool10) == []
    assert return_times(pool10.get("h6"), pool10) == [3, 5]
    assert return_times(pool10.get("h6'"), pool10) == [4, 5]


def brute_conspicuous(h, hs):
    out = []
    for c in hs:
        if c.key == h.key:
            out.append(c)
            continue
        # c ▷ h: c lies in the wake of h, with no smaller period in between
        if not wake_gt(c, h):
            continue
        between = [d for d in hs if wake_gt(c, d) and wake_gt(d, h)]
        if c.period < h.period and not any(d.period < c.period for d in between):
            out.append(c)
    return out


def test_conspicuous_matches_definition(pool10):
    hs = [h for h in pool10 if h.period <= 8]
    small = ComponentPool(8, hs)
    for h in hs:
        assert keys(conspicuous_components(h, small)) == keys(brute_conspicuous(h, hs))


def test_conspicuous_structure(pool10):
    for h in pool10:
        cs = conspicuous_components(h, pool10)
        periods = [c.period for c in cs]
        assert cs[0] == h and periods == sorted(periods, reverse=True) and len(set(periods)) == len(periods)
        for c in cs[1:]:
            assert check_kneading_flip(h, c)
            # transitivity
            assert keys(conspicuous_components(c, pool10)) <= keys(cs)


def test_lavaurs_lemma(pool10):
    hs = [h for h in pool10 if h.period <= 8]
    for a in hs:
        for b in hs:
            if a.period == b.period and wake_gt(a, b):
                assert any(c.period < a.period for c in combinatorial_arc(b, a, pool10))


def test_from_angles_rejects():
    with pytest.raises(ValueError):
        HyperbolicComponent.from_angles(F(2, 3), F(1, 3))
    with pytest.raises(ValueError):
        HyperbolicComponent.from_angles(F(1, 3), F(3, 7))


@pytest.mark.parametrize(
    "pair, reason",
    [
        (("1/3", "3/7"), "period mismatch"),
        (("1/6", "1/3"), "periodic"),
        (("1/7", "3/7"), "kneading mismatch"),
        (("2/3", "1/3"), "0 < theta_minus"),
    ],
)
def test_validate_pair_diagnostics(pair, reason):
    with pytest.raises(ValueError, match=reason):
        validate_pair(*map(F, pair))


def test_validate_pair_reports_partner():
    with pytest.raises(ValueError, match=r"not a Lavaurs pair; 1/5 is paired with \(1/5, 4/15\); chord crosses"):
        validate_pair(F(3, 15), F(12, 15))


def test_json_round_trip(pool10, tmp_path):
    data = pool10.to_json()
    assert data["max_period"] == 10
    first = data["components"][0]
    assert first == {"period": 2, "theta_minus": "1/3", "theta_plus": "2/3", "kneading": "BA"}
    assert ComponentPool.from_json(json.loads(json.dumps(data))) == pool10
    path = tmp_path / "pool.json"
    save_pool(pool10, path)
    assert load_pool(6, path) == ComponentPool(6, [h for h in pool10 if h.period <= 6])


def test_corrupt_cache_is_rebuilt(tmp_path, caplog):
    path = tmp_path / "pool.json"
    path.write_text('{"max_period": 4, "components": [{"period": 4')
    with caplog.at_level(logging.WARNING):
        pool = load_pool(4, path)
    assert len(pool) == 1 + 3 + 6
    assert "corrupt" in caplog.text
    assert json.loads(path.read_text())["max_period"] == 4


def test_tampered_cache_is_rejected(tmp_path, caplog):
    path = tmp_path / "pool.json"
    data = pair_periodic_angles(3).to_json()
    data["components"][0]["kneading"] = "AB"
    path.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING):
        pool = load_pool(3, path)
    assert pool.get("basilica").kneading == "BA"


def test_tree(pool10):
    bas, air = pool10.get("basilica"), pool10.get("airplane")
    for h in pool10:
        p = pool10.parent(h)
        if p is None:
            assert not any(wake_gt(h, c) for c in pool10)
        else:
            assert wake_gt(h, p)
            assert not any(wake_gt(h, c) and wake_gt(c, p) for c in pool10)
    assert air in pool10.descendants(bas)
    assert set(pool10.descendants(air)) == {c for c in pool10 if wake_gt(c, air)}
