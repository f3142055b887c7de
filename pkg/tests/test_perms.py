"""Permutation arithmetic against naive oracles and algebraic laws."""

import random

import pytest

from plocal.errors import ParseError
from plocal.perms import (
    as_perm,
    conj,
    cycle_type,
    cycles,
    format_perm,
    identity,
    inv,
    is_identity,
    moved_points,
    mul,
    pack_perm,
    parse_gens,
    parse_perm,
    perm_order,
    power,
)

import bruteforce as bf


def _random_perm(rng, n):
    img = list(range(n))
    rng.shuffle(img)
    return tuple(img)


def test_mul_applies_left_factor_first():
    # (1,2) then (2,3) sends 1 to 3: images are 0-indexed
    a = parse_perm("(1,2)", 3)
    b = parse_perm("(2,3)", 3)
    assert mul(a, b)[0] == 2
    assert mul(a, b) == parse_perm("(1,3,2)", 3)


def test_group_laws_random():
    rng = random.Random(101)
    for _ in range(200):
        n = rng.randrange(1, 12)
        a, b, c = (_random_perm(rng, n) for _ in range(3))
        e = identity(n)
        assert mul(a, e) == a and mul(e, a) == a
        assert mul(a, inv(a)) == e and mul(inv(a), a) == e
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert inv(mul(a, b)) == mul(inv(b), inv(a))
        assert mul(a, b) == bf.pmul(a, b)


def test_conj_is_right_action():
    rng = random.Random(102)
    for _ in range(100):
        n = rng.randrange(2, 10)
        p, g, h = (_random_perm(rng, n) for _ in range(3))
        assert conj(p, g) == mul(mul(inv(g), p), g)
        assert conj(conj(p, g), h) == conj(p, mul(g, h))
        assert cycle_type(conj(p, g)) == cycle_type(p)


def test_power_matches_repeated_mul():
    rng = random.Random(103)
    for _ in range(50):
        n = rng.randrange(1, 10)
        p = _random_perm(rng, n)
        acc = identity(n)
        for k in range(7):
            assert power(p, k) == acc
            acc = mul(acc, p)
        assert power(p, -1) == inv(p)
        assert power(p, -3) == inv(power(p, 3))


def test_order_and_cycles():
    rng = random.Random(104)
    for _ in range(80):
        n = rng.randrange(1, 11)
        p = _random_perm(rng, n)
        assert perm_order(p) == bf.porder(p)
        assert is_identity(power(p, perm_order(p)))
        # cycles partition the moved points and start at their least point
        pts = [x for c in cycles(p) for x in c]
        assert sorted(pts) == moved_points(p)
        for c in cycles(p):
            assert c[0] == min(c)


def test_parse_format_round_trip():
    rng = random.Random(105)
    for _ in range(100):
        n = rng.randrange(1, 12)
        p = _random_perm(rng, n)
        assert parse_perm(format_perm(p), n) == p
    assert format_perm(identity(5)) == "()"
    assert parse_perm("()", 4) == identity(4)
    assert parse_perm("(1,2)(3,4)", 4) == (1, 0, 3, 2)


def test_parse_rejects_bad_text():
    with pytest.raises(ParseError):
        parse_perm("", 3)
    with pytest.raises(ParseError):
        parse_perm("(1,2", 3)
    with pytest.raises(ParseError):
        parse_perm("(1,4)", 3)
    with pytest.raises(ParseError):
        parse_perm("(1,2)(2,3)", 3)
    with pytest.raises(ParseError):
        parse_perm("(1,x)", 3)
    with pytest.raises(ParseError):
        parse_gens(" ; ", 3)


def test_as_perm_coercion():
    assert as_perm("(1,2,3)", 3) == (1, 2, 0)
    assert as_perm((1, 0, 2), 3) == (1, 0, 2)
    with pytest.raises(ParseError):
        as_perm((0, 0, 1), 3)


def test_pack_perm_is_injective_and_deterministic():
    rng = random.Random(106)
    seen = {}
    for _ in range(200):
        n = rng.randrange(1, 9)
        p = _random_perm(rng, n)
        blob = pack_perm(p)
        assert pack_perm(p) == blob
        if blob in seen:
            assert seen[blob] == p
        seen[blob] = p
    big = tuple(reversed(range(300)))
    assert pack_perm(big) != pack_perm(tuple(range(300)))
