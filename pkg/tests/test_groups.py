"""Group algorithms cross-checked against exhaustive element scans.

Each subject group is small enough that the naive oracles in
bruteforce.py terminate quickly; parity with them is the correctness
argument for the stabilizer-chain implementations.
"""

import random

import pytest

from plocal.config import limits_with
from plocal.errors import DomainError, ResourceLimitError
from plocal.groups import (
    build_group,
    center,
    centralizer,
    conjugacy_classes,
    element_centralizer,
    intersection,
    normalizer,
    omega1_center,
    p_core,
    p_part,
    subgroup_from_elements,
    subgroup_from_gens,
    sylow_p,
    trivial_subgroup,
    whole_group,
)
from plocal.perms import parse_gens, parse_perm, perm_order

import bruteforce as bf
from conftest import SMALL_CORPUS, get_group


_ORDERS = {
    "sym(3)": 6,
    "sym(4)": 24,
    "sym(5)": 120,
    "alt(5)": 60,
    "gl32": 168,
    "m11": 7920,
    "m12": 95040,
}


def test_orders_match_brute_closure():
    for name in SMALL_CORPUS:
        G = get_group(name)
        els = bf.elements(G)
        assert G.order() == _ORDERS[name]
        assert len(els) == G.order()
        assert all(G.contains(x) for x in els)


def test_large_orders_without_enumeration():
    assert get_group("m11").order() == 7920
    assert get_group("m12").order() == 95040


def test_contains_rejects_outside_elements():
    G = get_group("alt(5)")
    assert not G.contains(parse_perm("(1,2)", 5))
    assert G.contains(parse_perm("(1,2,3)", 5))


def _random_subgroups(G, rng, count):
    """Random cyclic and 2-generated subgroups from sampled elements."""
    els = sorted(bf.elements(G))
    out = []
    for _ in range(count):
        a = rng.choice(els)
        b = rng.choice(els)
        gens = [a] if rng.random() < 0.5 else [a, b]
        gens = [g for g in gens if perm_order(g) > 1]
        if not gens:
            continue
        out.append(subgroup_from_gens(G, gens))
    return out


def test_centralizer_normalizer_center_against_scan():
    rng = random.Random(11)
    for name in SMALL_CORPUS:
        G = get_group(name)
        els = bf.elements(G)
        for H in _random_subgroups(G, rng, 6):
            hels = H.elements()
            C = centralizer(G, H)
            assert set(C.elements()) == bf.centralizer_of_set(els, sorted(hels))
            N = normalizer(G, H)
            assert set(N.elements()) == bf.normalizer_of_set(els, hels)
            Z = center(H)
            assert set(Z.elements()) == bf.center_of(hels)
        x = rng.choice(sorted(els))
        Cx, orbit_len = element_centralizer(G, x)
        assert set(Cx.elements()) == bf.centralizer_of_set(els, [x])
        assert orbit_len * Cx.order() == G.order()
        assert set(centralizer(G, x).elements()) == set(Cx.elements())


def test_intersection_against_scan():
    rng = random.Random(12)
    for name in ["sym(4)", "sym(5)", "gl32"]:
        G = get_group(name)
        subs = _random_subgroups(G, rng, 8)
        for A, B in zip(subs, subs[1:]):
            got = intersection(A, B)
            want = A.elements() & B.elements()
            assert set(got.elements()) == want


def test_sylow_and_p_core_against_scan():
    for name in SMALL_CORPUS:
        G = get_group(name)
        els = bf.elements(G)
        n = len(els)
        for p in (2, 3, 5):
            if n % p:
                continue
            S = sylow_p(G, p)
            sels = S.elements()
            assert len(sels) == bf.p_part(n, p)
            assert bf.is_subgroup(set(sels), G.degree)
            O = p_core(G, p)
            assert set(O.elements()) == bf.p_core_of(els, p, G.degree)


def test_conjugacy_classes_against_scan():
    for name in SMALL_CORPUS:
        G = get_group(name)
        els = bf.elements(G)
        want = bf.conjugacy_classes_of(els)
        table = conjugacy_classes(G)
        assert len(table) == len(want)
        assert sorted(table.sizes) == sorted(len(c) for c in want)
        assert sum(table.sizes) == len(els)
        by_size_min = {(len(c), min(c)) for c in want}
        for i, r in enumerate(table.reps):
            cls = {bf.pconj(r, g) for g in els}
            assert (len(cls), min(cls)) in by_size_min
            assert table.sizes[i] == len(cls)
            assert table.class_of(r) == i
            assert table.orders[i] == perm_order(r)


def test_class_labels_unique_and_stable():
    table = conjugacy_classes(get_group("sym(5)"))
    assert table.labels == ("e", "2", "2+2", "3", "4", "5", "3+2")
    assert len(set(table.labels)) == len(table.labels)
    assert table.index_by_label("2+2") == 2
    with pytest.raises(DomainError):
        table.index_by_label("nope")


def test_canonical_keys_identify_equal_subgroups():
    G = get_group("sym(4)")
    v4a = subgroup_from_gens(G, parse_gens("(1,2)(3,4); (1,3)(2,4)", 4))
    v4b = subgroup_from_gens(G, parse_gens("(1,4)(2,3); (1,3)(2,4)", 4))
    assert v4a.canonical_key() == v4b.canonical_key()
    assert v4a == v4b and hash(v4a) == hash(v4b)
    other = subgroup_from_gens(G, parse_gens("(1,2); (3,4)", 4))
    assert other.order() == 4
    assert other.canonical_key() != v4a.canonical_key()


def test_canonical_key_big_subgroup_path():
    # drive the stabilizer-chain key by shrinking the element listing cap
    limits = limits_with(element_list_cap=8)
    G = build_group(5, parse_gens("(1,2); (1,2,3,4,5)", 5), limits=limits)
    A = subgroup_from_gens(G, parse_gens("(1,2,3); (2,3,4); (3,4,5)", 5))
    B = subgroup_from_gens(G, parse_gens("(3,4,5); (1,2,3); (1,2)(4,5)", 5))
    assert A.order() == B.order() == 60
    assert A.canonical_key() == B.canonical_key()
    assert A.canonical_key().startswith(b"C")


def test_subgroup_handles_basic_behavior():
    G = get_group("sym(4)")
    T = trivial_subgroup(G)
    assert T.order() == 1
    W = whole_group(G)
    assert W.order() == 24
    H = subgroup_from_elements(G, bf.close(parse_gens("(1,2,3)", 4), 4))
    assert H.order() == 3
    g = parse_perm("(3,4)", 4)
    K = H.conjugate(g)
    assert K.order() == 3
    assert K.canonical_key() != H.canonical_key()
    assert H.is_subgroup_of(W) and not W.is_subgroup_of(H)
    assert not H.normalized_by(g) or K == H


def test_enumeration_cap_raises():
    limits = limits_with(enumeration_cap=100)
    G = build_group(5, parse_gens("(1,2); (1,2,3,4,5)", 5), limits=limits)
    H = whole_group(G)
    with pytest.raises(ResourceLimitError):
        H.elements()


def test_omega1_center_of_p_group():
    G = get_group("sym(4)")
    D8 = sylow_p(G, 2)
    Z = omega1_center(D8, 2)
    # the center of a dihedral group of order 8 has order 2
    assert Z.order() == 2
    assert all(perm_order(z) in (1, 2) for z in Z.elements())


def test_p_part_values():
    assert p_part(24, 2) == 8
    assert p_part(24, 3) == 3
    assert p_part(25, 2) == 1
