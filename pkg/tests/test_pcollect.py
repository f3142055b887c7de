"""Distinguished-collection predicates against exhaustive oracles.

Brute predicates below are computed from explicit element sets with the
textbook definitions; the package must agree on every conjugacy class
of p-subgroups in every small corpus group.
"""

import pytest

from plocal.errors import DomainError
from plocal.pcollect import (
    CollectionKind,
    build_collection,
    characteristic_classification,
    contains_p_central,
    enumerate_p_subgroups,
    has_characteristic_p,
    hat_subgroup,
    is_distinguished,
    is_p_central,
    is_p_radical,
    local_core,
    p_central_data,
    radical_closure,
)
from plocal.groups import subgroup_from_elements, sylow_p
from plocal.perms import parse_perm, perm_order

import bruteforce as bf
from conftest import SMALL_CORPUS, get_group


_PRIMES = {"sym(3)": 3, "sym(4)": 2, "sym(5)": 2, "alt(5)": 2, "gl32": 2}


def _brute_classes(els, p, degree):
    """Conjugacy classes of nontrivial p-subgroups as sets of frozensets."""
    subs = bf.p_subgroups(els, p, degree)
    remaining = set(subs)
    classes = []
    while remaining:
        sub = min(remaining, key=sorted)
        orbit = {frozenset(bf.pconj(x, g) for x in sub) for g in els}
        classes.append(orbit)
        remaining -= orbit
    return classes


def _brute_radical(els, p, degree, sub):
    N = bf.normalizer_of_set(els, sub)
    return bf.p_core_of(N, p, degree) == sub


def _brute_centric(els, p, sub):
    C = bf.centralizer_of_set(els, sorted(sub))
    Z = bf.center_of(sub)
    return len(Z) == bf.p_part(len(C), p)


def _brute_distinguished(els, p, degree, sub):
    return any(
        bf.is_p_central_in(els, z, p)
        for z in bf.center_of(sub)
        if z != bf.pident(degree)
    )


def _brute_tilde(els, p, sub):
    return any(bf.porder(z) == p and bf.is_p_central_in(els, z, p) for z in sub)


def _brute_elementary(sub, p, degree):
    if any(bf.porder(x) not in (1, p) for x in sub):
        return False
    return all(bf.pmul(a, b) == bf.pmul(b, a) for a in sub for b in sub)


def test_enumeration_matches_brute_classes():
    for name in SMALL_CORPUS:
        G = get_group(name)
        p = _PRIMES[name]
        els = bf.elements(G)
        brute = _brute_classes(els, p, G.degree)
        classes = enumerate_p_subgroups(G, p)
        assert len(classes) == len(brute)
        assert sorted(c.size for c in classes) == sorted(len(o) for o in brute)
        # every package class orbit appears among the brute orbits
        brute_orbits = {frozenset(orb) for orb in brute}
        for cls in classes:
            orbit = frozenset(h.elements() for h in cls.orbit)
            assert orbit in brute_orbits


def test_collection_sizes_match_brute_predicates():
    preds = {
        CollectionKind.S: lambda els, p, d, sub: True,
        CollectionKind.B: lambda els, p, d, sub: _brute_radical(els, p, d, sub),
        CollectionKind.Ce: lambda els, p, d, sub: _brute_centric(els, p, sub),
        CollectionKind.hatS: lambda els, p, d, sub: _brute_distinguished(els, p, d, sub),
        CollectionKind.tildeS: lambda els, p, d, sub: _brute_tilde(els, p, sub),
        CollectionKind.hatA: lambda els, p, d, sub: (
            _brute_elementary(sub, p, d) and _brute_distinguished(els, p, d, sub)
        ),
        CollectionKind.hatB: lambda els, p, d, sub: (
            _brute_radical(els, p, d, sub) and _brute_distinguished(els, p, d, sub)
        ),
        CollectionKind.Bcen: lambda els, p, d, sub: (
            _brute_radical(els, p, d, sub) and _brute_centric(els, p, sub)
        ),
    }
    for name in SMALL_CORPUS:
        G = get_group(name)
        p = _PRIMES[name]
        els = bf.elements(G)
        subs = bf.p_subgroups(els, p, G.degree)
        for kind, pred in preds.items():
            coll = build_collection(G, p, kind)
            want = {sub for sub in subs if pred(els, p, G.degree, sub)}
            got = {h.elements() for h in coll.expand()}
            assert got == want, (name, kind)


def test_frozen_class_counts():
    expected = {
        ("sym(4)", "S"): (6, 19),
        ("sym(4)", "hatS"): (5, 13),
        ("sym(4)", "hatA"): (3, 7),
        ("sym(4)", "hatB"): (2, 4),
        ("sym(5)", "S"): (6, 75),
        ("sym(5)", "hatS"): (5, 65),
        ("sym(5)", "hatA"): (3, 35),
        ("sym(5)", "hatB"): (2, 20),
        ("alt(5)", "hatS"): (2, 20),
        ("alt(5)", "hatB"): (1, 5),
        ("gl32", "hatS"): (5, 77),
        ("gl32", "hatB"): (3, 35),
    }
    for (name, kind), (nclasses, total) in expected.items():
        coll = build_collection(get_group(name), 2, kind)
        assert (len(coll.classes), coll.total_size()) == (nclasses, total), (name, kind)


def test_mathieu_collection_sizes():
    m11 = get_group("m11")
    assert build_collection(m11, 3, "hatS").total_size() == 275
    assert build_collection(m11, 3, "hatB").total_size() == 55
    m12 = get_group("m12")
    coll = build_collection(m12, 3, "S")
    assert len(coll.classes) == 6
    assert sorted(c.rep.order() for c in coll.classes) == [3, 3, 9, 9, 9, 27]
    assert coll.total_size() == 5280
    assert build_collection(m12, 3, "hatS").total_size() == 3960
    assert build_collection(m12, 3, "hatB").total_size() == 1320


def test_p_central_data_against_scan():
    for name in SMALL_CORPUS:
        G = get_group(name)
        p = _PRIMES[name]
        els = bf.elements(G)
        data = p_central_data(G, p)
        want = {z for z in els if bf.is_p_central_in(els, z, p)}
        assert data.elements == want
        for z in want:
            assert is_p_central(G, p, z)
    with pytest.raises(DomainError):
        is_p_central(get_group("sym(4)"), 2, parse_perm("(1,2,3)", 4))


def test_hat_subgroup_examples():
    G = get_group("sym(4)")
    D8 = sylow_p(G, 2)
    hat = hat_subgroup(G, 2, D8)
    # the center of a Sylow 2-subgroup here is generated by a 2-central element
    assert hat.order() == 2
    transposition = subgroup_from_elements(
        G, bf.close([parse_perm("(1,2)", 4)], 4)
    )
    assert hat_subgroup(G, 2, transposition).order() == 1
    assert not is_distinguished(G, 2, transposition)
    assert contains_p_central(G, 2, D8)


def test_radical_closure_grows_to_radical():
    G = get_group("sym(5)")
    P = subgroup_from_elements(G, bf.close([parse_perm("(1,2)(3,4)", 5)], 5))
    R = radical_closure(G, 2, P)
    assert is_p_radical(G, 2, R)
    assert P.is_subgroup_of(R)
    assert R.order() == 8
    assert local_core(G, 2, R) == R
    with pytest.raises(DomainError):
        radical_closure(G, 2, subgroup_from_elements(G, bf.close([parse_perm("(1,2,3)", 5)], 5)))


def test_has_characteristic_p_against_scan():
    for name in SMALL_CORPUS:
        G = get_group(name)
        els = bf.elements(G)
        for p in (2, 3):
            if len(els) % p:
                continue
            O = bf.p_core_of(els, p, G.degree)
            C = bf.centralizer_of_set(els, sorted(O))
            assert has_characteristic_p(G, p) == (C <= O)


def test_classification_of_corpus():
    expected = {
        ("sym(3)", 3): (True, True, True),
        ("sym(4)", 2): (True, True, True),
        ("sym(5)", 2): (False, False, True),
        ("alt(5)", 2): (False, True, True),
        ("gl32", 2): (False, True, True),
        ("m11", 3): (False, True, True),
        ("m12", 3): (False, False, True),
    }
    for (name, p), (char, local, parab) in expected.items():
        rep = characteristic_classification(get_group(name), p)
        assert (rep.has_char, rep.local_char, rep.parabolic_char) == (char, local, parab), name
    s5 = characteristic_classification(get_group("sym(5)"), 2)
    assert s5.local_witness.order() == 2
    gen = next(iter(s5.local_witness.gens))
    assert perm_order(gen) == 2 and len([x for x in range(5) if gen[x] != x]) == 2


def test_classification_local_against_brute():
    # local characteristic p: every p-subgroup's normalizer is characteristic p
    for name in ["sym(4)", "sym(5)", "alt(5)", "gl32"]:
        G = get_group(name)
        p = 2
        els = bf.elements(G)
        verdicts = []
        for sub in bf.p_subgroups(els, p, G.degree):
            N = bf.normalizer_of_set(els, sub)
            O = bf.p_core_of(N, p, G.degree)
            C = {x for x in N if all(bf.pmul(x, o) == bf.pmul(o, x) for o in O)}
            verdicts.append(C <= O)
        rep = characteristic_classification(G, p)
        assert rep.local_char == all(verdicts)


def test_fraks_requires_dedicated_builder():
    with pytest.raises(DomainError):
        build_collection(get_group("sym(5)"), 2, "frakS")
    with pytest.raises(DomainError):
        build_collection(get_group("sym(5)"), 2, "nonsense")
