"""Contraction certificates: valid constructions and detected corruptions.

A verdict may only say valid when the nerve really is contractible, so
every accepted certificate here is paired with a homology computation
and every corrupted one must be rejected with a pointed failure.
"""

import pytest

from plocal.certificates import (
    PosetSelfMap,
    central_product_certificate,
    check_certificate,
    cone_certificate,
    constant_map,
    identity_map,
    normalizer_contraction_certificate,
    normalizer_in,
    subgroup_product,
)
from plocal.groups import subgroup_from_gens, sylow_p
from plocal.homology import homology
from plocal.pcollect import build_collection, local_core
from plocal.perms import parse_gens
from plocal.posets import build_poset, fixed_subposet, truncate

import bruteforce as bf
from conftest import get_group


def _poset(name, p, kind):
    G = get_group(name)
    return G, build_poset(build_collection(G, p, kind), acting=G, name=kind)


def test_subgroup_product():
    G = get_group("sym(4)")
    V = subgroup_from_gens(G, parse_gens("(1,2)(3,4); (1,3)(2,4)", 4))
    C = subgroup_from_gens(G, parse_gens("(1,2)", 4))
    VC = subgroup_product(V, C)
    assert VC is not None and VC.order() == 8
    A = subgroup_from_gens(G, parse_gens("(1,2)", 4))
    B = subgroup_from_gens(G, parse_gens("(2,3)", 4))
    assert subgroup_product(A, B) is None


def test_normalizer_in():
    G = get_group("sym(4)")
    D8 = sylow_p(G, 2)
    P = subgroup_from_gens(G, parse_gens("(1,2)", 4))
    N = normalizer_in(D8, P)
    # direct definition: elements of D8 conjugating P into itself
    want = {
        q
        for q in D8.elements()
        if all(bf.pconj(x, q) in P.elements() for x in P.elements())
    }
    assert set(N.elements()) == want


def test_cone_certificate_on_interval():
    G, X = _poset("sym(4)", 2, "S")
    V = subgroup_from_gens(G, parse_gens("(1,2)(3,4); (1,3)(2,4)", 4))
    window = truncate(X, ge=V, name="above-V")
    cert = cone_certificate(window, V)
    verdict = check_certificate(cert)
    assert verdict.valid, verdict.failures
    assert homology(window.order_complex()).is_zero()


def test_central_product_certificate_on_fixed_points():
    G, X = _poset("sym(4)", 2, "S")
    # fixed points of the 2-central element (1,3)(2,4): zig-zag through P.Z
    Z = subgroup_from_gens(G, parse_gens("(1,3)(2,4)", 4))
    F = fixed_subposet(X, Z)
    cert = central_product_certificate(F, Z)
    verdict = check_certificate(cert)
    assert verdict.valid, verdict.failures
    assert homology(F.order_complex()).is_zero()
    assert verdict.stats["maps"] == 3


def test_normalizer_contraction_certificate():
    G, X = _poset("sym(5)", 2, "S")
    # strict overgroups of a nonradical member contract via N_Q(R).R
    P = subgroup_from_gens(G, parse_gens("(1,2)(3,4)", 5))
    R = local_core(G, 2, P)
    assert R.order() == 8
    up = truncate(X, gt=P, name="above-P")
    cert = normalizer_contraction_certificate(up, R, R)
    verdict = check_certificate(cert)
    assert verdict.valid, verdict.failures
    assert homology(up.order_complex()).is_zero()


def test_certificate_requires_identity_start_and_constant_end():
    G, X = _poset("sym(4)", 2, "hatB")
    V = X.elements[0]
    cert = cone_certificate(X, V)
    cert.maps = [cert.maps[1], cert.maps[1]]
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert any("identity" in f for f in verdict.failures)
    cert2 = cone_certificate(X, V)
    cert2.maps = [cert2.maps[0], identity_map(X)]
    verdict2 = check_certificate(cert2)
    assert not verdict2.valid
    assert any("constant" in f for f in verdict2.failures)


def test_certificate_rejects_nonmonotone_map():
    G, X = _poset("sym(4)", 2, "S")
    V = subgroup_from_gens(G, parse_gens("(1,2)(3,4); (1,3)(2,4)", 4))
    window = truncate(X, ge=V)
    cert = cone_certificate(window, V)
    # swap two images on comparable elements to break monotonicity
    bad = list(identity_map(window).assignment)
    i, j = next((a, b) for a, b in window.comparabilities())
    bad[i], bad[j] = bad[j], bad[i]
    cert.maps = [
        identity_map(window),
        PosetSelfMap(window, bad, "swapped"),
        cert.maps[1],
    ]
    cert.relations = ["<=", "<="]
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert any("monotone" in f or "fails at element" in f for f in verdict.failures)


def test_certificate_rejects_wrong_relation_direction():
    G, X = _poset("sym(4)", 2, "S")
    Z = subgroup_from_gens(G, parse_gens("(1,3)(2,4)", 4))
    F = fixed_subposet(X, Z)
    cert = central_product_certificate(F, Z)
    cert.relations = [">=", ">="]  # first leg really is <=
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert any("step 0" in f for f in verdict.failures)
    cert2 = central_product_certificate(F, Z)
    cert2.relations = ["<=", "=="]
    verdict2 = check_certificate(cert2)
    assert not verdict2.valid
    assert any("unknown relation" in f for f in verdict2.failures)


def test_certificate_rejects_partial_map():
    G, X = _poset("sym(4)", 2, "hatB")
    V = X.elements[0]
    cert = cone_certificate(X, V)
    broken = PosetSelfMap(X, [None] * len(X), "partial", defects=["image left the poset"])
    cert.maps = [identity_map(X), broken, cert.maps[1]]
    cert.relations = ["<=", "<="]
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert "image left the poset" in verdict.failures


def test_certificate_rejects_nonequivariant_map():
    G, X = _poset("sym(4)", 2, "hatB")
    V = subgroup_from_gens(G, parse_gens("(1,2)(3,4); (1,3)(2,4)", 4))
    cert = cone_certificate(X, V, acting=G)
    verdict = check_certificate(cert)
    assert verdict.valid, verdict.failures  # constant at a normal subgroup
    # constant at a non-normal member cannot be equivariant
    D8 = next(h for h in X.elements if h.order() == 8)
    cert2 = cone_certificate(X, D8, acting=G)
    cert2.maps = [identity_map(X), constant_map(X, D8)]
    verdict2 = check_certificate(cert2)
    assert not verdict2.valid
    assert any("equivariant" in f for f in verdict2.failures)


def test_certificate_rejects_empty_poset():
    G, X = _poset("sym(4)", 2, "hatB")
    empty = X.subposet([])
    cert = cone_certificate(empty, X.elements[0])
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert any("empty domain" in f for f in verdict.failures)


def test_maps_must_live_on_the_same_poset():
    G, X = _poset("sym(4)", 2, "hatB")
    _, Y = _poset("sym(4)", 2, "hatA")
    cert = cone_certificate(X, X.elements[0])
    cert.maps = [identity_map(X), constant_map(Y, Y.elements[0])]
    verdict = check_certificate(cert)
    assert not verdict.valid
    assert any("different poset" in f for f in verdict.failures)
