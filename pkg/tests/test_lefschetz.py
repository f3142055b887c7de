"""Reduced Lefschetz class functions: route equality and screening.

The two evaluation routes (fixed-point Euler characteristics versus
alternating sums of induced permutation characters) are computed fully
independently inside the package; cross_validate compares them exactly
and is itself the central oracle here.
"""

import pytest

from plocal.errors import CrossValidationError
from plocal.groups import conjugacy_classes, subgroup_from_gens
from plocal.homology import reduced_euler
from plocal.lefschetz import (
    ClassFunction,
    cross_validate,
    lefschetz_fixed_point,
    lefschetz_induced,
    p_singular_vanishing,
    vertex_screen,
)
from plocal.pcollect import build_collection, p_central_data
from plocal.perms import parse_gens
from plocal.posets import build_poset, fixed_subposet
from plocal.quotients import build_frakS

from conftest import get_group


def _cf(name, p, kind):
    G = get_group(name)
    X = build_poset(build_collection(G, p, kind), acting=G, name=kind)
    return G, X, cross_validate(G, X)


def test_routes_agree_on_small_corpus():
    for name, p, kind in [
        ("sym(3)", 3, "hatS"),
        ("sym(4)", 2, "S"),
        ("sym(4)", 2, "hatS"),
        ("sym(4)", 2, "hatB"),
        ("sym(5)", 2, "hatS"),
        ("sym(5)", 2, "hatA"),
        ("sym(5)", 2, "hatB"),
        ("alt(5)", 2, "hatB"),
        ("gl32", 2, "hatB"),
    ]:
        _, _, rep = _cf(name, p, kind)
        assert rep.routes_equal


def test_identity_value_is_whole_nerve_euler():
    G, X, rep = _cf("sym(5)", 2, "hatS")
    assert rep.function.values[0] == reduced_euler(X.order_complex())


def test_sym5_hatB_values():
    G, X, rep = _cf("sym(5)", 2, "hatB")
    table = conjugacy_classes(G)
    assert table.labels == ("e", "2", "2+2", "3", "4", "5", "3+2")
    assert rep.function.values == (4, 2, 0, 1, 0, -1, -1)
    # spec order (e, 2, 2^2, 3, 3.2, 4, 5) of the same numbers
    by_label = dict(zip(table.labels, rep.function.values))
    assert [by_label[l] for l in ("e", "2", "2+2", "3", "3+2", "4", "5")] == [
        4, 2, 0, 1, -1, 0, -1,
    ]


def test_gl32_hatB_is_minus_steinberg():
    G, X, rep = _cf("gl32", 2, "hatB")
    table = conjugacy_classes(G)
    assert table.labels == ("e", "2+2", "3+3", "4+2", "7", "7b")
    assert rep.function.values == (-8, 0, 1, 0, -1, -1)
    singular = p_singular_vanishing(rep.function, 2)
    assert singular.consistent_with_projective
    assert singular.nonzero == []


def test_sym4_vanishes_identically():
    for kind in ("S", "hatS", "hatB"):
        _, _, rep = _cf("sym(4)", 2, kind)
        assert rep.function.is_zero(), kind


def test_p_central_values_vanish_on_parabolic_groups():
    for name, p in [("sym(5)", 2), ("alt(5)", 2), ("gl32", 2), ("m11", 3)]:
        G, X, rep = _cf(name, p, "hatB")
        table = conjugacy_classes(G)
        for i in p_central_data(G, p).class_indices:
            assert rep.function.values[i] == 0, (name, table.labels[i])


def test_singular_report_flags_nonzero_classes():
    G, X, rep = _cf("sym(5)", 2, "hatB")
    singular = p_singular_vanishing(rep.function, 2)
    assert not singular.consistent_with_projective
    flagged = {label for _, label, _, _ in singular.nonzero}
    assert flagged == {"2", "3+2"}
    assert all(order % 2 == 0 for _, _, order, _ in singular.nonzero)


def test_vertex_screen_on_sym5():
    G, X, _ = _cf("sym(5)", 2, "hatB")
    report = vertex_screen(G, 2, X)
    assert len(report.entries) == 6
    survivors = report.survivors()
    assert len(survivors) == 1
    t = survivors[0]
    assert t.rep.order() == 2
    gen = next(iter(t.rep.gens))
    assert sum(1 for x in range(5) if gen[x] != x) == 2
    assert t.profile.betti[0] == 2
    assert not t.empty_fixed_set
    others = [e for e in report.entries if e is not t]
    assert all(e.verdict == "certified-contractible" for e in others)


def test_vertex_screen_excludes_everything_for_sym4():
    G, X, _ = _cf("sym(4)", 2, "hatB")
    report = vertex_screen(G, 2, X)
    assert report.survivors() == []
    assert all(e.verdict == "certified-contractible" for e in report.entries)


def test_empty_fixed_set_counts_as_candidate():
    # screen against a small ad-hoc family where some classes fix nothing
    G = get_group("sym(5)")
    T = subgroup_from_gens(G, parse_gens("(1,2)", 5))
    fam = build_frakS(G, 2, T)
    X = build_poset(fam, acting=fam.acting)
    report = vertex_screen(G, 2, X)
    empties = [e for e in report.entries if e.empty_fixed_set]
    assert empties, "expected at least one empty fixed set here"
    for e in report.entries:
        F = fixed_subposet(X, e.rep)
        assert e.empty_fixed_set == (len(F) == 0)
        if e.empty_fixed_set:
            assert e.verdict == "non-acyclic"


def test_class_function_arithmetic_and_tables():
    G, X, rep = _cf("sym(5)", 2, "hatB")
    cf = rep.function
    zero = cf - cf
    assert zero.is_zero()
    d = cf.as_dict()
    assert d["classes"] == list(conjugacy_classes(G).labels)
    assert d["values"] == [4, 2, 0, 1, 0, -1, -1]
    lines = cf.table_lines()
    assert len(lines) == 8 and "class" in lines[0]
    other = ClassFunction(get_group("sym(4)"), (0,) * 5)
    with pytest.raises(CrossValidationError):
        cf - other


def test_fixed_point_route_matches_fixed_subposet_euler():
    G, X, rep = _cf("sym(5)", 2, "hatB")
    table = conjugacy_classes(G)
    cf = lefschetz_fixed_point(G, X)
    assert cf.values == rep.function.values
    for i, r in enumerate(table.reps):
        g_sub = subgroup_from_gens(G, [r])
        F = fixed_subposet(X, g_sub)
        assert cf.values[i] == reduced_euler(F.order_complex())


def test_induced_route_standalone():
    G, X, rep = _cf("sym(4)", 2, "hatB")
    cf = lefschetz_induced(G, X)
    assert cf.values == rep.function.values == (0, 0, 0, 0, 0)
