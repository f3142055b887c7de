"""Reduced Lefschetz class functions and projectivity screening.

The class function of G acting on a nerve is computed two independent
ways: pointwise as reduced Euler characteristics of fixed subcomplexes,
and globally as an alternating sum of permutation characters on simplex
orbits minus the trivial character.  Exact agreement of the two routes
is the module's central self-check.  Screening reports which p-subgroup
classes could still carry a vertex of a nonprojective summand: those
whose fixed subcomplex fails to be acyclic.
"""

from dataclasses import dataclass, field

from .errors import CrossValidationError, ResourceLimitError
from .groups import (
    _canonical_levels,
    _lexmin_in_coset,
    conjugacy_classes,
    intersection,
    normalizer,
)
from .homology import collapse, homology, reduced_euler
from .pcollect import enumerate_p_subgroups
from .perms import conj, inv, mul
from .posets import fixed_subposet


@dataclass
class ClassFunction:
    group: object
    values: tuple

    def __post_init__(self):
        self.values = tuple(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __sub__(self, other):
        if other.group is not self.group:
            raise CrossValidationError("class functions on different groups")
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def table_lines(self):
        table = conjugacy_classes(self.group)
        out = [f"{'class':>12} {'size':>8} {'value':>8}"]
        for i, v in enumerate(self.values):
            out.append(f"{table.labels[i]:>12} {table.sizes[i]:>8} {v:>8}")
        return out

    def as_dict(self):
        table = conjugacy_classes(self.group)
        return {
            "classes": list(table.labels),
            "sizes": list(table.sizes),
            "values": list(self.values),
        }


class _Cyclic:
    """Generator wrapper so fixed_subposet can take a bare element."""

    def __init__(self, g):
        self.gens = (g,)


def lefschetz_fixed_point(G, X, limits=None):
    """Value at the class of g is the reduced Euler characteristic of
    the nerve of the g-fixed subposet."""
    limits = limits if limits is not None else G.limits
    table = conjugacy_classes(G)
    values = []
    for rep in table.reps:
        F = fixed_subposet(X, _Cyclic(rep))
        values.append(reduced_euler(F.order_complex(limits)))
    return ClassFunction(G, values)


def _coset_space(G, H):
    """Canonical representatives of the right cosets of H, by BFS."""
    levels = _canonical_levels(H.gens, G.degree)

    def rep(x):
        return _lexmin_in_coset(levels, 0, x, G.degree)

    limits = G.limits
    start = rep(tuple(range(G.degree)))
    reps = [start]
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in G.gens:
                y = rep(mul(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    reps.append(y)
                    if len(reps) > limits.max_coset_index:
                        raise ResourceLimitError(
                            "max_coset_index", "coset space too large"
                        )
        frontier = nxt
    return reps


def _perm_char(G, H, reps):
    """Permutation character of G on the cosets of H, at class reps.

    The coset Hx is fixed by g exactly when x g x^-1 lies in H.
    """
    table = conjugacy_classes(G)
    values = []
    for g in table.reps:
        count = 0
        for x in reps:
            if H.contains(conj(g, inv(x))):
                count += 1
        values.append(count)
    return values


def lefschetz_induced(G, X, limits=None):
    """Alternating sum over simplex orbits of induced permutation
    characters, minus the trivial character."""
    limits = limits if limits is not None else G.limits
    K = X.order_complex(limits)
    table = conjugacy_classes(G)
    n_classes = len(table)
    totals = [0] * n_classes

    act_cache = {}

    def act_simplex(s, gi, g):
        if gi not in act_cache:
            act_cache[gi] = {}
        tab = act_cache[gi]
        out = []
        for i in s:
            if i not in tab:
                tab[i] = X.act_idx(i, g)
            out.append(tab[i])
        return tuple(sorted(out))

    norm_cache = {}

    def vertex_normalizer(i):
        if i not in norm_cache:
            norm_cache[i] = normalizer(G, X.elements[i])
        return norm_cache[i]

    for d, level in enumerate(K.simplices):
        pending = set(level)
        for s in sorted(level):
            if s not in pending:
                continue
            orbit = {s}
            queue = [s]
            while queue:
                cur = queue.pop()
                for gi, g in enumerate(G.gens):
                    img = act_simplex(cur, gi, g)
                    if img not in orbit:
                        orbit.add(img)
                        queue.append(img)
            pending -= orbit
            stab = vertex_normalizer(s[0])
            for i in s[1:]:
                stab = intersection(stab, vertex_normalizer(i))
            if stab.order() * len(orbit) != G.order():
                raise CrossValidationError("orbit size disagrees with stabilizer index")
            reps = _coset_space(G, stab)
            char = _perm_char(G, stab, reps)
            sign = -1 if d % 2 else 1
            for k in range(n_classes):
                totals[k] += sign * char[k]
    values = [t - 1 for t in totals]
    return ClassFunction(G, values)


@dataclass
class LefschetzReport:
    function: ClassFunction
    routes_equal: bool


def cross_validate(G, X, limits=None):
    """Both routes, compared exactly; a mismatch names the class."""
    fixed = lefschetz_fixed_point(G, X, limits=limits)
    induced = lefschetz_induced(G, X, limits=limits)
    if fixed.values != induced.values:
        table = conjugacy_classes(G)
        bad = [
            table.labels[i]
            for i, (a, b) in enumerate(zip(fixed.values, induced.values))
            if a != b
        ]
        raise CrossValidationError(
            "Lefschetz routes disagree at class(es): " + ", ".join(bad)
        )
    return LefschetzReport(fixed, True)


@dataclass
class SingularReport:
    prime: int
    nonzero: list  # (class index, label, element order, value)
    consistent_with_projective: bool

    def lines(self):
        if not self.nonzero:
            return ["no nonzero values on p-singular classes"]
        return [
            f"class {lab} (order {o}): value {v}" for _, lab, o, v in self.nonzero
        ]


def p_singular_vanishing(cf, p):
    """Nonzero values on classes of order divisible by p.

    An empty report is consistent with the virtual module being
    projective; a nonempty one certifies nonprojective summands.
    """
    table = conjugacy_classes(cf.group)
    bad = []
    for i, v in enumerate(cf.values):
        if table.orders[i] % p == 0 and v != 0:
            bad.append((i, table.labels[i], table.orders[i], v))
    return SingularReport(p, bad, not bad)


@dataclass
class VertexCandidate:
    rep: object
    class_size: int
    verdict: str  # certified-contractible | acyclic | non-acyclic
    profile: object
    empty_fixed_set: bool = False


@dataclass
class VertexScreenReport:
    prime: int
    entries: list = field(default_factory=list)

    def survivors(self):
        return [e for e in self.entries if e.verdict == "non-acyclic"]

    def lines(self):
        out = []
        for e in self.entries:
            desc = f"order {e.rep.order()} x{e.class_size}"
            out.append(f"{desc:>16}: {e.verdict} ({e.profile})")
        return out


def vertex_screen(G, p, X, limits=None):
    """Fixed-subcomplex homology for every class of nontrivial p-subgroups.

    Acyclic fixed sets exclude the class as a vertex; the remaining
    candidates are reported with their homology.
    """
    limits = limits if limits is not None else G.limits
    report = VertexScreenReport(p)
    for cls in enumerate_p_subgroups(G, p):
        F = fixed_subposet(X, cls.rep)
        K = F.order_complex(limits)
        prof = homology(K, limits=limits)
        if len(F) == 0:
            verdict = "non-acyclic"
            entry = VertexCandidate(cls.rep, cls.size, verdict, prof, True)
        else:
            if not prof.is_zero():
                verdict = "non-acyclic"
            elif collapse(K).collapsed_to_point or _is_cone(F):
                verdict = "certified-contractible"
            else:
                verdict = "acyclic"
            entry = VertexCandidate(cls.rep, cls.size, verdict, prof)
        report.entries.append(entry)
    return report


def _is_cone(F):
    n = len(F)
    for i in range(n):
        if all(F.leq_idx(i, j) for j in range(n)) or all(
            F.leq_idx(j, i) for j in range(n)
        ):
            return True
    return False
