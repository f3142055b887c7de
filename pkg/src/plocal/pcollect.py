"""Collections of p-subgroups: enumeration, predicates, and flags.

A collection is a conjugation-closed family of nontrivial p-subgroups.
The families handled here are the nontrivial p-subgroups themselves, the
elementary abelian ones, the radical ones (Q equal to the p-core of its
normalizer), the centric ones (center of Q already a Sylow p-subgroup of
its centralizer), and the variants cut out by p-central elements: a
subgroup is distinguished when the p-central elements in the center of Q
generate a nontrivial subgroup (the hat core), and tilde-marked when Q
merely contains some p-central element.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, Error, ResourceLimitError
from .groups import (
    SubgroupHandle,
    center,
    centralizer,
    conjugacy_classes,
    normalizer,
    omega1_center,
    p_core,
    p_part,
    require_prime,
    subgroup_from_gens,
    sylow_p,
    trivial_subgroup,
)
from .perms import conj, identity, is_identity, mul, perm_order


@dataclass(frozen=True)
class PCentralData:
    """p-central elements of a group: order-p elements central in some Sylow."""

    prime: int
    class_indices: tuple
    reps: tuple
    elements: frozenset

    def test(self, x):
        return x in self.elements


def p_central_data(G, p):
    """All p-central elements, read off the class table.

    An order-p element is p-central exactly when its conjugacy class size
    is prime to p, i.e. when its centralizer contains a full Sylow.
    """
    require_prime(p)
    key = ("pcentral", p)
    if key in G._cache:
        return G._cache[key]
    table = conjugacy_classes(G)
    indices = tuple(
        i
        for i in range(len(table))
        if table.orders[i] == p and table.sizes[i] % p != 0
    )
    chosen = set(indices)
    elements = frozenset(x for x, c in table.el2class.items() if c in chosen)
    data = PCentralData(p, indices, tuple(table.reps[i] for i in indices), elements)
    G._cache[key] = data
    return data


def is_p_central(G, p, x):
    """Whether the order-p element x is central in some Sylow p-subgroup."""
    if perm_order(x) != p:
        raise DomainError("p-central test needs an element of order p")
    return p_central_data(G, p).test(x)


def hat_subgroup(G, p, P):
    """Subgroup generated by the p-central elements central in P."""
    data = p_central_data(G, p)
    omega = omega1_center(P, p)
    gens = [x for x in omega.elements() if not is_identity(x) and data.test(x)]
    if not gens:
        return trivial_subgroup(G)
    return subgroup_from_gens(G, gens, check=False)


def is_distinguished(G, p, P):
    return hat_subgroup(G, p, P).order() > 1


def contains_p_central(G, p, P):
    """Tilde test: P meets the set of p-central elements."""
    data = p_central_data(G, p)
    return any(x in data.elements for x in P.elements())


def _rewrap(G, sub):
    out = SubgroupHandle(G, sub.gens, elements=sub._elts)
    out._group = sub._group
    return out


def local_core(G, p, Q):
    """p-core of the normalizer, O_p(N_G(Q)), as a subgroup of G."""
    N = normalizer(G, Q)
    return _rewrap(G, p_core(N.group(), p))


def radical_closure(G, p, Q):
    """Iterate Q -> O_p(N_G(Q)) until it stabilizes.

    Each step contains the previous one, so the chain is strictly
    increasing until the fixed point, a radical subgroup.
    """
    if Q.order() == 1 or p_part(Q.order(), p) != Q.order():
        raise DomainError("radical closure needs a nontrivial p-subgroup")
    R = Q
    while True:
        O = local_core(G, p, R)
        if not R.is_subgroup_of(O):
            raise Error("radical closure step lost the subgroup")
        if O.order() == R.order():
            return R
        R = O


def is_p_radical(G, p, Q):
    """Whether Q equals the p-core of its own normalizer."""
    return local_core(G, p, Q).canonical_key() == Q.canonical_key()


def is_p_centric(G, p, Q):
    """Whether Z(Q) is a Sylow p-subgroup of the centralizer of Q."""
    C = centralizer(G, Q)
    Z = center(Q)
    index = C.order() // Z.order()
    if C.order() % Z.order():
        raise Error("center not contained in centralizer")
    return index % p != 0


def is_elementary_abelian(P, p):
    els = P.elements()
    for x in els:
        if not is_identity(x) and perm_order(x) != p:
            return False
    gens = list(P.gens)
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if mul(a, b) != mul(b, a):
                return False
    return True


class PClass:
    """One conjugacy class of p-subgroups, with its full orbit and flags."""

    def __init__(self, rep, orbit):
        self.rep = rep
        self.orbit = orbit
        self.size = len(orbit)
        self.flags = {}

    def flag(self, name, compute):
        if name not in self.flags:
            self.flags[name] = compute()
        return self.flags[name]


def _subgroups_of_pgroup(S, p, cap):
    """All subgroups of the p-group S by cyclic extension over a Cayley table."""
    els = sorted(S.elements())
    index = {x: i for i, x in enumerate(els)}
    m = len(els)
    mult = [[index[mul(a, b)] for b in els] for a in els]
    conjt = [[index[conj(a, b)] for b in els] for a in els]
    orders = [perm_order(x) for x in els]
    ident = index[identity(S.degree)]

    def closure(seed):
        seen = set(seed)
        queue = list(seed)
        while queue:
            x = queue.pop()
            for y in list(seen):
                for z in (mult[x][y], mult[y][x]):
                    if z not in seen:
                        seen.add(z)
                        queue.append(z)
        return frozenset(seen)

    found = set()
    layers = {1: {frozenset({ident})}}
    for i in range(m):
        if orders[i] == p:
            sub = closure({ident, i})
            layers.setdefault(p, set()).add(sub)
    found |= layers.get(p, set())
    q = p
    while q < m:
        nxt = set()
        for T in layers.get(q, ()):
            normalizer_idx = [
                j for j in range(m) if all(conjt[t][j] in T for t in T)
            ]
            for j in normalizer_idx:
                if j in T:
                    continue
                # j must have p-th power inside T to give an extension by p
                jp = j
                for _ in range(p - 1):
                    jp = mult[jp][j]
                if jp not in T:
                    continue
                U = closure(set(T) | {j})
                if len(U) != q * p:
                    raise Error("cyclic extension produced a wrong order")
                nxt.add(U)
                if len(found) + len(nxt) > cap:
                    raise ResourceLimitError(
                        "max_subgroup_classes", "too many subgroups in one Sylow"
                    )
        if not nxt:
            break
        layers[q * p] = nxt
        found |= nxt
        q *= p
    return [frozenset(els[i] for i in sub) for sub in found]


def enumerate_p_subgroups(G, p):
    """Conjugacy classes of nontrivial p-subgroups.

    All subgroups of one fixed Sylow are enumerated by cyclic extension,
    then fused under G-conjugation by expanding full orbits.  Class
    records keep their orbits; the poset layer reuses them.
    """
    require_prime(p)
    key = ("psubgroups", p)
    if key in G._cache:
        return G._cache[key]
    limits = G.limits
    S = sylow_p(G, p)
    if S.order() == 1:
        G._cache[key] = []
        return []
    sets = _subgroups_of_pgroup(S, p, limits.max_subgroup_classes)
    sets = [s for s in sets if len(s) > 1]

    def invariant(els):
        hist = {}
        for x in els:
            o = perm_order(x)
            hist[o] = hist.get(o, 0) + 1
        return (len(els), tuple(sorted(hist.items())))

    buckets = {}
    for s in sets:
        buckets.setdefault(invariant(s), []).append(s)

    classes = []
    total = 0
    for inv in sorted(buckets, key=lambda t: (t[0], t[1])):
        pending = set(buckets[inv])
        # deterministic candidate order within the bucket
        ordered = sorted(pending, key=lambda s: sorted(s))
        for cand in ordered:
            if cand not in pending:
                continue
            orbit = {cand}
            queue = [cand]
            while queue:
                nxt = []
                for cur in queue:
                    for g in G.gens:
                        img = frozenset(conj(x, g) for x in cur)
                        if img not in orbit:
                            orbit.add(img)
                            nxt.append(img)
                queue = nxt
                total += len(nxt)
                if total > limits.max_poset_elements:
                    raise ResourceLimitError(
                        "max_poset_elements", "p-subgroup orbits exceed the poset cap"
                    )
            pending -= orbit
            handles = sorted(
                (SubgroupHandle(G, _reduce_gens(G, s), elements=s) for s in orbit),
                key=lambda h: h.sort_key(),
            )
            classes.append(PClass(handles[0], tuple(handles)))
    classes.sort(key=lambda c: c.rep.sort_key())
    G._cache[key] = classes
    return classes


def _reduce_gens(G, elements):
    """Small generating set for a subgroup given by its element set."""
    from .groups import StabChain

    chain = StabChain(G.degree)
    gens = []
    for x in sorted(elements):
        if chain.add(x):
            gens.append(x)
            if chain.order() == len(elements):
                break
    return tuple(gens)


class CollectionKind(Enum):
    S = "S"
    A = "A"
    B = "B"
    Ce = "Ce"
    Bcen = "Bcen"
    hatS = "hatS"
    hatA = "hatA"
    hatB = "hatB"
    tildeS = "tildeS"
    tildeB = "tildeB"
    frakS = "frakS"


def class_flags(G, p, cls):
    """Predicate flags for one class, computed on the representative."""
    rep = cls.rep
    cls.flag("radical", lambda: is_p_radical(G, p, rep))
    cls.flag("centric", lambda: is_p_centric(G, p, rep))
    cls.flag("distinguished", lambda: is_distinguished(G, p, rep))
    cls.flag("tilde", lambda: contains_p_central(G, p, rep))
    cls.flag("elementary_abelian", lambda: is_elementary_abelian(rep, p))
    return cls.flags


_KIND_PREDICATES = {
    CollectionKind.S: lambda f: True,
    CollectionKind.A: lambda f: f["elementary_abelian"],
    CollectionKind.B: lambda f: f["radical"],
    CollectionKind.Ce: lambda f: f["centric"],
    CollectionKind.Bcen: lambda f: f["radical"] and f["centric"],
    CollectionKind.hatS: lambda f: f["distinguished"],
    CollectionKind.hatA: lambda f: f["elementary_abelian"] and f["distinguished"],
    CollectionKind.hatB: lambda f: f["radical"] and f["distinguished"],
    CollectionKind.tildeS: lambda f: f["tilde"],
    CollectionKind.tildeB: lambda f: f["radical"] and f["tilde"],
}


@dataclass
class Collection:
    kind: CollectionKind
    group: object
    prime: int
    classes: tuple

    def reps(self):
        return [c.rep for c in self.classes]

    def expand(self):
        """All members, every orbit concatenated, deterministically sorted."""
        out = []
        for c in self.classes:
            out.extend(c.orbit)
        out.sort(key=lambda h: h.sort_key())
        return out

    def total_size(self):
        return sum(c.size for c in self.classes)


def build_collection(G, p, kind):
    """Select the classes of the requested collection kind."""
    if isinstance(kind, str):
        try:
            kind = CollectionKind[kind]
        except KeyError:
            raise DomainError(f"unknown collection kind: {kind!r}")
    if kind is CollectionKind.frakS:
        raise DomainError("the fixed-prime family over a chosen element needs build_fraks")
    classes = enumerate_p_subgroups(G, p)
    chosen = []
    for cls in classes:
        flags = class_flags(G, p, cls)
        if _KIND_PREDICATES[kind](flags):
            chosen.append(cls)
    return Collection(kind, G, p, tuple(chosen))


def has_characteristic_p(H, p):
    """Whether the p-core is self-centralizing: C_H(O_p(H)) inside O_p(H)."""
    from .groups import _as_group

    G = _as_group(H)
    O = p_core(G, p)
    C = centralizer(G, O)
    return all(O.contains(g) for g in C.gens)


@dataclass
class CharacteristicReport:
    prime: int
    has_char: bool
    local_char: bool
    parabolic_char: bool
    local_witness: object
    parabolic_witness: object


def characteristic_classification(G, p):
    """Classify G as having characteristic p locally and parabolically.

    Runs over class representatives of nontrivial p-subgroups; the
    normalizer of each is a p-local subgroup, and it is parabolic when it
    contains a full Sylow p-subgroup.
    """
    require_prime(p)
    key = ("charclass", p)
    if key in G._cache:
        return G._cache[key]
    sylow_order = p_part(G.order(), p)
    local_ok = True
    parabolic_ok = True
    local_witness = None
    parabolic_witness = None
    if sylow_order == 1:
        report = CharacteristicReport(p, False, False, False, None, None)
        G._cache[key] = report
        return report
    for cls in enumerate_p_subgroups(G, p):
        N = normalizer(G, cls.rep)
        if has_characteristic_p(N, p):
            continue
        local_ok = False
        if local_witness is None:
            local_witness = cls.rep
        if p_part(N.order(), p) == sylow_order:
            parabolic_ok = False
            if parabolic_witness is None:
                parabolic_witness = cls.rep
    report = CharacteristicReport(
        p,
        has_characteristic_p(G, p),
        local_ok,
        parabolic_ok,
        local_witness,
        parabolic_witness,
    )
    G._cache[key] = report
    return report
