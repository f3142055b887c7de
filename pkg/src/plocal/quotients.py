"""Quotients of centralizers and the Sylow-center family over them.

For a noncentral order-p subgroup T, the centralizer C = C_G(T) and its
p-core O_C drive the fixed-point analysis.  The quotient C/O_C is
realized faithfully as the permutation action of C on the right cosets
of O_C, with the quotient map, subgroup images, and subgroup preimages
all explicit and checked.  The frakS family collects the subgroups
between O_C and C that are distinguished in G and share a central
element with the center of an ambient Sylow subgroup.
"""

from dataclasses import dataclass

from .errors import DomainError, Error, ResourceLimitError
from .groups import (
    GroupHandle,
    SubgroupHandle,
    build_group,
    center,
    centralizer,
    normalizer,
    p_core,
    subgroup_from_elements,
    subgroup_from_gens,
    sylow_p,
)
from .pcollect import PClass, Collection, CollectionKind, p_central_data, hat_subgroup
from .perms import conj, identity, is_identity, mul


def _rewrap(G, sub):
    out = SubgroupHandle(G, sub.gens, elements=sub._elts)
    out._group = sub._group
    return out


class QuotientContext:
    """C acting on the cosets of its p-core: the quotient made concrete."""

    def __init__(self, G, p, T):
        self.G = G
        self.prime = p
        self.T = T
        limits = G.limits
        self.C = centralizer(G, T)
        self.O_C = _rewrap(G, p_core(self.C.group(), p))
        cels = sorted(self.C.elements())
        oels = self.O_C.elements()
        index = len(cels) // len(oels)
        if index > limits.max_quotient_degree:
            raise ResourceLimitError("max_quotient_degree", "coset space too large")
        self.el2coset = {}
        self.reps = []
        for x in cels:
            if x in self.el2coset:
                continue
            k = len(self.reps)
            self.reps.append(x)
            for o in oels:
                self.el2coset[mul(o, x)] = k
        if len(self.reps) != index:
            raise Error("coset partition has the wrong size")
        self.degree = index
        gens = [self.q(g) for g in self.C.gens]
        self.quotient = build_group(
            index, gens, limits=limits, name=(G.name or "G") + "_bar"
        )
        self._check()

    def q(self, x):
        """Image of x in the coset action."""
        if x not in self.el2coset:
            raise DomainError("element outside the centralizer")
        return tuple(self.el2coset[mul(r, x)] for r in self.reps)

    def _check(self):
        # kernel of the action is exactly the p-core
        kernel = {x for x in self.el2coset if is_identity(self.q(x))}
        if kernel != set(self.O_C.elements()):
            raise Error("coset action kernel differs from the p-core")
        if self.quotient.order() * self.O_C.order() != self.C.order():
            raise Error("quotient order mismatch")
        gens = list(self.C.gens)
        for a in gens:
            for b in gens:
                if self.q(mul(a, b)) != mul(self.q(a), self.q(b)):
                    raise Error("coset action is not a homomorphism")

    def q_subgroup(self, H):
        """Image of a subgroup O_C <= anything <= C in the quotient."""
        els = frozenset(self.q(h) for h in H.elements())
        return subgroup_from_elements(self.quotient, els)

    def preimage(self, Hbar):
        """Full preimage in C of a subgroup of the quotient."""
        target = Hbar.elements()
        els = frozenset(x for x in self.el2coset if self.q(x) in target)
        return subgroup_from_elements(self.G, els)

    def check_correspondence(self, Q):
        """q-preimage of the q-image recovers Q, for O_C <= Q <= C."""
        if not self.O_C.is_subgroup_of(Q):
            raise DomainError("correspondence needs a subgroup containing the p-core")
        back = self.preimage(self.q_subgroup(Q))
        return back.canonical_key() == Q.canonical_key()


def quotient_context(G, p, T):
    return QuotientContext(G, p, T)


def _sylow_conjugates(G, p):
    """All Sylow p-subgroups, as handles with cached elements and centers."""
    key = ("sylowset", p)
    if key in G._cache:
        return G._cache[key]
    S = sylow_p(G, p)
    seen = {S.elements(): S}
    queue = [S]
    while queue:
        cur = queue.pop()
        for g in G.gens:
            img = frozenset(conj(x, g) for x in cur.elements())
            if img not in seen:
                h = cur.conjugate(g)
                seen[img] = h
                queue.append(h)
    sylows = sorted(seen.values(), key=lambda h: h.sort_key())
    out = [(h, frozenset(center(h).elements())) for h in sylows]
    G._cache[key] = out
    return out


@dataclass
class FrakSCollection(Collection):
    T: object = None
    C: object = None
    O_C: object = None
    acting: object = None
    choice_dependent: bool = False


def noncentral_type(G, p, T):
    """T has order p and no nonidentity element is p-central."""
    data = p_central_data(G, p)
    els = T.elements()
    if len(els) != p:
        return False
    return not any(x in data.elements for x in els if not is_identity(x))


def build_frakS(G, p, T):
    """Members P with O_C < P <= C, distinguished in G, whose center meets
    the center of some Sylow overgroup chain P <= S_T <= S.

    The existential quantifier over (S_T, S) pairs is evaluated
    exhaustively; members whose verdict differed across pairs are
    tracked so choice dependence would be visible.
    """
    data = p_central_data(G, p)
    if not noncentral_type(G, p, T):
        raise DomainError(
            "the family needs a noncentral order-p subgroup; "
            "central elements take the fixed-point contraction route"
        )
    limits = G.limits
    C = centralizer(G, T)
    O_C = _rewrap(G, p_core(C.group(), p))
    oels = O_C.elements()

    # all p-subgroups of C: one Sylow's lattice expanded under C-conjugation
    from .pcollect import _subgroups_of_pgroup

    S_T = _rewrap(G, sylow_p(C.group(), p))
    if S_T.order() == 1:
        raise DomainError("centralizer has no nontrivial p-subgroups")
    base = _subgroups_of_pgroup(S_T, p, limits.max_subgroup_classes)
    all_subs = set()
    queue = [s for s in base if len(s) > 1]
    all_subs.update(queue)
    while queue:
        cur = queue.pop()
        for g in C.gens:
            img = frozenset(conj(x, g) for x in cur)
            if img not in all_subs:
                all_subs.add(img)
                queue.append(img)
        if len(all_subs) > limits.max_poset_elements:
            raise ResourceLimitError(
                "max_poset_elements", "too many p-subgroups in the centralizer"
            )

    candidates = []
    for els in sorted(all_subs, key=sorted):
        if len(els) <= len(oels) or not oels <= els:
            continue
        h = SubgroupHandle(G, _gens_for(G, els), elements=els)
        if hat_subgroup(G, p, h).order() > 1:
            candidates.append(h)

    syl_C = _sylow_in_C(G, C, S_T)
    syl_G = _sylow_conjugates(G, p)

    members = []
    mixed = False
    for P in candidates:
        pels = P.elements()
        zP = frozenset(center(P).elements())
        tested = passed = 0
        for St in syl_C:
            if not pels <= St.elements():
                continue
            stels = St.elements()
            for S, zS in syl_G:
                if not stels <= S.elements():
                    continue
                tested += 1
                hit = any(not is_identity(x) for x in (zP & zS))
                if hit:
                    passed += 1
        if passed:
            members.append(P)
            if passed != tested:
                mixed = True

    N_T = normalizer(G, T)
    classes = _orbit_classes(G, members, N_T)
    return FrakSCollection(
        CollectionKind.frakS,
        G,
        p,
        tuple(classes),
        T=T,
        C=C,
        O_C=O_C,
        acting=N_T,
        choice_dependent=mixed,
    )


def _gens_for(G, elements):
    from .pcollect import _reduce_gens

    return _reduce_gens(G, elements)


def _sylow_in_C(G, C, S_T):
    """All Sylow p-subgroups of C, as handles in the ambient group."""
    seen = {S_T.elements(): S_T}
    queue = [S_T]
    while queue:
        cur = queue.pop()
        for g in C.gens:
            img = frozenset(conj(x, g) for x in cur.elements())
            if img not in seen:
                h = cur.conjugate(g)
                seen[img] = h
                queue.append(h)
    return sorted(seen.values(), key=lambda h: h.sort_key())


def _orbit_classes(G, members, acting):
    """Partition members into orbits under the acting subgroup."""
    index = {m.elements(): m for m in members}
    unseen = set(index)
    classes = []
    for els in sorted(unseen, key=sorted):
        if els not in unseen:
            continue
        orbit = {els}
        queue = [els]
        while queue:
            cur = queue.pop()
            for g in acting.gens:
                img = frozenset(conj(x, g) for x in cur)
                if img not in orbit:
                    if img not in index:
                        raise Error("orbit leaves the member set; action broken")
                    orbit.add(img)
                    queue.append(img)
        unseen -= orbit
        handles = sorted((index[e] for e in orbit), key=lambda h: h.sort_key())
        classes.append(PClass(handles[0], tuple(handles)))
    classes.sort(key=lambda c: c.rep.sort_key())
    return classes
