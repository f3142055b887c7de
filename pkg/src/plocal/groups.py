"""Permutation group engine: stabilizer chains and subgroup operations.

Groups are handled through GroupHandle (generators plus a lazily built
Schreier-Sims stabilizer chain with Schreier vectors) and SubgroupHandle
(a subgroup tied to an ambient handle, with cached element sets for
small subgroups and a canonical byte key for dedup and ordering).

Centralizers, normalizers and conjugacy classes run orbit-stabilizer
searches over the relevant conjugation action, pruning through the
Schreier generators of the point stabilizer.  Correctness, not
asymptotics, is the contract; every search is certified afterwards by
the orbit-stabilizer counting identity.
"""

from .config import DEFAULT_LIMITS
from .errors import DomainError, Error, ResourceLimitError
from ._kernel import mul_close
from .perms import (
    as_perm,
    conj,
    identity,
    inv,
    is_identity,
    min_moved_point,
    mul,
    pack_perm,
    perm_order,
    power,
)


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def p_part(n, p):
    """Largest power of p dividing n."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def require_prime(p):
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


class _Level:
    __slots__ = ("base", "gens", "tree")

    def __init__(self, base, gens):
        self.base = base
        self.gens = gens
        self.tree = {base: None}


class StabChain:
    """Deterministic Schreier-Sims chain; transversals held as Schreier vectors.

    The chain keeps one global strong generating list.  Level j uses the
    strong generators fixing the first j base points, so its orbit and
    transversal describe the full point stabilizer.  After every change
    the chain reruns the Schreier test until no generator escapes, which
    keeps the implementation plainly correct at the scales handled here.
    """

    def __init__(self, degree):
        self.degree = degree
        self.strong = []
        self.levels = []

    def order(self):
        n = 1
        for lv in self.levels:
            n *= len(lv.tree)
        return n

    def base(self):
        return [lv.base for lv in self.levels]

    def _rep(self, k, point):
        """Transversal element carrying the level-k base to point."""
        lv = self.levels[k]
        path = []
        x = point
        while True:
            step = lv.tree[x]
            if step is None:
                break
            prev, gi = step
            path.append(gi)
            x = prev
        u = identity(self.degree)
        for gi in reversed(path):
            u = mul(u, lv.gens[gi])
        return u

    def _recompute(self):
        base = [lv.base for lv in self.levels]
        for g in self.strong:
            if all(g[b] == b for b in base):
                m = min_moved_point(g)
                if m is not None:
                    base.append(m)
        self.levels = []
        for j, b in enumerate(base):
            prefix = base[:j]
            gens = [g for g in self.strong if all(g[c] == c for c in prefix)]
            lv = _Level(b, gens)
            queue = [b]
            while queue:
                nxt = []
                for x in queue:
                    for gi, s in enumerate(gens):
                        y = s[x]
                        if y not in lv.tree:
                            lv.tree[y] = (x, gi)
                            nxt.append(y)
                queue = nxt
            self.levels.append(lv)

    def _sift_from(self, k, g):
        for j in range(k, len(self.levels)):
            lv = self.levels[j]
            a = g[lv.base]
            if a == lv.base:
                continue
            if a not in lv.tree:
                return g
            g = mul(g, inv(self._rep(j, a)))
        return None if is_identity(g) else g

    def sift(self, g):
        return self._sift_from(0, g)

    def contains(self, g):
        return self.sift(g) is None

    def add(self, g):
        """Extend the chain by g.  Returns True when the group grew."""
        if is_identity(g):
            return False
        residue = self.sift(g)
        if residue is None:
            return False
        self.strong.append(residue)
        self._recompute()
        self._close()
        return True

    def _close(self):
        # rerun the Schreier test until every Schreier generator sifts away
        restart = True
        while restart:
            restart = False
            for j, lv in enumerate(self.levels):
                for x in sorted(lv.tree):
                    ux = self._rep(j, x)
                    for s in lv.gens:
                        w = mul(mul(ux, s), inv(self._rep(j, s[x])))
                        if is_identity(w):
                            continue
                        residue = self._sift_from(j + 1, w)
                        if residue is not None:
                            self.strong.append(residue)
                            self._recompute()
                            restart = True
                            break
                    if restart:
                        break
                if restart:
                    break

    def iter_elements(self):
        """All elements, deterministically, as transversal products."""

        def walk(k):
            if k == len(self.levels):
                yield identity(self.degree)
                return
            reps = [self._rep(k, x) for x in sorted(self.levels[k].tree)]
            for tail in walk(k + 1):
                for u in reps:
                    yield mul(tail, u)

        return walk(0)


def _canonical_levels(gens, degree):
    """Orbit-stabilizer peeling along the least-moved-point base.

    The bases, orbits and coset spaces produced here depend only on the
    group, not on the generating set, which is what makes the derived
    key canonical.
    """
    levels = []
    cur = [g for g in gens if not is_identity(g)]
    while cur:
        base = min(min_moved_point(g) for g in cur)
        tree = {base: None}
        queue = [base]
        while queue:
            nxt = []
            for x in queue:
                for gi, s in enumerate(cur):
                    y = s[x]
                    if y not in tree:
                        tree[y] = (x, gi)
                        nxt.append(y)
            queue = nxt

        def rep(point, tree=tree, cur=cur):
            path = []
            x = point
            while tree[x] is not None:
                prev, gi = tree[x]
                path.append(gi)
                x = prev
            u = identity(degree)
            for gi in reversed(path):
                u = mul(u, cur[gi])
            return u

        sub = StabChain(degree)
        stabgens = []
        for x in sorted(tree):
            rx = rep(x)
            for s in cur:
                w = mul(mul(rx, s), inv(rep(s[x])))
                if not is_identity(w) and sub.add(w):
                    stabgens.append(w)
        levels.append((base, tuple(sorted(tree)), tree, cur))
        cur = stabgens
    return levels


def _level_rep(level, point, degree):
    base, _, tree, gens = level
    path = []
    x = point
    while tree[x] is not None:
        prev, gi = tree[x]
        path.append(gi)
        x = prev
    u = identity(degree)
    for gi in reversed(path):
        u = mul(u, gens[gi])
    return u


def _lexmin_in_coset(levels, k, x, degree):
    """Lexicographically least element of (level-k group) * x."""
    while k < len(levels):
        base, orbit, _, _ = levels[k]
        best = min(orbit, key=lambda a: x[a])
        u = _level_rep(levels[k], best, degree)
        x = mul(u, x)
        k += 1
    return x


class GroupHandle:
    """A permutation group given by generators, with a lazy stabilizer chain."""

    def __init__(self, degree, gens, limits=None, name=None):
        if degree < 1:
            raise DomainError("degree must be at least 1")
        self.degree = degree
        self.limits = limits or DEFAULT_LIMITS
        self.name = name
        clean = []
        seen = set()
        for g in gens:
            p = as_perm(g, degree)
            if not is_identity(p) and p not in seen:
                seen.add(p)
                clean.append(p)
        self.gens = tuple(clean)
        self._chain = None
        self._cache = {}

    def chain(self):
        if self._chain is None:
            ch = StabChain(self.degree)
            for g in self.gens:
                ch.add(g)
            self._chain = ch
        return self._chain

    def order(self):
        if "order" not in self._cache:
            self._cache["order"] = self.chain().order()
        return self._cache["order"]

    def contains(self, p):
        p = as_perm(p, self.degree)
        return self.chain().contains(p)

    def iter_elements(self):
        return self.chain().iter_elements()

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"<group {label}, {len(self.gens)} gens>"


class SubgroupHandle:
    """A subgroup of an ambient GroupHandle.

    Small subgroups (within limits.element_list_cap) carry their full
    element set; all subgroups expose a canonical byte key so that equal
    subgroups compare and hash identically no matter how they were built.
    """

    def __init__(self, ambient, gens, elements=None, group=None):
        self.ambient = ambient
        clean = []
        seen = set()
        for g in gens:
            if not is_identity(g) and g not in seen:
                seen.add(g)
                clean.append(g)
        self.gens = tuple(clean)
        self._elts = frozenset(elements) if elements is not None else None
        self._group = group
        self._key = None
        self._order = len(self._elts) if self._elts is not None else None

    @property
    def degree(self):
        return self.ambient.degree

    @property
    def limits(self):
        return self.ambient.limits

    def group(self):
        if self._group is None:
            self._group = GroupHandle(self.degree, self.gens, limits=self.limits)
        return self._group

    def order(self):
        if self._order is None:
            self._order = self.group().order()
        return self._order

    def contains(self, p):
        if self._elts is not None:
            return p in self._elts
        return self.group().contains(p)

    def elements(self):
        """Frozenset of all elements; capped by limits.enumeration_cap."""
        if self._elts is None:
            cap = self.limits.enumeration_cap
            if self._order is not None and self._order > cap:
                raise ResourceLimitError(
                    "enumeration_cap", f"subgroup of order {self._order} too large to list"
                )
            try:
                if self.gens:
                    els = mul_close(list(self.gens), cap)
                else:
                    els = [identity(self.degree)]
            except ValueError:
                raise ResourceLimitError(
                    "enumeration_cap", "subgroup too large to list"
                )
            self._elts = frozenset(els)
            self._order = len(self._elts)
        return self._elts

    def canonical_key(self):
        if self._key is None:
            cap = self.limits.element_list_cap
            if self.order() <= cap:
                packed = sorted(pack_perm(x) for x in self.elements())
                self._key = b"E" + b"." + b".".join(packed)
            else:
                levels = _canonical_levels(self.gens, self.degree)
                parts = [b"C", str(self.order()).encode()]
                for k, (base, orbit, _, _) in enumerate(levels):
                    reps = []
                    for a in orbit:
                        u = _level_rep(levels[k], a, self.degree)
                        reps.append(pack_perm(_lexmin_in_coset(levels, k + 1, u, self.degree)))
                    parts.append(str(base).encode() + b":" + b",".join(reps))
                self._key = b"|".join(parts)
        return self._key

    def sort_key(self):
        return (self.order(), self.canonical_key())

    def __eq__(self, other):
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def conjugate(self, g):
        els = None
        if self._elts is not None:
            els = frozenset(conj(x, g) for x in self._elts)
        return SubgroupHandle(self.ambient, tuple(conj(x, g) for x in self.gens), elements=els)

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.gens)

    def normalized_by(self, p):
        """True when conjugation by p maps this subgroup into itself."""
        return all(self.contains(conj(g, p)) for g in self.gens)

    def is_normal_in_ambient(self):
        return all(self.normalized_by(g) for g in self.ambient.gens)

    def as_group(self):
        return self.group()

    def __repr__(self):
        try:
            return f"<subgroup of order {self.order()}>"
        except Error:
            return f"<subgroup, {len(self.gens)} gens>"


def build_group(degree, gens, limits=None, name=None):
    """Public constructor: parses generators and enforces the order cap."""
    if not isinstance(degree, int) or degree < 1:
        raise DomainError(f"bad degree: {degree!r}")
    G = GroupHandle(degree, gens, limits=limits, name=name)
    if G.order() > G.limits.max_group_order:
        raise ResourceLimitError(
            "max_group_order", f"group order {G.order()} exceeds the configured cap"
        )
    for g in G.gens:
        if not G.chain().contains(g):
            raise Error("stabilizer chain failed to absorb a generator")
    return G


def subgroup_from_gens(G, gens, check=True):
    ps = [as_perm(g, G.degree) for g in gens]
    if check:
        for p in ps:
            if not G.contains(p):
                raise DomainError("generator outside the ambient group")
    return SubgroupHandle(G, tuple(ps))


def subgroup_from_elements(G, elements):
    """Subgroup from a full element collection, with a reduced generating set."""
    els = sorted(set(elements))
    chain = StabChain(G.degree)
    gens = []
    for x in els:
        if chain.add(x):
            gens.append(x)
    sub = SubgroupHandle(G, tuple(gens), elements=frozenset(els))
    if chain.order() != len(els):
        raise DomainError("element collection is not closed under products")
    grp = GroupHandle(G.degree, tuple(gens), limits=G.limits)
    grp._chain = chain
    sub._group = grp
    return sub


def trivial_subgroup(G):
    return SubgroupHandle(G, (), elements=frozenset({identity(G.degree)}))


def whole_group(G):
    sub = SubgroupHandle(G, G.gens)
    sub._group = G
    return sub


def _as_group(G):
    return G.group() if isinstance(G, SubgroupHandle) else G


def _certify_orbit_stabilizer(G, orbit_len, stab_order):
    if orbit_len * stab_order != G.order():
        raise Error("orbit-stabilizer certification failed")


def _orbit_stabilizer(G, seed, act, budget):
    """Generic orbit with Schreier-generator stabilizer.

    act(obj, g) must define a right action of G on hashable objects.
    Returns (witness dict obj -> carrying perm, stabilizer chain, gens).
    """
    e = identity(G.degree)
    witness = {seed: e}
    queue = [seed]
    stab = StabChain(G.degree)
    stabgens = []
    while queue:
        nxt = []
        for obj in queue:
            u = witness[obj]
            for g in G.gens:
                t = act(obj, g)
                if t in witness:
                    w = mul(mul(u, g), inv(witness[t]))
                    if not is_identity(w) and stab.add(w):
                        stabgens.append(w)
                else:
                    if len(witness) >= budget:
                        raise ResourceLimitError(
                            "scan_budget", "orbit search exceeded the node budget"
                        )
                    witness[t] = mul(u, g)
                    nxt.append(t)
        queue = nxt
    return witness, stab, stabgens


def _stab_subgroup(G, stab, stabgens):
    sub = SubgroupHandle(G, tuple(stabgens))
    grp = GroupHandle(G.degree, tuple(stabgens), limits=G.limits)
    grp._chain = stab
    sub._group = grp
    return sub


def element_centralizer(G, x, check=True):
    """Centralizer of a single element, via its conjugation orbit.

    x need not belong to G; with check=False the search simply stabilizes
    x under G-conjugation, which is what iterated centralizers need.
    """
    G = _as_group(G)
    x = as_perm(x, G.degree)
    if check and not G.contains(x):
        raise DomainError("element outside the group")
    witness, stab, stabgens = _orbit_stabilizer(
        G, x, lambda obj, g: conj(obj, g), G.limits.scan_budget
    )
    _certify_orbit_stabilizer(G, len(witness), stab.order())
    sub = _stab_subgroup(G, stab, stabgens)
    return sub, len(witness)


def centralizer(G, target):
    """Centralizer of an element or of a subgroup."""
    G = _as_group(G)
    if isinstance(target, SubgroupHandle):
        K = G
        for h in target.gens:
            if not G.contains(h):
                raise DomainError("subgroup generator outside the group")
            sub, _ = element_centralizer(K, h, check=False)
            K = sub.group()
        out = SubgroupHandle(G, K.gens)
        out._group = K
        return out
    sub, _ = element_centralizer(G, as_perm(target, G.degree))
    return sub


def center(H):
    """Center of a group or subgroup handle."""
    if isinstance(H, SubgroupHandle):
        grp = H.group()
        z = centralizer(grp, whole_group(grp))
        out = SubgroupHandle(H.ambient, z.gens)
        out._group = z._group
        return out
    return centralizer(H, whole_group(H))


def normalizer(G, H):
    """Normalizer N_G(H), via the conjugation orbit of H."""
    G = _as_group(G)
    if not isinstance(H, SubgroupHandle):
        raise DomainError("normalizer target must be a subgroup handle")
    if not H.is_subgroup_of(G):
        raise DomainError("subgroup not contained in the ambient group")
    if H.order() <= G.limits.element_list_cap:
        seed = H.elements()
        witness, stab, stabgens = _orbit_stabilizer(
            G,
            seed,
            lambda obj, g: frozenset(conj(x, g) for x in obj),
            G.limits.scan_budget,
        )
        _certify_orbit_stabilizer(G, len(witness), stab.order())
        return _stab_subgroup(G, stab, stabgens)
    return _normalizer_big(G, H)


def _normalizer_big(G, H):
    e = identity(G.degree)
    seed = SubgroupHandle(G, H.gens)
    witness = {seed.canonical_key(): e}
    frontier = [seed]
    stab = StabChain(G.degree)
    stabgens = []
    count = 1
    while frontier:
        nxt = []
        for obj in frontier:
            u = witness[obj.canonical_key()]
            for g in G.gens:
                t = obj.conjugate(g)
                key = t.canonical_key()
                if key in witness:
                    w = mul(mul(u, g), inv(witness[key]))
                    if not is_identity(w) and stab.add(w):
                        stabgens.append(w)
                else:
                    count += 1
                    if count > G.limits.scan_budget:
                        raise ResourceLimitError(
                            "scan_budget", "normalizer orbit exceeded the node budget"
                        )
                    witness[key] = mul(u, g)
                    nxt.append(t)
        frontier = nxt
    _certify_orbit_stabilizer(G, len(witness), stab.order())
    return _stab_subgroup(G, stab, stabgens)


def intersection(H, K):
    """Intersection of two subgroups of compatible degree."""
    if not isinstance(H, SubgroupHandle) or not isinstance(K, SubgroupHandle):
        raise DomainError("intersection expects subgroup handles")
    if H.degree != K.degree:
        raise DomainError("mismatched ambient degrees")
    small, large = (H, K) if H.order() <= K.order() else (K, H)
    if small.order() > small.limits.enumeration_cap:
        raise ResourceLimitError(
            "enumeration_cap", "both subgroups too large for intersection by enumeration"
        )
    els = [x for x in small.elements() if large.contains(x)]
    return subgroup_from_elements(H.ambient, els)


def sylow_p(G, p):
    """A Sylow p-subgroup, grown through normalizers of partial p-subgroups."""
    G = _as_group(G)
    require_prime(p)
    target = p_part(G.order(), p)
    if target == 1:
        return trivial_subgroup(G)
    if target > G.limits.max_sylow_order:
        raise ResourceLimitError(
            "max_sylow_order", f"Sylow {p}-subgroup order {target} exceeds the cap"
        )
    seed = None
    budget = G.limits.scan_budget
    for x in G.iter_elements():
        budget -= 1
        if budget < 0:
            raise ResourceLimitError("scan_budget", "no p-element found within budget")
        m = perm_order(x)
        mp = p_part(m, p)
        if mp > 1:
            seed = power(x, m // mp)
            break
    P = subgroup_from_gens(G, [seed], check=False)
    while P.order() < target:
        N = normalizer(G, P).group()
        grown = False
        budget = G.limits.scan_budget
        for y in N.iter_elements():
            budget -= 1
            if budget < 0:
                raise ResourceLimitError("scan_budget", "Sylow growth scan exhausted")
            m = perm_order(y)
            mp = p_part(m, p)
            if mp == 1:
                continue
            z = power(y, m // mp)
            if not P.contains(z):
                P = subgroup_from_gens(G, list(P.gens) + [z], check=False)
                grown = True
                break
        if not grown:
            raise Error("Sylow growth stalled; chain inconsistency")
    if P.order() != target:
        raise Error("Sylow subgroup has wrong order")
    return P


def p_core(G, p):
    """Largest normal p-subgroup: intersection of Sylow conjugates."""
    G = _as_group(G)
    require_prime(p)
    S = sylow_p(G, p)
    if S.order() == 1:
        return S
    current = set(S.elements())
    e = identity(G.degree)
    while True:
        changed = False
        for g in G.gens:
            conjugated = {conj(x, g) for x in current}
            if conjugated != current:
                current &= conjugated
                changed = True
                if current == {e}:
                    return trivial_subgroup(G)
        if not changed:
            break
    return subgroup_from_elements(G, current)


def omega1_center(P, p):
    """Subgroup of the center generated by its elements of order dividing p."""
    require_prime(p)
    if not isinstance(P, SubgroupHandle):
        raise DomainError("omega1_center expects a subgroup handle")
    if p_part(P.order(), p) != P.order():
        raise DomainError("omega1_center expects a p-group")
    Z = center(P)
    els = [x for x in Z.elements() if is_identity(x) or perm_order(x) == p]
    return subgroup_from_elements(P.ambient, els)


class ClassTable:
    """Conjugacy classes with deterministic ordering and cycle-type labels."""

    def __init__(self, group, reps, sizes, el2class):
        self.group = group
        self.reps = tuple(reps)
        self.sizes = tuple(sizes)
        self.el2class = el2class
        self.orders = tuple(perm_order(r) for r in self.reps)
        n = group.order()
        self.centralizer_orders = tuple(n // s for s in self.sizes)
        labels = []
        seen = {}
        for r in self.reps:
            from .perms import cycle_type

            ct = cycle_type(r)
            base = "e" if not ct else "+".join(str(c) for c in ct)
            k = seen.get(base, 0)
            seen[base] = k + 1
            labels.append(base if k == 0 else base + "abcdefgh"[k])
        self.labels = tuple(labels)

    def __len__(self):
        return len(self.reps)

    def class_of(self, x):
        try:
            return self.el2class[x]
        except KeyError:
            raise DomainError("element outside the group")

    def index_by_label(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"no class labelled {label!r}")


def conjugacy_classes(G):
    """Full conjugacy class table by breadth-first fusion of all elements."""
    G = _as_group(G)
    if "classes" in G._cache:
        return G._cache["classes"]
    n = G.order()
    if n > G.limits.max_class_elements:
        raise ResourceLimitError(
            "max_class_elements", f"group of order {n} too large for a class table"
        )
    el2class = {}
    classes = []
    for x in G.iter_elements():
        if x in el2class:
            continue
        members = {x}
        queue = [x]
        while queue:
            nxt = []
            for y in queue:
                for g in G.gens:
                    z = conj(y, g)
                    if z not in members:
                        members.add(z)
                        nxt.append(z)
            queue = nxt
        idx = len(classes)
        classes.append((min(members), len(members), members))
        for y in members:
            el2class[y] = idx
    if sum(size for _, size, _ in classes) != n:
        raise Error("conjugacy classes do not partition the group")
    order_key = sorted(
        range(len(classes)),
        key=lambda i: (perm_order(classes[i][0]), classes[i][1], classes[i][0]),
    )
    remap = {old: new for new, old in enumerate(order_key)}
    reps = [classes[i][0] for i in order_key]
    sizes = [classes[i][1] for i in order_key]
    el2class = {x: remap[i] for x, i in el2class.items()}
    table = ClassTable(G, reps, sizes, el2class)
    G._cache["classes"] = table
    return table
