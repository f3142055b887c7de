"""Posets of subgroups with a conjugation action, and their order complexes.

A collection expands to a poset whose elements are actual subgroups (full
orbits, not class representatives), ordered by inclusion, with a chosen
acting group.  Subposets come from fixed points under a subgroup and from
truncation by upper or lower bounds.  The order complex has one simplex
per strictly increasing chain.
"""

from .errors import DomainError, Error, ParseError, ResourceLimitError
from .groups import SubgroupHandle


class GPoset:
    """Finite poset with optional group action.

    elements: deduplicated list, index order is the canonical order.
    leq: the partial order on elements (reflexive).
    act(el, g): action by a group element, used for equivariance checks.
    rank: optional integer rank (subgroup order) used to prune comparisons.
    """

    def __init__(
        self, elements, leq, key, acting=None, act=None, rank=None, name="", limits=None
    ):
        self.elements = list(elements)
        self._leq = leq
        self._key = key
        self.acting = acting
        self._act = act
        self._rank = rank
        self.name = name
        self.limits = limits
        self.index = {}
        for i, el in enumerate(self.elements):
            k = key(el)
            if k in self.index:
                raise Error("duplicate poset element")
            self.index[k] = i
        self._cmp = {}
        self._pairs = None
        self._nerve = None

    def __len__(self):
        return len(self.elements)

    def index_of(self, el):
        k = self._key(el)
        if k not in self.index:
            raise DomainError("element not in poset")
        return self.index[k]

    def contains(self, el):
        return self._key(el) in self.index

    def leq_idx(self, i, j):
        if i == j:
            return True
        got = self._cmp.get((i, j))
        if got is None:
            if self._rank is not None and self._rank(self.elements[i]) >= self._rank(
                self.elements[j]
            ):
                got = False
            else:
                got = self._leq(self.elements[i], self.elements[j])
            self._cmp[(i, j)] = got
        return got

    def comparabilities(self):
        """All strict pairs (i, j) with element i < element j."""
        if self._pairs is None:
            n = len(self.elements)
            pairs = []
            if self._rank is not None:
                order = sorted(range(n), key=lambda i: self._rank(self.elements[i]))
            else:
                order = list(range(n))
            for a in range(n):
                for b in range(n):
                    i, j = order[a], order[b]
                    if i != j and self.leq_idx(i, j):
                        pairs.append((i, j))
            pairs.sort()
            self._pairs = pairs
        return self._pairs

    def act_idx(self, i, g):
        """Index of the image of element i under g; the set must be closed."""
        if self._act is None:
            raise DomainError("poset carries no action")
        img = self._act(self.elements[i], g)
        k = self._key(img)
        if k not in self.index:
            raise DomainError("action does not preserve the element set")
        return self.index[k]

    def subposet(self, indices, name=""):
        keep = sorted(set(indices))
        els = [self.elements[i] for i in keep]
        return GPoset(
            els,
            self._leq,
            self._key,
            acting=self.acting,
            act=self._act,
            rank=self._rank,
            name=name or self.name,
            limits=self.limits,
        )

    def order_complex(self, limits=None):
        """All strictly increasing chains, grouped by dimension."""
        if self._nerve is not None:
            return self._nerve
        limits = limits if limits is not None else self.limits
        cap = limits.max_simplices if limits is not None else None
        n = len(self.elements)
        up = []
        for i in range(n):
            up.append([j for j in range(n) if i != j and self.leq_idx(i, j)])
        simplices = []
        count = 0
        stack = [(i,) for i in range(n)]
        # depth-first chain extension; chains emitted per dimension
        while stack:
            chain = stack.pop()
            d = len(chain) - 1
            while len(simplices) <= d:
                simplices.append([])
            simplices[d].append(chain)
            count += 1
            if cap is not None and count > cap:
                raise ResourceLimitError("max_simplices", "order complex too large")
            for j in up[chain[-1]]:
                stack.append(chain + (j,))
        for level in simplices:
            level.sort()
        labels = [self._key(el) for el in self.elements]
        self._nerve = SimplicialComplex(labels, simplices)
        return self._nerve

    def dump(self):
        """Line-oriented text: elements by key, then comparability pairs."""
        lines = [f"poset {len(self.elements)} {self.name}".rstrip()]
        for i, el in enumerate(self.elements):
            lines.append(f"element {i} {self._key(el)}")
        for i, j in self.comparabilities():
            lines.append(f"rel {i} {j}")
        return "\n".join(lines) + "\n"


def load_poset(text):
    """Rebuild an abstract poset from the dump format."""
    labels = {}
    pairs = set()
    count = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "poset":
            try:
                count = int(parts[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: bad poset header")
        elif parts[0] == "element":
            if len(parts) < 3:
                raise ParseError(f"line {lineno}: element needs index and key")
            labels[int(parts[1])] = parts[2]
        elif parts[0] == "rel":
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: rel needs two indices")
            pairs.add((int(parts[1]), int(parts[2])))
        else:
            raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if count is not None and count != len(labels):
        raise ParseError("poset header count does not match element lines")
    names = [labels[i] for i in sorted(labels)]
    if sorted(labels) != list(range(len(labels))):
        raise ParseError("element indices must be 0..n-1")
    closure = dict()
    # transitive closure so leq answers derived comparabilities too
    adj = {i: set() for i in range(len(names))}
    for i, j in pairs:
        if i not in adj or j not in adj:
            raise ParseError("rel line references unknown element")
        adj[i].add(j)
    for i in range(len(names)):
        seen = set()
        queue = [i]
        while queue:
            cur = queue.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if i in seen:
            raise ParseError("relation has a cycle")
        closure[i] = seen
    by_name = {name: i for i, name in enumerate(names)}

    def leq(a, b):
        return a == b or by_name[b] in closure[by_name[a]]

    return GPoset(names, leq, lambda s: s, name="loaded")


class SimplicialComplex:
    """Chains of a poset: simplices listed per dimension as vertex tuples."""

    def __init__(self, labels, simplices):
        self.labels = labels
        self.simplices = [list(level) for level in simplices]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()

    @property
    def dim(self):
        return len(self.simplices) - 1

    def f_vector(self):
        return tuple(len(level) for level in self.simplices)

    def num_simplices(self):
        return sum(len(level) for level in self.simplices)

    def check_face_closed(self):
        for d in range(1, len(self.simplices)):
            lower = set(self.simplices[d - 1])
            for s in self.simplices[d]:
                for k in range(len(s)):
                    if s[:k] + s[k + 1 :] not in lower:
                        raise Error("complex is not face-closed")
        return True

    def dump(self):
        lines = [f"complex {len(self.labels)}"]
        for i, lab in enumerate(self.labels):
            lines.append(f"vertex {i} {lab}")
        for level in self.simplices[1:]:
            for s in level:
                lines.append("simplex " + " ".join(str(v) for v in s))
        return "\n".join(lines) + "\n"


def load_complex(text):
    """Complex from dump format; faces are filled in and checked."""
    labels = {}
    tops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "complex":
            continue
        if parts[0] == "vertex":
            labels[int(parts[1])] = parts[2] if len(parts) > 2 else str(parts[1])
        elif parts[0] == "simplex":
            verts = tuple(int(v) for v in parts[1:])
            if len(set(verts)) != len(verts) or list(verts) != sorted(verts):
                raise ParseError(f"line {lineno}: simplex must be strictly increasing")
            tops.append(verts)
        else:
            raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
    n = len(labels)
    if sorted(labels) != list(range(n)):
        raise ParseError("vertex indices must be 0..n-1")
    by_dim = [set((i,) for i in range(n))]
    for top in tops:
        if any(v >= n for v in top):
            raise ParseError("simplex references unknown vertex")
        d = len(top) - 1
        while len(by_dim) <= d:
            by_dim.append(set())
        # add all subfaces so the result is face-closed
        for mask in range(1, 1 << len(top)):
            face = tuple(v for k, v in enumerate(top) if mask >> k & 1)
            by_dim[len(face) - 1].add(face)
    names = [labels[i] for i in range(n)]
    return SimplicialComplex(names, [sorted(level) for level in by_dim])


def _subgroup_key(h):
    return h.canonical_key().hex()


def build_poset(collection, acting=None, limits=None, name=""):
    """Inclusion poset on the full expansion of a collection."""
    G = collection.group
    limits = limits if limits is not None else G.limits
    elements = collection.expand()
    if len(elements) > limits.max_poset_elements:
        raise ResourceLimitError("max_poset_elements", "collection expands too far")
    acting = acting if acting is not None else G
    return GPoset(
        elements,
        lambda a, b: a.is_subgroup_of(b),
        _subgroup_key,
        acting=acting,
        act=lambda h, g: h.conjugate(g),
        rank=lambda h: h.order(),
        name=name or f"{collection.kind.value}_p{collection.prime}",
        limits=limits,
    )


def subgroup_poset(handles, acting, name=""):
    """Poset directly from a list of subgroup handles (deduplicated, sorted)."""
    seen = {}
    for h in handles:
        seen.setdefault(h.canonical_key(), h)
    els = sorted(seen.values(), key=lambda h: h.sort_key())
    return GPoset(
        els,
        lambda a, b: a.is_subgroup_of(b),
        _subgroup_key,
        acting=acting,
        act=lambda h, g: h.conjugate(g),
        rank=lambda h: h.order(),
        name=name,
        limits=getattr(acting, "limits", None),
    )


def fixed_subposet(X, P, acting=None, name=""):
    """Elements of X normalized by every generator of P."""
    gens = P.gens if hasattr(P, "gens") else tuple(P)
    keep = [
        i
        for i, el in enumerate(X.elements)
        if all(el.normalized_by(g) for g in gens)
    ]
    sub = X.subposet(keep, name=name or (X.name + "^fixed"))
    if acting is not None:
        sub.acting = acting
    return sub


class TruncationResult(GPoset):
    pass


def truncate(
    X,
    gt=None,
    ge=None,
    lt=None,
    le=None,
    name="",
):
    """Filter X by bounds: strictly above gt, at or above ge, below lt/le.

    Contradictory bounds (nothing can satisfy them) yield an empty poset
    with the contradictory flag set.
    """
    if gt is not None and ge is not None:
        raise DomainError("give at most one lower bound")
    if lt is not None and le is not None:
        raise DomainError("give at most one upper bound")

    contradictory = False
    lower = gt if gt is not None else ge
    upper = lt if lt is not None else le
    if lower is not None and upper is not None:
        if not lower.is_subgroup_of(upper):
            contradictory = True
        elif (gt is not None or lt is not None) and lower.order() == upper.order():
            # strict on either side needs the interval to be proper
            contradictory = True

    keep = []
    if not contradictory:
        for i, el in enumerate(X.elements):
            if gt is not None and not (gt.is_subgroup_of(el) and el.order() > gt.order()):
                continue
            if ge is not None and not ge.is_subgroup_of(el):
                continue
            if lt is not None and not (el.is_subgroup_of(lt) and el.order() < lt.order()):
                continue
            if le is not None and not el.is_subgroup_of(le):
                continue
            keep.append(i)
    sub = X.subposet(keep, name=name or (X.name + "_trunc"))
    result = TruncationResult(
        sub.elements,
        sub._leq,
        sub._key,
        acting=sub.acting,
        act=sub._act,
        rank=sub._rank,
        name=sub.name,
    )
    result.contradictory = contradictory
    return result


def check_action_closed(X):
    """The acting group's generators must permute the element set."""
    if X.acting is None or X._act is None:
        return True
    for g in X.acting.gens:
        for i in range(len(X.elements)):
            X.act_idx(i, g)
    return True


def check_order_preserved(X):
    """Conjugation by acting generators preserves every comparability."""
    if X.acting is None or X._act is None:
        return True
    for g in X.acting.gens:
        for i, j in X.comparabilities():
            if not X.leq_idx(X.act_idx(i, g), X.act_idx(j, g)):
                raise Error("action fails to preserve the order")
    return True
