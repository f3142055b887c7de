"""Machine-checkable contraction certificates for subgroup posets.

A certificate is a zig-zag of monotone self-maps, starting at the
identity and ending at a constant map, with adjacent maps pointwise
comparable and everything equivariant under a declared acting group.
A valid certificate proves the nerve of its domain poset contractible.
Builders construct the standard maps (normalizer in the argument,
product with a fixed subgroup, constants); all soundness conditions are
re-verified by the checker rather than trusted.
"""

from dataclasses import dataclass, field

from .errors import Error
from .groups import subgroup_from_elements
from .perms import conj, mul


def subgroup_product(A, B):
    """The product set A.B as a subgroup, or None when it is not one."""
    aels = A.elements()
    bels = B.elements()
    ab = {mul(a, b) for a in aels for b in bels}
    ba = {mul(b, a) for a in aels for b in bels}
    if ab != ba:
        return None
    return subgroup_from_elements(A.ambient, frozenset(ab))


def normalizer_in(Q, P):
    """N_Q(P): the elements of Q conjugating P to itself."""
    pels = P.elements()
    els = frozenset(
        q for q in Q.elements() if all(conj(t, q) in pels for t in P.gens)
    )
    return subgroup_from_elements(Q.ambient, els)


class PosetSelfMap:
    """Total assignment on a poset's indices, tagged by how it was built."""

    def __init__(self, poset, assignment, descriptor, defects=None):
        self.poset = poset
        self.assignment = list(assignment)
        self.descriptor = descriptor
        self.defects = list(defects or [])

    def is_identity(self):
        return all(a == i for i, a in enumerate(self.assignment))

    def is_constant(self):
        vals = {a for a in self.assignment if a is not None}
        return len(vals) <= 1 and None not in self.assignment


def identity_map(X):
    return PosetSelfMap(X, range(len(X.elements)), "identity")


def constant_map(X, target, origin=""):
    defects = []
    try:
        t = X.index_of(target)
    except Error:
        return PosetSelfMap(
            X, [None] * len(X.elements), "constant" + origin, ["constant target not in poset"]
        )
    return PosetSelfMap(X, [t] * len(X.elements), ("constant" + origin), defects)


def _locate(X, handle, descriptor, i, defects):
    if handle is None:
        defects.append(f"{descriptor}: image of element {i} is not a group")
        return None
    if not X.contains(handle):
        defects.append(f"{descriptor}: image of element {i} leaves the poset")
        return None
    return X.index_of(handle)


def product_with_fixed(X, W, origin=""):
    """Q maps to Q.W for a fixed subgroup W."""
    descriptor = "product-with-fixed-subgroup" + origin
    assignment = []
    defects = []
    for i, Q in enumerate(X.elements):
        assignment.append(_locate(X, subgroup_product(Q, W), descriptor, i, defects))
    return PosetSelfMap(X, assignment, descriptor, defects)


def normalizer_in_argument(X, P):
    """Q maps to N_Q(P)."""
    descriptor = "normalizer-in-argument"
    assignment = []
    defects = []
    for i, Q in enumerate(X.elements):
        assignment.append(_locate(X, normalizer_in(Q, P), descriptor, i, defects))
    return PosetSelfMap(X, assignment, descriptor, defects)


def normalizer_product(X, P, W, origin=""):
    """Q maps to N_Q(P).W."""
    descriptor = "normalizer-in-argument*product" + origin
    assignment = []
    defects = []
    for i, Q in enumerate(X.elements):
        prod = subgroup_product(normalizer_in(Q, P), W)
        assignment.append(_locate(X, prod, descriptor, i, defects))
    return PosetSelfMap(X, assignment, descriptor, defects)


@dataclass
class ContractionCertificate:
    poset: object
    maps: list
    relations: list  # entry t: '<=' means map t pointwise below map t+1
    acting: object = None
    name: str = ""


@dataclass
class CertificateVerdict:
    valid: bool
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid


_MAX_FAILURES = 12


def check_certificate(cert):
    """Verify every condition of a contraction certificate concretely."""
    X = cert.poset
    failures = []

    def fail(msg):
        if len(failures) < _MAX_FAILURES:
            failures.append(msg)

    n = len(X.elements)
    if n == 0:
        fail("empty domain cannot be contractible")
    if len(cert.maps) < 2:
        fail("certificate needs at least identity and constant maps")
    if len(cert.relations) != len(cert.maps) - 1:
        fail("one comparability direction needed between adjacent maps")
    for rel in cert.relations:
        if rel not in ("<=", ">="):
            fail(f"unknown relation {rel!r}")
    if cert.maps and not cert.maps[0].is_identity():
        fail("first map is not the identity")
    if cert.maps and n and not cert.maps[-1].is_constant():
        fail("last map is not constant")

    for m in cert.maps:
        if m.poset is not X:
            fail(f"{m.descriptor}: map defined on a different poset")
        for d in m.defects:
            fail(d)
        if any(a is None for a in m.assignment) or len(m.assignment) != n:
            fail(f"{m.descriptor}: map is not total")

    if failures:
        return CertificateVerdict(False, failures, {"elements": n})

    pairs = X.comparabilities()
    for m in cert.maps:
        for i, j in pairs:
            if not X.leq_idx(m.assignment[i], m.assignment[j]):
                fail(f"{m.descriptor}: not monotone at pair ({i},{j})")
                break

    for t, rel in enumerate(cert.relations):
        a, b = cert.maps[t], cert.maps[t + 1]
        for k in range(n):
            x, y = a.assignment[k], b.assignment[k]
            ok = X.leq_idx(x, y) if rel == "<=" else X.leq_idx(y, x)
            if not ok:
                fail(
                    f"step {t}: {a.descriptor} {rel} {b.descriptor} fails at element {k}"
                )
                break

    gens_checked = 0
    if cert.acting is not None:
        for g in cert.acting.gens:
            gens_checked += 1
            try:
                perm_of = [X.act_idx(i, g) for i in range(n)]
            except Error:
                fail("acting group does not preserve the poset")
                break
            for m in cert.maps:
                for i in range(n):
                    if m.assignment[perm_of[i]] != perm_of[m.assignment[i]]:
                        fail(f"{m.descriptor}: not equivariant at element {i}")
                        break

    stats = {
        "elements": n,
        "pairs": len(pairs),
        "maps": len(cert.maps),
        "generators": gens_checked,
    }
    return CertificateVerdict(not failures, failures, stats)


def cone_certificate(X, apex, acting=None, name="cone"):
    """Two-map certificate when the poset has a bound through the apex."""
    const = constant_map(X, apex)
    rel = "<="
    if not const.defects:
        t = const.assignment[0]
        if all(X.leq_idx(t, i) for i in range(len(X.elements))):
            rel = ">="
    return ContractionCertificate(
        X, [identity_map(X), const], [rel], acting=acting, name=name
    )


def central_product_certificate(X, Z, acting=None, name="mul-then-drop"):
    """Zig-zag P <= P.Z >= Z used over fixed points of a central element."""
    return ContractionCertificate(
        X,
        [identity_map(X), product_with_fixed(X, Z), constant_map(X, Z)],
        ["<=", ">="],
        acting=acting,
        name=name,
    )


def normalizer_contraction_certificate(X, P, W, final=None, acting=None, name="norm-prod"):
    """Zig-zag Q >= N_Q(P) <= N_Q(P).W >= final (final defaults to W)."""
    tgt = W if final is None else final
    return ContractionCertificate(
        X,
        [
            identity_map(X),
            normalizer_in_argument(X, P),
            normalizer_product(X, P, W),
            constant_map(X, tgt),
        ],
        [">=", "<=", ">="],
        acting=acting,
        name=name,
    )
