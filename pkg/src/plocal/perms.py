"""Permutations of {0..n-1} stored as image tuples.

A permutation of degree n is a tuple p with p[i] = image of point i.
Products compose left to right: mul(a, b) applies a first, so that
point images satisfy x^(a*b) = (x^a)^b.  Text form uses 1-based
disjoint cycles like "(1,2)(3,4)"; the identity is "()".
"""

import re
from math import lcm

from .errors import ParseError, DomainError


def identity(degree):
    return tuple(range(degree))


def mul(a, b):
    """Product of a then b."""
    return tuple(b[x] for x in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(p, g):
    """Conjugate g^-1 * p * g."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return tuple(out)


def power(p, k):
    n = len(p)
    if k < 0:
        p, k = inv(p), -k
    acc = identity(n)
    while k:
        if k & 1:
            acc = mul(acc, p)
        p = mul(p, p)
        k >>= 1
    return acc


def is_identity(p):
    return all(p[i] == i for i in range(len(p)))


def moved_points(p):
    return [i for i in range(len(p)) if p[i] != i]


def min_moved_point(p):
    for i in range(len(p)):
        if p[i] != i:
            return i
    return None


def cycles(p):
    """Nontrivial cycles of p, each rotated to start at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p):
    """Sorted (descending) nontrivial cycle lengths."""
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p):
    lens = [len(c) for c in cycles(p)]
    return lcm(*lens) if lens else 1


_CYCLE_RE = re.compile(r"\(([0-9,\s]*)\)")


def parse_perm(text, degree):
    """Parse 1-based disjoint cycle text into an image tuple."""
    s = text.strip()
    if not s:
        raise ParseError("empty permutation text")
    stripped = _CYCLE_RE.sub("", s)
    if stripped.strip():
        raise ParseError(f"unexpected text in permutation: {text!r}")
    images = list(range(degree))
    used = set()
    for m in _CYCLE_RE.finditer(s):
        body = m.group(1).strip()
        if not body:
            continue
        parts = [part.strip() for part in body.split(",")]
        try:
            pts = [int(part) for part in parts]
        except ValueError:
            raise ParseError(f"bad cycle {m.group(0)!r}")
        for x in pts:
            if not 1 <= x <= degree:
                raise ParseError(f"point {x} outside 1..{degree}")
            if x in used:
                raise ParseError(f"point {x} repeated; cycles must be disjoint")
            used.add(x)
        if len(pts) < 2:
            continue
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def format_perm(p):
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


def parse_gens(text, degree):
    """Parse ';'-separated generator list in cycle notation."""
    parts = [part for part in (chunk.strip() for chunk in text.split(";")) if part]
    if not parts:
        raise ParseError("no generators given")
    return [parse_perm(part, degree) for part in parts]


def as_perm(obj, degree):
    """Coerce cycle text or an image tuple to a validated image tuple."""
    if isinstance(obj, str):
        return parse_perm(obj, degree)
    p = tuple(obj)
    if len(p) != degree:
        raise DomainError(f"degree mismatch: expected {degree}, got {len(p)}")
    if sorted(p) != list(range(degree)):
        raise ParseError(f"not a permutation of 0..{degree - 1}: {p!r}")
    return p


def pack_perm(p):
    """Deterministic byte encoding, 1 byte per point below degree 256."""
    if len(p) <= 256:
        return bytes(p)
    out = bytearray()
    for x in p:
        out += x.to_bytes(3, "big")
    return bytes(out)
