"""Built-in permutation group library.

Families sym(n) and alt(n) up to degree 8, dihedral(n), the simple group
of order 168 acting on the 7 nonzero vectors of a 3-dimensional binary
space, and the two smallest Mathieu groups with their standard degree-11
and degree-12 generators.  Each entry documents the expected order,
which is verified when the group is built.  Larger sporadic groups are
recognized by name but refused: their collections are far beyond desk
scale, which is the point of the caps.
"""

import re
from dataclasses import dataclass

from .errors import Error, UnknownNameError
from .groups import build_group
from .perms import parse_gens


@dataclass(frozen=True)
class GroupLibraryEntry:
    name: str
    degree: int
    gens: str
    order: int
    note: str


def _sym_gens(n):
    if n <= 1:
        return ""
    if n == 2:
        return "(1,2)"
    cycle = "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"
    return "(1,2); " + cycle


def _alt_gens(n):
    if n <= 2:
        return ""
    if n == 3:
        return "(1,2,3)"
    if n % 2:
        cycle = "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"
    else:
        cycle = "(" + ",".join(str(i) for i in range(2, n + 1)) + ")"
    return "(1,2,3); " + cycle


def _dihedral_gens(n):
    cycle = "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"
    pairs = []
    for i in range(2, n // 2 + 2):
        j = n + 2 - i
        if i < j:
            pairs.append(f"({i},{j})")
    return cycle + "; " + "".join(pairs)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


_FIXED = {
    "gl32": GroupLibraryEntry(
        "gl32",
        7,
        "(1,4,2)(3,5,6); (2,3)(6,7)",
        168,
        "invertible 3x3 binary matrices on the 7 nonzero vectors",
    ),
    "m11": GroupLibraryEntry(
        "m11",
        11,
        "(1,2,3,4,5,6,7,8,9,10,11); (3,7,11,8)(4,10,5,6)",
        7920,
        "standard degree-11 generators",
    ),
    "m12": GroupLibraryEntry(
        "m12",
        12,
        "(1,2,3,4,5,6,7,8,9,10,11); (3,7,11,8)(4,10,5,6); "
        "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
        95040,
        "standard degree-12 generators extending the degree-11 pair",
    ),
}

_OUT_OF_SCOPE = {
    "m22",
    "m23",
    "m24",
    "j1",
    "j2",
    "j3",
    "mcl",
    "hs",
    "he",
    "ru",
    "suz",
    "ly",
    "co1",
    "co2",
    "co3",
    "fi22",
    "fi23",
    "hn",
    "th",
    "b",
    "m",
    "u62",
}

_MAX_FAMILY_DEGREE = 8
_MAX_DIHEDRAL = 64


def library_names():
    names = [f"sym({n})" for n in range(2, _MAX_FAMILY_DEGREE + 1)]
    names += [f"alt({n})" for n in range(3, _MAX_FAMILY_DEGREE + 1)]
    names += ["dihedral(n) for 3 <= n <= %d" % _MAX_DIHEDRAL]
    names += sorted(_FIXED)
    return names


_NAME_RE = re.compile(r"^([a-z]+)\(?(\d*)\)?$")


def library_lookup(name):
    """Entry for a named group; raises for unknown or out-of-scope names."""
    text = name.strip().lower().replace(" ", "")
    m = _NAME_RE.match(text)
    if not m:
        raise UnknownNameError(f"cannot parse group name {name!r}")
    base, num = m.group(1), m.group(2)
    if base + num in _FIXED:
        return _FIXED[base + num]
    if base in _FIXED and not num:
        return _FIXED[base]
    if base + num in _OUT_OF_SCOPE or base in _OUT_OF_SCOPE:
        raise UnknownNameError(
            f"{name!r} is recognized but out of scope at desk scale; "
            "its collections exceed the configured caps by design"
        )
    if base in ("sym", "s") and num:
        n = int(num)
        if not 2 <= n <= _MAX_FAMILY_DEGREE:
            raise UnknownNameError(
                f"sym({n}) is outside the supported range 2..{_MAX_FAMILY_DEGREE}"
            )
        return GroupLibraryEntry(
            f"sym({n})", n, _sym_gens(n), _factorial(n), "symmetric group"
        )
    if base in ("alt", "a") and num:
        n = int(num)
        if not 3 <= n <= _MAX_FAMILY_DEGREE:
            raise UnknownNameError(
                f"alt({n}) is outside the supported range 3..{_MAX_FAMILY_DEGREE}"
            )
        return GroupLibraryEntry(
            f"alt({n})", n, _alt_gens(n), _factorial(n) // 2, "alternating group"
        )
    if base in ("dihedral", "d") and num:
        n = int(num)
        if not 3 <= n <= _MAX_DIHEDRAL:
            raise UnknownNameError(
                f"dihedral({n}) is outside the supported range 3..{_MAX_DIHEDRAL}"
            )
        return GroupLibraryEntry(
            f"dihedral({n})", n, _dihedral_gens(n), 2 * n, "dihedral group"
        )
    raise UnknownNameError(
        f"unknown group {name!r}; known: " + ", ".join(library_names())
    )


def build_library_group(name, limits=None):
    """Build the named group and verify its documented order."""
    entry = library_lookup(name)
    gens = parse_gens(entry.gens, entry.degree) if entry.gens else []
    G = build_group(entry.degree, gens, limits=limits, name=entry.name)
    if G.order() != entry.order:
        raise Error(
            f"{entry.name}: generated order {G.order()} != documented {entry.order}"
        )
    return G
