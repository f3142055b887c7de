"""Integral homology of order complexes via Smith normal form.

Boundary matrices are assembled sparsely with the standard alternating
sign orientation on sorted vertex tuples.  Reduced homology prepends the
augmentation map, so the empty complex has reduced Euler characteristic
-1 and a contractible complex is reduced-acyclic.  A free-face collapse
gives a sufficient (never necessary) contractibility certificate, and an
independent fraction/mod-p rank oracle cross-checks small complexes.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._kernel import snf_diagonal
from .errors import CrossValidationError, Error, ResourceLimitError


@dataclass
class ChainComplex:
    """Boundary matrices per dimension; matrix d maps d-chains down."""

    shapes: list  # (rows, cols) per dimension
    boundaries: list  # per dimension: list of {column: value} rows
    reduced: bool

    def check_composition(self):
        """Consecutive boundaries must compose to zero."""
        for d in range(len(self.boundaries) - 1):
            low = self.boundaries[d]
            high = self.boundaries[d + 1]
            cols_high = self.shapes[d + 1][1]
            # product row by row: (low . high)[i][k] = sum_j low[i][j] high[j][k]
            high_rows = high
            for i, row in enumerate(low):
                acc = {}
                for j, v in row.items():
                    for k, w in high_rows[j].items():
                        acc[k] = acc.get(k, 0) + v * w
                if any(val for val in acc.values()):
                    raise Error(f"boundary composition nonzero in dimension {d + 1}")
            if cols_high and len(high_rows) != self.shapes[d][1]:
                raise Error("chained boundary shapes disagree")
        return True


def chain_complex(K, reduced=True, limits=None, check=True):
    """Boundary matrices of a simplicial complex.

    With reduced=True an augmentation row (all ones on vertices) is
    prepended as dimension 0's boundary target.
    """
    K.check_face_closed()
    f = K.f_vector()
    if limits is not None:
        total = sum(a * b for a, b in zip(f, f[1:])) if len(f) > 1 else 0
        if total > limits.max_simplices * 40:
            raise ResourceLimitError("max_simplices", "boundary matrices too large")
    shapes = []
    boundaries = []
    n0 = f[0] if f else 0
    if reduced:
        shapes.append((1, n0))
        boundaries.append([{j: 1 for j in range(n0)}])
    else:
        # keep dimension indexing aligned: a 0 x n0 map below the vertices
        shapes.append((0, n0))
        boundaries.append([])
    for d in range(1, len(f)):
        lower_index = {s: i for i, s in enumerate(K.simplices[d - 1])}
        rows = [dict() for _ in range(f[d - 1])]
        for col, s in enumerate(K.simplices[d]):
            sign = 1
            for k in range(len(s)):
                face = s[:k] + s[k + 1 :]
                rows[lower_index[face]][col] = sign
                sign = -sign
        shapes.append((f[d - 1], f[d]))
        boundaries.append(rows)
    cc = ChainComplex(shapes, boundaries, reduced)
    if check:
        cc.check_composition()
    return cc


@dataclass
class HomologyProfile:
    """Free rank and torsion per dimension."""

    betti: list
    torsion: list  # per dimension: sorted list of coefficients > 1
    reduced: bool

    def is_zero(self):
        return all(b == 0 for b in self.betti) and all(not t for t in self.torsion)

    def lines(self):
        out = []
        for d, (b, t) in enumerate(zip(self.betti, self.torsion)):
            tor = (" [" + ", ".join(str(x) for x in t) + "]") if t else ""
            out.append(f"{d}: rank {b}{tor}")
        return out

    def __str__(self):
        return "; ".join(self.lines()) if self.betti else "0"

    def as_dict(self):
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "reduced": self.reduced,
        }


def homology(K, reduced=True, limits=None):
    """Smith normal form homology of the order complex K."""
    f = K.f_vector()
    if not f:
        return HomologyProfile([], [], reduced)
    cc = chain_complex(K, reduced=reduced, limits=limits, check=True)
    # ranks[d] and invariant factors of boundary d
    factors = [snf_diagonal(rows) for rows in cc.boundaries]
    ranks = [len(fs) for fs in factors]
    betti = []
    torsion = []
    top = len(f) - 1
    for d in range(top + 1):
        cols = f[d]
        rank_up = ranks[d + 1] if d + 1 <= top else 0
        betti.append(cols - ranks[d] - rank_up)
        tor = factors[d + 1] if d + 1 <= top else []
        torsion.append(sorted(x for x in tor if abs(x) > 1))
    if any(b < 0 for b in betti):
        raise Error("negative Betti rank: boundary ranks inconsistent")
    profile = HomologyProfile(betti, torsion, reduced)
    chi = sum((-1) ** d * b for d, b in enumerate(betti))
    if chi != reduced_euler(K, reduced=reduced):
        raise Error("Euler characteristic disagrees with Betti numbers")
    return profile


def reduced_euler(K, reduced=True):
    """Alternating f-vector sum, minus one in the reduced convention."""
    chi = sum((-1) ** d * n for d, n in enumerate(K.f_vector()))
    return chi - 1 if reduced else chi


@dataclass
class CollapseResult:
    collapsed_to_point: bool
    remaining: int
    steps: int


def collapse(K):
    """Greedy free-face collapse with deterministic ordering.

    collapsed_to_point=True certifies contractibility; False says
    nothing (collapsibility is sufficient, not necessary).
    """
    alive = [set(level) for level in K.simplices]
    steps = 0
    changed = True
    while changed:
        changed = False
        for d in range(len(alive) - 1):
            cofaces = {}
            for s in alive[d + 1]:
                for k in range(len(s)):
                    face = s[:k] + s[k + 1 :]
                    cofaces.setdefault(face, []).append(s)
            for face in sorted(alive[d]):
                over = cofaces.get(face, ())
                live_over = [s for s in over if s in alive[d + 1]]
                if len(live_over) == 1:
                    alive[d].discard(face)
                    alive[d + 1].discard(live_over[0])
                    steps += 1
                    changed = True
        # re-scan from the bottom after each sweep; deterministic order
    remaining = sum(len(level) for level in alive)
    point = remaining == 1 and len(alive) > 0 and len(alive[0]) == 1
    return CollapseResult(point, remaining, steps)


def _rank_over(rows_dense, field_div, nonzero):
    mat = [row[:] for row in rows_dense]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = None
        for r in range(row, len(mat)):
            if nonzero(mat[r][col]):
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = field_div(mat[row][col])
        mat[row] = [inv(x) for x in mat[row]]
        for r in range(len(mat)):
            if r != row and nonzero(mat[r][col]):
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == len(mat):
            break
    return rank


def _dense(rows, cols):
    out = [[0] * cols for _ in rows]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[i][j] = v
    return out


def rank_oracles(K, p, reduced=True):
    """Independent Betti numbers over the rationals and over F_p.

    Straight Gaussian elimination with Fractions and with mod-p
    arithmetic; shares nothing with the Smith normal form path beyond
    the boundary assembly.
    """
    cc = chain_complex(K, reduced=reduced, check=False)
    f = K.f_vector()
    if not f:
        return [], []
    rat_ranks = []
    mod_ranks = []
    inv_table = {a: pow(a, -1, p) for a in range(1, p)}
    for d, rows in enumerate(cc.boundaries):
        dense = _dense(rows, cc.shapes[d][1])
        rat_ranks.append(
            _rank_over(
                [[Fraction(v) for v in row] for row in dense],
                lambda pv: (lambda x, pv=pv: x / pv),
                lambda x: x != 0,
            )
        )
        modp = [[v % p for v in row] for row in dense]
        mod_ranks.append(
            _rank_over(
                modp,
                lambda pv: (lambda x, pv=pv: (x * inv_table[pv % p]) % p),
                lambda x: x % p != 0,
            )
        )
    top = len(f) - 1

    def betti_from(ranks):
        out = []
        for d in range(top + 1):
            rank_up = ranks[d + 1] if d + 1 <= top else 0
            out.append(f[d] - ranks[d] - rank_up)
        return out

    return betti_from(rat_ranks), betti_from(mod_ranks)


def cross_check_small(K, p, profile=None, cap=200):
    """Compare SNF homology with the elimination oracles on small complexes."""
    if K.num_simplices() > cap:
        return None
    prof = profile if profile is not None else homology(K)
    rat, modp = rank_oracles(K, p)
    if rat != prof.betti:
        raise CrossValidationError(
            f"rational rank oracle disagrees: {rat} vs {prof.betti}"
        )
    for d, b in enumerate(modp):
        t_here = sum(1 for x in prof.torsion[d] if x % p == 0)
        t_below = sum(1 for x in prof.torsion[d - 1] if x % p == 0) if d else 0
        if b != prof.betti[d] + t_here + t_below:
            raise CrossValidationError(
                f"mod-{p} rank oracle disagrees in dimension {d}"
            )
    return True
