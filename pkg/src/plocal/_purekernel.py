"""Pure-Python reference kernels.

Two inner loops dominate the package runtime: closing a small subgroup
under multiplication, and reducing integer boundary matrices to Smith
normal form.  This module is the always-available implementation; the
optional compiled module plocal._speedups shadows it when importable.
"""


def mul_close(gens, cap):
    """Close a generator list (image tuples) under products.

    Returns the full element list in BFS order starting at the identity.
    Raises ValueError when the closure would exceed cap elements.
    """
    if not gens:
        return []
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    out = [ident]
    queue = [ident]
    while queue:
        nxt = []
        for x in queue:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    if len(seen) >= cap:
                        raise ValueError("closure cap exceeded")
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
        queue = nxt
    return out


def _dense_snf_diagonal(mat):
    """Classic Smith reduction of a small dense integer matrix."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    diag = []
    t = 0
    while t < m and t < n:
        # pick the nonzero entry of least magnitude at or below (t, t)
        pr = pc = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pr, pc = i, j
        if best is None:
            break
        a[t], a[pr] = a[pr], a[t]
        for row in a:
            row[t], row[pc] = row[pc], row[t]
        while True:
            # clear column t by division; restart if a remainder survives
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if not dirty:
                break
        # enforce divisibility against the rest of the matrix
        pivot = a[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % pivot:
                    a[t] = [x + y for x, y in zip(a[t], a[i])]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        diag.append(abs(pivot))
        t += 1
    return diag


def snf_diagonal(rows, dense_fn=None):
    """Nonzero Smith normal form diagonal of an integer matrix.

    rows is a list of equal-length integer lists, or a list of sparse
    {column: value} dicts.  Returns the invariant factors in
    divisibility order; the count of entries is the rank.  Unit pivots
    are eliminated sparsely first, so the dense phase only sees whatever
    torsion-carrying core survives.  dense_fn lets the kernel selector
    swap in a compiled dense reducer.
    """
    rowdata = {}
    coldata = {}
    for i, row in enumerate(rows):
        items = row.items() if isinstance(row, dict) else enumerate(row)
        for j, v in items:
            if v:
                rowdata.setdefault(i, {})[j] = v
                coldata.setdefault(j, set()).add(i)
    ones = 0
    while True:
        pivot = None
        best = None
        for i in sorted(rowdata):
            for j, v in rowdata[i].items():
                if v == 1 or v == -1:
                    cost = (len(rowdata[i]) - 1) * (len(coldata[j]) - 1)
                    if best is None or cost < best:
                        best = cost
                        pivot = (i, j, v)
            if best == 0:
                break
        if pivot is None:
            break
        pi, pj, pv = pivot
        prow = rowdata[pi]
        for i in list(coldata[pj]):
            if i == pi:
                continue
            factor = rowdata[i][pj] * pv
            target = rowdata[i]
            for j, v in prow.items():
                w = target.get(j, 0) - factor * v
                if w:
                    target[j] = w
                    coldata.setdefault(j, set()).add(i)
                else:
                    if j in target:
                        del target[j]
                        coldata[j].discard(i)
            if not target:
                del rowdata[i]
        # row pi and column pj now meet only at the unit pivot
        for j in prow:
            coldata[j].discard(pi)
            if not coldata[j]:
                del coldata[j]
        del rowdata[pi]
        ones += 1
    if not rowdata:
        return [1] * ones
    live_rows = sorted(rowdata)
    live_cols = sorted({j for row in rowdata.values() for j in row})
    colpos = {j: k for k, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for k, i in enumerate(live_rows):
        for j, v in rowdata[i].items():
            dense[k][colpos[j]] = v
    rest = (dense_fn or _dense_snf_diagonal)(dense)
    return [1] * ones + [d for d in rest if d]
