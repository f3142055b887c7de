# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.

Mirrors _purekernel: subgroup closure over packed permutations and a
dense int64 Smith reduction that raises OverflowError instead of giving
a wrong answer, so the caller can redo the matrix in big integers.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef int64_t I64_MAX = <int64_t> 0x7FFFFFFFFFFFFFFF
cdef int64_t I64_MIN = -I64_MAX - 1


def mul_close_packed(list gens, Py_ssize_t degree, Py_ssize_t cap):
    """BFS closure of packed permutations (bytes of images), identity first.

    Matches _purekernel.mul_close element for element, including order.
    Raises ValueError when the closure would exceed cap elements.
    """
    if degree <= 0 or not gens:
        return []
    cdef Py_ssize_t ng = len(gens)
    cdef bytes gblock = b"".join(gens)
    if len(gblock) != ng * degree:
        raise ValueError("generator length mismatch")
    cdef const uint8_t *gp = <const uint8_t *> PyBytes_AS_STRING(gblock)
    cdef uint8_t *scratch = <uint8_t *> malloc(degree)
    if scratch is NULL:
        raise MemoryError()
    cdef bytes ident = bytes(bytearray(range(degree)))
    out = [ident]
    seen = {ident}
    cdef Py_ssize_t start = 0, end = 1
    cdef Py_ssize_t idx, k, i
    cdef const uint8_t *xp
    cdef const uint8_t *g
    cdef bytes x, y
    try:
        while start < end:
            for idx in range(start, end):
                x = <bytes> out[idx]
                xp = <const uint8_t *> PyBytes_AS_STRING(x)
                for k in range(ng):
                    g = gp + k * degree
                    for i in range(degree):
                        scratch[i] = g[xp[i]]
                    y = PyBytes_FromStringAndSize(<char *> scratch, degree)
                    if y not in seen:
                        if len(seen) >= cap:
                            raise ValueError("closure cap exceeded")
                        seen.add(y)
                        out.append(y)
            start = end
            end = len(out)
    finally:
        free(scratch)
    return out


cdef int64_t _floordiv(int64_t x, int64_t y) except *:
    if x == I64_MIN and y == -1:
        raise OverflowError("int64 Smith reduction overflow")
    cdef int64_t q = x / y
    if x % y != 0 and (x < 0) != (y < 0):
        q -= 1
    return q


cdef inline uint64_t _mag(int64_t v):
    return <uint64_t> (-v) if v < 0 else <uint64_t> v


cdef int _addmul_row(int64_t *a, Py_ssize_t n, Py_ssize_t dst, Py_ssize_t src,
                     int64_t coeff) except -1:
    # row dst += coeff * row src, elementwise with overflow detection
    cdef Py_ssize_t j
    cdef i128 acc
    for j in range(n):
        acc = <i128> a[dst * n + j] + <i128> coeff * <i128> a[src * n + j]
        if acc > <i128> I64_MAX or acc < <i128> I64_MIN:
            raise OverflowError("int64 Smith reduction overflow")
        a[dst * n + j] = <int64_t> acc
    return 0


cdef int _addmul_col(int64_t *a, Py_ssize_t m, Py_ssize_t n, Py_ssize_t dst,
                     Py_ssize_t src, int64_t coeff) except -1:
    cdef Py_ssize_t i
    cdef i128 acc
    for i in range(m):
        acc = <i128> a[i * n + dst] + <i128> coeff * <i128> a[i * n + src]
        if acc > <i128> I64_MAX or acc < <i128> I64_MIN:
            raise OverflowError("int64 Smith reduction overflow")
        a[i * n + dst] = <int64_t> acc
    return 0


def dense_snf_i64(mat):
    """Smith diagonal of a dense integer matrix, restricted to int64.

    Same pivoting and reduction order as the pure implementation; any
    intermediate value outside int64 raises OverflowError.
    """
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t n = len(mat[0]) if m else 0
    if m == 0 or n == 0:
        return []
    cdef int64_t *a = <int64_t *> malloc(m * n * sizeof(int64_t))
    if a is NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, t, pr, pc
    cdef int64_t v, pivot, q, tmp
    cdef uint64_t best
    cdef bint have, dirty, fixed
    diag = []
    try:
        for i in range(m):
            row = mat[i]
            for j in range(n):
                a[i * n + j] = row[j]  # C conversion raises OverflowError past int64
        t = 0
        while t < m and t < n:
            have = False
            best = 0
            pr = pc = -1
            for i in range(t, m):
                for j in range(t, n):
                    v = a[i * n + j]
                    if v != 0 and (not have or _mag(v) < best):
                        have = True
                        best = _mag(v)
                        pr = i
                        pc = j
            if not have:
                break
            if pr != t:
                for j in range(n):
                    tmp = a[t * n + j]
                    a[t * n + j] = a[pr * n + j]
                    a[pr * n + j] = tmp
            if pc != t:
                for i in range(m):
                    tmp = a[i * n + t]
                    a[i * n + t] = a[i * n + pc]
                    a[i * n + pc] = tmp
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if a[i * n + t] != 0:
                        q = _floordiv(a[i * n + t], a[t * n + t])
                        if q != 0:
                            _addmul_row(a, n, i, t, -q)
                        if a[i * n + t] != 0:
                            for j in range(n):
                                tmp = a[t * n + j]
                                a[t * n + j] = a[i * n + j]
                                a[i * n + j] = tmp
                            dirty = True
                            break
                if dirty:
                    continue
                for j in range(t + 1, n):
                    if a[t * n + j] != 0:
                        q = _floordiv(a[t * n + j], a[t * n + t])
                        if q != 0:
                            _addmul_col(a, m, n, j, t, -q)
                        if a[t * n + j] != 0:
                            for i in range(m):
                                tmp = a[i * n + t]
                                a[i * n + t] = a[i * n + j]
                                a[i * n + j] = tmp
                            dirty = True
                            break
                if not dirty:
                    break
            pivot = a[t * n + t]
            fixed = True
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i * n + j] % pivot != 0:
                        _addmul_row(a, n, t, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if not fixed:
                continue
            if pivot == I64_MIN:
                raise OverflowError("int64 Smith reduction overflow")
            diag.append(-pivot if pivot < 0 else pivot)
            t += 1
    finally:
        free(a)
    return diag
