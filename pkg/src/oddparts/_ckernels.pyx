# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled series kernels; same contract as ``oddparts._pykernels``.

Coefficients stay Python ints (they outgrow 64 bits quickly), so the gain
comes from running the index loops in C.  ``convolve`` and ``invert`` take a
128-bit fast path while every value fits in an int64 and fall back to object
arithmetic on the first overflow.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_SET_ITEM
from cpython.ref cimport Py_INCREF, Py_DECREF
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef long long int128 "__int128"

BACKEND = "cython"

# Fast-path operands are bounded by 2**52: products stay below 2**104, so up
# to 2**22 of them sum exactly inside a 128-bit accumulator.
cdef int64_t LIMIT = 1LL << 52
cdef Py_ssize_t MAX_FAST_N = 1 << 22


cdef inline void _set(list c, Py_ssize_t k, object v):
    cdef object old = <object>PyList_GET_ITEM(c, k)
    Py_INCREF(v)
    PyList_SET_ITEM(c, k, v)
    Py_DECREF(old)


def mul_binomial(list c, long sign, Py_ssize_t e):
    cdef Py_ssize_t n = len(c), k
    if sign == 0:
        return
    if sign > 0:
        for k in range(n - 1, e - 1, -1):
            _set(c, k, <object>PyList_GET_ITEM(c, k) - <object>PyList_GET_ITEM(c, k - e))
    else:
        for k in range(n - 1, e - 1, -1):
            _set(c, k, <object>PyList_GET_ITEM(c, k) + <object>PyList_GET_ITEM(c, k - e))


def div_binomial(list c, long sign, Py_ssize_t e):
    cdef Py_ssize_t n = len(c), k
    if sign == 0:
        return
    if sign > 0:
        for k in range(e, n):
            _set(c, k, <object>PyList_GET_ITEM(c, k) + <object>PyList_GET_ITEM(c, k - e))
    else:
        for k in range(e, n):
            _set(c, k, <object>PyList_GET_ITEM(c, k) - <object>PyList_GET_ITEM(c, k - e))


cdef int _to_i64(list src, Py_ssize_t n, int64_t *dst):
    """Copy the first n entries of src into dst; 0 if any exceeds LIMIT."""
    cdef Py_ssize_t i, m = len(src)
    cdef object v
    for i in range(n):
        if i >= m:
            dst[i] = 0
            continue
        v = <object>PyList_GET_ITEM(src, i)
        if v > LIMIT or v < -LIMIT:
            return 0
        dst[i] = <int64_t>v
    return 1


cdef list _convolve_obj(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t i, j, na = min(len(a), n), nb = min(len(b), n)
    cdef list out = [0] * n
    cdef object x
    for i in range(na):
        x = <object>PyList_GET_ITEM(a, i)
        if not x:
            continue
        for j in range(min(nb, n - i)):
            _set(out, i + j, <object>PyList_GET_ITEM(out, i + j) + x * <object>PyList_GET_ITEM(b, j))
    return out


def convolve(list a, list b, Py_ssize_t n):
    cdef int64_t *xa
    cdef int64_t *xb
    cdef int128 acc
    cdef Py_ssize_t i, j
    cdef list out
    cdef bint ok = 1
    if n <= 0:
        return []
    if n > MAX_FAST_N:
        return _convolve_obj(a, b, n)
    xa = <int64_t *>malloc(n * sizeof(int64_t))
    xb = <int64_t *>malloc(n * sizeof(int64_t))
    try:
        if not (_to_i64(a, n, xa) and _to_i64(b, n, xb)):
            return _convolve_obj(a, b, n)
        out = [0] * n
        for i in range(n):
            acc = 0
            for j in range(i + 1):
                acc += <int128>xa[j] * xb[i - j]
            if acc > LIMIT or acc < -LIMIT:
                ok = 0
                break
            _set(out, i, <int64_t>acc)
        if not ok:
            return _convolve_obj(a, b, n)
        return out
    finally:
        free(xa)
        free(xb)


cdef list _invert_obj(list a, Py_ssize_t n):
    cdef object a0 = <object>PyList_GET_ITEM(a, 0)
    cdef list support = [j for j in range(1, min(len(a), n)) if a[j]]
    cdef list t = [0] * n
    cdef Py_ssize_t k, j, s, ns = len(support)
    cdef object acc
    _set(t, 0, a0)
    for k in range(1, n):
        acc = 0
        for s in range(ns):
            j = <Py_ssize_t>support[s]
            if j > k:
                break
            acc = acc + <object>PyList_GET_ITEM(a, j) * <object>PyList_GET_ITEM(t, k - j)
        _set(t, k, -a0 * acc)
    return t


def invert(list a, Py_ssize_t n):
    cdef object a0 = a[0]
    cdef int64_t *xa
    cdef int64_t *xt
    cdef Py_ssize_t *sup
    cdef Py_ssize_t k, j, s, ns = 0
    cdef int128 acc
    cdef int64_t u
    cdef list out
    if a0 != 1 and a0 != -1:
        raise ZeroDivisionError("constant term %r is not a unit" % (a0,))
    if n <= 0:
        return []
    if n > MAX_FAST_N:
        return _invert_obj(a, n)
    u = a0
    xa = <int64_t *>malloc(n * sizeof(int64_t))
    xt = <int64_t *>malloc(n * sizeof(int64_t))
    sup = <Py_ssize_t *>malloc(n * sizeof(Py_ssize_t))
    try:
        if not _to_i64(a, n, xa):
            return _invert_obj(a, n)
        for j in range(1, n):
            if xa[j] != 0:
                sup[ns] = j
                ns += 1
        xt[0] = u
        for k in range(1, n):
            acc = 0
            for s in range(ns):
                j = sup[s]
                if j > k:
                    break
                acc += <int128>xa[j] * xt[k - j]
            acc = -u * acc
            if acc > LIMIT or acc < -LIMIT:
                return _invert_obj(a, n)
            xt[k] = <int64_t>acc
        out = [0] * n
        for k in range(n):
            _set(out, k, xt[k])
        return out
    finally:
        free(xa)
        free(xt)
        free(sup)


def add_shifted(list dst, list src, Py_ssize_t offset, long sign):
    cdef Py_ssize_t k, n = min(len(src), len(dst) - offset)
    cdef object v
    for k in range(n):
        v = <object>PyList_GET_ITEM(src, k)
        if not v:
            continue
        if sign > 0:
            _set(dst, offset + k, <object>PyList_GET_ITEM(dst, offset + k) + v)
        else:
            _set(dst, offset + k, <object>PyList_GET_ITEM(dst, offset + k) - v)
