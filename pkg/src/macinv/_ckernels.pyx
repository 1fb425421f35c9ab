# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination kernels.

Same contract as ``macinv._pykernels``. Arithmetic runs on int64 with
overflow checks; any overflow reruns the step on Python ints.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free
from cpython.long cimport PyLong_AsLongLongAndOverflow, PyLong_FromLongLong

from macinv import _pykernels


cdef extern from * nogil:
    bint mul_ovf "__builtin_mul_overflow"(int64_t a, int64_t b, int64_t *r)
    bint sub_ovf "__builtin_sub_overflow"(int64_t a, int64_t b, int64_t *r)


cdef int64_t INT64_MIN = -9223372036854775807 - 1


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _load(list src, int64_t *dst, Py_ssize_t n) except -1:
    # 1 on success, 0 if some entry does not fit in int64
    cdef Py_ssize_t j
    cdef int ovf
    cdef long long x
    for j in range(n):
        x = PyLong_AsLongLongAndOverflow(src[j], &ovf)
        if ovf or x == INT64_MIN:
            return 0
        dst[j] = x
    return 1


cdef list _store(int64_t *src, Py_ssize_t n):
    cdef Py_ssize_t j
    cdef list out = [None] * n
    for j in range(n):
        out[j] = PyLong_FromLongLong(src[j])
    return out


cdef int _fast_combine(int64_t p, int64_t *vec, int64_t e, int64_t *row,
                       Py_ssize_t n) noexcept nogil:
    # vec <- primitive(p*vec - e*row); 0 on overflow (vec then undefined)
    cdef Py_ssize_t j
    cdef int64_t a, b, g = 0
    for j in range(n):
        if mul_ovf(p, vec[j], &a):
            return 0
        if row[j]:
            if mul_ovf(e, row[j], &b):
                return 0
            if sub_ovf(a, b, &a):
                return 0
        if a == INT64_MIN:
            return 0
        vec[j] = a
        if a and g != 1:
            g = _gcd(g, a)
    if g > 1:
        for j in range(n):
            vec[j] = vec[j] // g
    return 1


cdef void _make_primitive(int64_t *vec, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t j
    cdef int64_t g = 0
    for j in range(n):
        if vec[j]:
            g = _gcd(g, vec[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            vec[j] = vec[j] // g


def combine(p, list vec, e, list row):
    """Return the primitive part of ``p*vec - e*row``."""
    cdef Py_ssize_t n = len(vec)
    cdef int ovf1, ovf2
    cdef long long cp = PyLong_AsLongLongAndOverflow(p, &ovf1)
    cdef long long ce = PyLong_AsLongLongAndOverflow(e, &ovf2)
    cdef int64_t *v
    cdef int64_t *r
    cdef list out
    if ovf1 or ovf2 or n == 0:
        return _pykernels.combine(p, vec, e, row)
    v = <int64_t *> malloc(2 * n * sizeof(int64_t))
    if v == NULL:
        raise MemoryError()
    r = v + n
    try:
        if _load(vec, v, n) and _load(row, r, n) and _fast_combine(cp, v, ce, r, n):
            return _store(v, n)
    finally:
        free(v)
    return _pykernels.combine(p, vec, e, row)


def reduce_vector(list basis, list pivots, vec):
    """Reduce ``vec`` against a fully reduced basis; returns a new list."""
    cdef list v = list(vec)
    cdef Py_ssize_t n = len(v)
    cdef Py_ssize_t k, nb = len(basis), pc
    cdef int64_t *buf
    cdef int64_t *rowbuf
    cdef int ovf
    cdef long long piv
    cdef list row
    cdef bint ok
    if n == 0:
        return v
    buf = <int64_t *> malloc(2 * n * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    rowbuf = buf + n
    try:
        ok = _load(v, buf, n)
        k = 0
        while ok and k < nb:
            pc = pivots[k]
            if buf[pc]:
                row = basis[k]
                piv = PyLong_AsLongLongAndOverflow(row[pc], &ovf)
                if ovf or not _load(row, rowbuf, n):
                    ok = False
                    break
                if not _fast_combine(piv, buf, buf[pc], rowbuf, n):
                    ok = False
                    break
            k += 1
        if ok:
            _make_primitive(buf, n)
            return _store(buf, n)
    finally:
        free(buf)
    return _pykernels.reduce_vector(basis, pivots, v)


def insert_vector(list basis, list pivots, vec):
    """Add ``vec`` to the span held in ``basis``/``pivots`` (in place).

    Returns the new pivot column, or -1 if ``vec`` was already in the span.
    """
    cdef list v = reduce_vector(basis, pivots, vec)
    cdef Py_ssize_t j, k, piv = -1, pos
    cdef list row
    for j in range(len(v)):
        if v[j]:
            piv = j
            break
    if piv < 0:
        return -1
    if v[piv] < 0:
        v = [-a for a in v]
    p = v[piv]
    for k in range(len(basis)):
        row = basis[k]
        e = row[piv]
        if e:
            basis[k] = combine(p, row, e, v)
    pos = 0
    while pos < len(pivots) and pivots[pos] < piv:
        pos += 1
    basis.insert(pos, v)
    pivots.insert(pos, piv)
    return piv
