# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for dense polynomial arithmetic on machine integers.

Each entry point returns None whenever the inputs (or any intermediate
value) would leave the signed 64-bit window; the dispatcher in
qaltsum._kernels then falls back to the pure-Python lane, which works on
Python's arbitrary-precision integers.
"""

from cpython.exc cimport PyErr_Occurred
from libc.stdlib cimport calloc, free, malloc

cdef extern from "Python.h":
    long long PyLong_AsLongLongAndOverflow(object, int *)

ctypedef long long i64

cdef extern from *:
    ctypedef long long i128 "__int128_t"

cdef i64 I64_MAX = 0x7FFFFFFFFFFFFFFF
cdef i64 I64_MIN = <i64>(-I64_MAX - 1)

# Upper bound (exclusive) for |coefficient| so that abs() is always safe.
_LIMIT = 2 ** 63


cdef i64 *_load(seq, Py_ssize_t n, i64 *maxabs_out) except? NULL:
    """Copy a sequence of Python ints into a fresh i64 array.

    Returns NULL (with no exception set) when any value does not fit;
    the caller treats that as "fall back to pure Python".
    """
    cdef i64 *buf = <i64 *>malloc(n * sizeof(i64))
    cdef Py_ssize_t i
    cdef int overflow
    cdef i64 v, m = 0
    if buf == NULL:
        return NULL
    for i in range(n):
        v = PyLong_AsLongLongAndOverflow(seq[i], &overflow)
        if v == -1 and PyErr_Occurred() != NULL:
            free(buf)
            return NULL  # non-integer entry; let Python lane raise
        if overflow or v == I64_MIN:
            free(buf)
            return NULL
        buf[i] = v
        if v < 0:
            v = -v
        if v > m:
            m = v
    maxabs_out[0] = m
    return buf


def mul_int64(a, b):
    """Schoolbook product when the result provably fits in 64 bits.

    Returns the coefficient list, or None when the conservative bound
    max|a| * max|b| * min(len) does not fit.
    """
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, nout
    cdef i64 ma = 0, mb = 0
    cdef i64 *abuf
    cdef i64 *bbuf
    cdef i64 *out
    cdef i64 ai
    if na == 0 or nb == 0:
        return []
    abuf = _load(a, na, &ma)
    if abuf == NULL:
        return None
    bbuf = _load(b, nb, &mb)
    if bbuf == NULL:
        free(abuf)
        return None
    if ma and mb and int(ma) * int(mb) * min(na, nb) >= _LIMIT:
        free(abuf)
        free(bbuf)
        return None
    nout = na + nb - 1
    out = <i64 *>calloc(nout, sizeof(i64))
    if out == NULL:
        free(abuf)
        free(bbuf)
        return None
    for i in range(na):
        ai = abuf[i]
        if ai == 0:
            continue
        for j in range(nb):
            out[i + j] += ai * bbuf[j]
    res = [0] * nout
    for i in range(nout):
        res[i] = out[i]
    free(abuf)
    free(bbuf)
    free(out)
    return res


cdef _as_list(i64 *buf, Py_ssize_t n):
    res = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        res[i] = buf[i]
    return res


cdef _trimmed(i64 *buf, Py_ssize_t n):
    while n and buf[n - 1] == 0:
        n -= 1
    return _as_list(buf, n)


def divexact_int64(a, b):
    """Exactness-checking long division; same contract as the pure lane.

    Returns (quotient | None, remainder, fail_step), or None when any
    input or intermediate value leaves the 64-bit window.
    """
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, nq
    cdef i64 ma = 0, mb = 0
    cdef i64 *rem
    cdef i64 *bbuf
    cdef i64 *quot
    cdef i64 lead, c, qc
    cdef i128 t
    rem = _load(a, na, &ma)
    if rem == NULL:
        return None
    bbuf = _load(b, nb, &mb)
    if bbuf == NULL:
        free(rem)
        return None
    lead = bbuf[nb - 1]
    nq = na - nb + 1
    quot = <i64 *>calloc(nq, sizeof(i64))
    if quot == NULL:
        free(rem)
        free(bbuf)
        return None
    for i in range(nq - 1, -1, -1):
        c = rem[i + nb - 1]
        if c == 0:
            continue
        if c % lead != 0:
            out = (None, _trimmed(rem, i + nb), <object>i)
            free(rem)
            free(bbuf)
            free(quot)
            return out
        qc = c // lead
        quot[i] = qc
        for j in range(nb - 1):
            if bbuf[j] == 0:
                continue
            t = <i128>rem[i + j] - <i128>qc * <i128>bbuf[j]
            if t > <i128>I64_MAX or t < <i128>I64_MIN:
                free(rem)
                free(bbuf)
                free(quot)
                return None
            rem[i + j] = <i64>t
        rem[i + nb - 1] = 0
    out = (_as_list(quot, nq), _trimmed(rem, nb - 1), -1)
    free(rem)
    free(bbuf)
    free(quot)
    return out
