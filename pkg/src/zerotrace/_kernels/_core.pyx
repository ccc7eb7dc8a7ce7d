# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitmask kernels; semantics match _pure exactly.

Masks are uint64, so ground sets are hard-capped at 64 points here.
The wrapper package enforces that before dispatching.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc, qsort

ctypedef unsigned long long u64


cdef int _cmp_u64(const void* a, const void* b) noexcept nogil:
    cdef u64 x = (<const u64*> a)[0]
    cdef u64 y = (<const u64*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


cdef void _sort_u64(u64* a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef u64 key
    if n > 48:
        qsort(a, n, sizeof(u64), _cmp_u64)
        return
    for i in range(1, n):
        key = a[i]
        j = i - 1
        while j >= 0 and a[j] > key:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = key


cdef Py_ssize_t _distinct_masked(const u64* masks, Py_ssize_t m, u64 sub, u64* buf) noexcept nogil:
    cdef Py_ssize_t i, count
    for i in range(m):
        buf[i] = masks[i] & sub
    _sort_u64(buf, m)
    count = 0
    for i in range(m):
        if i == 0 or buf[i] != buf[i - 1]:
            count += 1
    return count


cdef u64* _to_array(masks) except NULL:
    cdef Py_ssize_t m = len(masks)
    cdef u64* arr = <u64*> malloc(m * sizeof(u64) if m > 0 else sizeof(u64))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(m):
        arr[i] = <u64> masks[i]
    return arr


def count_restrictions(masks, submask):
    cdef Py_ssize_t m = len(masks)
    if m == 0:
        return 0
    cdef u64* arr = _to_array(masks)
    cdef u64* buf = <u64*> malloc(m * sizeof(u64))
    if buf == NULL:
        free(arr)
        raise MemoryError()
    cdef u64 sub = <u64> submask
    cdef Py_ssize_t count = _distinct_masked(arr, m, sub, buf)
    free(buf)
    free(arr)
    return count


cdef bint _any_shattered(const u64* masks, Py_ssize_t m, int n_points, int k, u64* buf) noexcept nogil:
    # Gosper's hack enumerates all k-subsets of n_points bits.
    cdef u64 sub, last, c, r
    cdef Py_ssize_t target = (<Py_ssize_t> 1) << k
    if k == 0:
        return m > 0
    sub = ((<u64> 1) << k) - 1
    last = sub << (n_points - k)
    while True:
        if _distinct_masked(masks, m, sub, buf) == target:
            return True
        if sub == last:
            break
        c = sub & (~sub + 1)
        r = sub + c
        sub = (((r ^ sub) >> 2) / c) | r
    return False


def vcdim(masks, n_points):
    cdef Py_ssize_t m = len(masks)
    if m == 0:
        raise ValueError("vcdim kernel requires a nonempty family")
    cdef u64* arr = _to_array(masks)
    cdef u64* buf = <u64*> malloc(m * sizeof(u64))
    if buf == NULL:
        free(arr)
        raise MemoryError()
    cdef int n = n_points
    cdef int kmax = n
    cdef int bits = 0
    cdef Py_ssize_t t = m
    while t > 1:
        t >>= 1
        bits += 1
    if bits < kmax:
        kmax = bits
    cdef int k, best = 0
    for k in range(1, kmax + 1):
        if not _any_shattered(arr, m, n, k, buf):
            break
        best = k
    free(buf)
    free(arr)
    return best


def pi(masks, n_points, k):
    cdef Py_ssize_t m = len(masks)
    if m == 0:
        return 0
    cdef u64* arr = _to_array(masks)
    cdef u64* buf = <u64*> malloc(m * sizeof(u64))
    if buf == NULL:
        free(arr)
        raise MemoryError()
    cdef int n = n_points
    cdef int kk = k
    cdef u64 sub, last, c, r
    cdef Py_ssize_t count, best = 0
    if kk == 0:
        best = 1
    else:
        sub = ((<u64> 1) << kk) - 1
        last = sub << (n - kk)
        while True:
            count = _distinct_masked(arr, m, sub, buf)
            if count > best:
                best = count
            if sub == last:
                break
            c = sub & (~sub + 1)
            r = sub + c
            sub = (((r ^ sub) >> 2) / c) | r
    free(buf)
    free(arr)
    return best


cdef bytes _key(const u64* fam, Py_ssize_t m):
    return PyBytes_FromStringAndSize(<const char*> fam, m * sizeof(u64))


cdef int _ldim_rec(const u64* fam, Py_ssize_t m, int n_points, dict memo) except -2:
    cdef bytes key = _key(fam, m)
    cached = memo.get(key)
    if cached is not None:
        return cached
    cdef int best = 0, cap = 0, x, a, b, v
    cdef Py_ssize_t t = m, i, np_, nn
    cdef u64 bit
    cdef u64* pos
    cdef u64* neg
    while t > 1:
        t >>= 1
        cap += 1
    if m > 1:
        pos = <u64*> malloc(m * sizeof(u64))
        neg = <u64*> malloc(m * sizeof(u64))
        if pos == NULL or neg == NULL:
            if pos != NULL:
                free(pos)
            if neg != NULL:
                free(neg)
            raise MemoryError()
        for x in range(n_points):
            bit = (<u64> 1) << x
            np_ = 0
            nn = 0
            for i in range(m):
                if fam[i] & bit:
                    pos[np_] = fam[i]
                    np_ += 1
                else:
                    neg[nn] = fam[i]
                    nn += 1
            if np_ == 0 or nn == 0:
                continue
            a = _ldim_rec(neg, nn, n_points, memo)
            b = _ldim_rec(pos, np_, n_points, memo)
            v = 1 + (a if a < b else b)
            if v > best:
                best = v
                if best == cap:
                    break
        free(pos)
        free(neg)
    memo[key] = best
    return best


def ldim(masks, n_points):
    if len(masks) == 0:
        raise ValueError("ldim kernel requires a nonempty family")
    ordered = sorted(masks)
    cdef u64* arr = _to_array(ordered)
    cdef dict memo = {}
    try:
        return _ldim_rec(arr, len(ordered), n_points, memo)
    finally:
        free(arr)


cdef long long _rho_rec(const u64* fam, Py_ssize_t m, int n_points, int depth, dict memo) except -2:
    if m == 0:
        return 0
    if depth == 0:
        return 1
    if m == 1 and n_points > 0:
        return 1
    cdef tuple key = (_key(fam, m), depth)
    cached = memo.get(key)
    if cached is not None:
        return cached
    cdef long long best = 0, v
    cdef int x
    cdef Py_ssize_t i, np_, nn
    cdef u64 bit
    cdef u64* pos = <u64*> malloc(m * sizeof(u64))
    cdef u64* neg = <u64*> malloc(m * sizeof(u64))
    if pos == NULL or neg == NULL:
        if pos != NULL:
            free(pos)
        if neg != NULL:
            free(neg)
        raise MemoryError()
    for x in range(n_points):
        bit = (<u64> 1) << x
        np_ = 0
        nn = 0
        for i in range(m):
            if fam[i] & bit:
                pos[np_] = fam[i]
                np_ += 1
            else:
                neg[nn] = fam[i]
                nn += 1
        v = _rho_rec(neg, nn, n_points, depth - 1, memo) + _rho_rec(pos, np_, n_points, depth - 1, memo)
        if v > best:
            best = v
    free(pos)
    free(neg)
    memo[key] = best
    return best


def rho(masks, n_points, depth):
    ordered = sorted(masks)
    cdef u64* arr = _to_array(ordered)
    cdef dict memo = {}
    try:
        return _rho_rec(arr, len(ordered), n_points, depth, memo)
    finally:
        free(arr)
