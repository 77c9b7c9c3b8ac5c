# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in `_pykernels`.

Both functions fall back to the Python implementation when the inputs do
not fit the machine-integer fast path.
"""
from libc.stdlib cimport malloc, free

from lattcert.kernels import _pykernels


def roots_mod_p(coeffs, long long p):
    cdef Py_ssize_t n = len(coeffs), i
    cdef long long r, acc
    cdef long long *c
    if p >= 3037000499:
        return _pykernels.roots_mod_p(coeffs, p)
    c = <long long *> malloc(n * sizeof(long long))
    if c == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            c[i] = coeffs[n - 1 - i]
        out = []
        for r in range(p):
            acc = 0
            for i in range(n):
                acc = (acc * r + c[i]) % p
            if acc == 0:
                out.append(r)
        return out
    finally:
        free(c)


cdef long long _bareiss(long long *a, int d) nogil:
    cdef int k, i, j
    cdef long long prev = 1, akk, aik, tmp
    cdef int sign = 1
    for k in range(d - 1):
        if a[k * d + k] == 0:
            for i in range(k + 1, d):
                if a[i * d + k] != 0:
                    for j in range(d):
                        tmp = a[k * d + j]
                        a[k * d + j] = a[i * d + j]
                        a[i * d + j] = tmp
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k * d + k]
        for i in range(k + 1, d):
            aik = a[i * d + k]
            for j in range(k + 1, d):
                a[i * d + j] = (a[i * d + j] * akk - aik * a[k * d + j]) // prev
        prev = akk
    return sign * a[d * d - 1]


def _fits_int64(mats, int d, long long bound):
    # Hadamard bound on every minor, squared, must stay below 2**62.
    entry = 0
    for m in mats:
        entry += max(abs(x) for x in m)
    entry *= bound
    if entry == 0:
        return True
    hadamard_sq = (d * entry * entry) ** d
    return hadamard_sq < 2 ** 62


def det_box_search(mats, int d, long long bound, target):
    cdef int k = len(mats), size = d * d, i, j
    cdef long long *base
    cdef long long *work
    cdef long long *coef
    cdef long long tgt
    if k == 0 or not _fits_int64(mats, d, bound) or abs(target) >= 2 ** 62:
        return _pykernels.det_box_search(mats, d, bound, target)
    tgt = target
    base = <long long *> malloc(k * size * sizeof(long long))
    work = <long long *> malloc(size * sizeof(long long))
    coef = <long long *> malloc(k * sizeof(long long))
    if base == NULL or work == NULL or coef == NULL:
        free(base); free(work); free(coef)
        raise MemoryError()
    try:
        for i in range(k):
            for j in range(size):
                base[i * size + j] = mats[i][j]
            coef[i] = -bound
        out = []
        while True:
            for j in range(size):
                work[j] = 0
            for i in range(k):
                if coef[i] != 0:
                    for j in range(size):
                        work[j] += coef[i] * base[i * size + j]
            if _bareiss(work, d) == tgt:
                out.append(tuple([coef[i] for i in range(k)]))
            i = k - 1
            while i >= 0 and coef[i] == bound:
                coef[i] = -bound
                i -= 1
            if i < 0:
                return out
            coef[i] += 1
    finally:
        free(base); free(work); free(coef)
