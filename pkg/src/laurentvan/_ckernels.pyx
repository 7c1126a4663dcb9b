# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of ``_pykernels`` in 64-bit integers.

Callers (``kernels.py``) guarantee by an a-priori bound that no value
overflows; nothing here checks.
"""
from libc.stdlib cimport malloc, free


cdef long long _bareiss(long long* a, int n) nogil:
    cdef int k, i, j, p
    cdef long long prev = 1, akk, aik, tmp
    cdef int sign = 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            p = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    p = i
                    break
            if p < 0:
                return 0
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = tmp
            sign = -sign
        akk = a[k * n + k]
        for i in range(k + 1, n):
            aik = a[i * n + k]
            for j in range(k + 1, n):
                a[i * n + j] = (akk * a[i * n + j] - aik * a[k * n + j]) // prev
        prev = akk
    return sign * a[(n - 1) * n + (n - 1)]


def int_det(list m):
    cdef int n = len(m)
    cdef int i, j
    cdef long long r
    if n == 0:
        return 1
    cdef long long* a = <long long*> malloc(n * n * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            row = m[i]
            for j in range(n):
                a[i * n + j] = row[j]
        r = _bareiss(a, n)
    finally:
        free(a)
    return r


def pairings(rows, v):
    cdef int d = len(v)
    cdef int j
    cdef long long s
    cdef long long vv[64]
    if d > 64:
        raise ValueError("dimension too large for the compiled kernel")
    for j in range(d):
        vv[j] = v[j]
    out = []
    for r in rows:
        s = 0
        for j in range(d):
            s += <long long> r[j] * vv[j]
        out.append(s)
    return out


def simplex_volumes(points, simplices):
    cdef int npts = len(points)
    cdef int d = len(simplices[0]) - 1
    cdef int i, j, c, idx0, idx
    cdef long long total = 0, det
    cdef long long* pts = <long long*> malloc(npts * d * sizeof(long long) + 1)
    cdef long long* a = <long long*> malloc(d * d * sizeof(long long) + 1)
    cdef int* sidx = <int*> malloc((d + 1) * sizeof(int))
    if pts == NULL or a == NULL or sidx == NULL:
        free(pts); free(a); free(sidx)
        raise MemoryError()
    try:
        for i in range(npts):
            p = points[i]
            for c in range(d):
                pts[i * d + c] = p[c]
        for s in simplices:
            for j in range(d + 1):
                sidx[j] = s[j]
            idx0 = sidx[0]
            for j in range(d):
                idx = sidx[j + 1]
                for c in range(d):
                    a[j * d + c] = pts[idx * d + c] - pts[idx0 * d + c]
            det = _bareiss(a, d)
            total += det if det >= 0 else -det
    finally:
        free(pts); free(a); free(sidx)
    return total
