# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np


cdef inline int _mul(int a, int b, const int[::1] exp, const int[::1] log) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


cdef int _gauss_jordan(int[:, ::1] A, Py_ssize_t ncols, const int[::1] exp,
                       const int[::1] log, int *det) noexcept nogil:
    cdef Py_ssize_t rows = A.shape[0], width = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef int q1 = <int>(exp.shape[0] // 2)
    cdef int pivot, inv_p, lf, v, tmp
    det[0] = 1
    for c in range(ncols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                p = i
                break
        if p < 0:
            det[0] = 0
            continue
        if p != r:
            for j in range(c, width):
                tmp = A[r, j]
                A[r, j] = A[p, j]
                A[p, j] = tmp
        pivot = A[r, c]
        det[0] = _mul(det[0], pivot, exp, log)
        inv_p = exp[q1 - log[pivot]]
        for j in range(c, width):
            A[r, j] = _mul(A[r, j], inv_p, exp, log)
        for i in range(rows):
            if i == r or A[i, c] == 0:
                continue
            lf = log[A[i, c]]
            for j in range(c, width):
                v = A[r, j]
                if v != 0:
                    A[i, j] ^= exp[lf + log[v]]
        r += 1
    if r < ncols:
        det[0] = 0
    return <int>r


def rank(mat, exp, log):
    cdef int[:, ::1] A = np.array(mat, dtype=np.int32, order="C")
    cdef const int[::1] e = exp
    cdef const int[::1] l = log
    cdef int d, r
    with nogil:
        r = _gauss_jordan(A, A.shape[1], e, l, &d)
    return r


def det(mat, exp, log):
    cdef int[:, ::1] A = np.array(mat, dtype=np.int32, order="C")
    if A.shape[0] != A.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    cdef const int[::1] e = exp
    cdef const int[::1] l = log
    cdef int d
    with nogil:
        _gauss_jordan(A, A.shape[1], e, l, &d)
    return d


def inverse(mat, exp, log):
    src = np.asarray(mat, dtype=np.int32)
    cdef Py_ssize_t n = src.shape[0]
    buf = np.zeros((n, 2 * n), dtype=np.int32)
    buf[:, :n] = src
    buf[np.arange(n), n + np.arange(n)] = 1
    cdef int[:, ::1] A = buf
    cdef const int[::1] e = exp
    cdef const int[::1] l = log
    cdef int d, r
    with nogil:
        r = _gauss_jordan(A, n, e, l, &d)
    if r < n:
        return None
    return buf[:, n:].copy()


def matmul(a, b, exp, log):
    cdef const int[:, ::1] A = np.ascontiguousarray(a, dtype=np.int32)
    cdef const int[:, ::1] B = np.ascontiguousarray(b, dtype=np.int32)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int32)
    cdef int[:, ::1] O = out
    cdef const int[::1] e = exp
    cdef const int[::1] l = log
    cdef Py_ssize_t i, j, s
    cdef int la, v
    with nogil:
        for i in range(A.shape[0]):
            for j in range(A.shape[1]):
                if A[i, j] == 0:
                    continue
                la = l[A[i, j]]
                for s in range(B.shape[1]):
                    v = B[j, s]
                    if v != 0:
                        O[i, s] ^= e[la + l[v]]
    return out


def coset_costs(perms, members):
    cdef const int[:, ::1] P = np.ascontiguousarray(perms, dtype=np.int32)
    cdef const unsigned char[:, ::1] mem = np.ascontiguousarray(members, dtype=np.uint8)
    cdef Py_ssize_t B = P.shape[0], M = P.shape[1], S = mem.shape[0]
    out = np.empty((B, S), dtype=np.int32)
    cdef int[:, ::1] O = out
    cdef int[::1] pos = np.empty(M, dtype=np.int32)
    cdef Py_ssize_t b, i, s, g
    cdef int lo_in, hi_in, lo_out, hi_out, half = <int>(M // 2), c_in, c_out, p
    with nogil:
        for b in range(B):
            for i in range(M):
                pos[P[b, i]] = <int>i
            for s in range(S):
                lo_in = <int>M
                lo_out = <int>M
                hi_in = -1
                hi_out = -1
                for g in range(M):
                    p = pos[g]
                    if mem[s, g]:
                        if p < lo_in:
                            lo_in = p
                        if p > hi_in:
                            hi_in = p
                    else:
                        if p < lo_out:
                            lo_out = p
                        if p > hi_out:
                            hi_out = p
                c_in = hi_in - lo_in - (half - 1)
                c_out = hi_out - lo_out - (half - 1)
                O[b, s] = c_in if c_in < c_out else c_out
    return out
