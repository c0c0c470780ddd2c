# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; contracts mirror ``_pykernels``."""
from libc.stdlib cimport malloc, free
from libc.string cimport memset

import math

import numpy as np
cimport numpy as cnp

cnp.import_array()


def compositions(Py_ssize_t n, Py_ssize_t m):
    cdef Py_ssize_t total = math.comb(n + m - 1, m - 1)
    out_arr = np.zeros((total, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t* cur = <cnp.int64_t*> malloc(m * sizeof(cnp.int64_t))
    cdef Py_ssize_t row, j, k
    cdef cnp.int64_t tail
    if cur == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(m - 1):
                cur[j] = 0
            cur[m - 1] = n
            for row in range(total):
                for j in range(m):
                    out[row, j] = cur[j]
                if row + 1 == total:
                    break
                # next in lex order: bump the rightmost position k < m-1 that
                # has mass to its right, then push all remaining mass to the end
                k = m - 2
                while cur[k + 1] == 0 and k > 0:
                    k -= 1
                tail = 0
                for j in range(k + 1, m):
                    tail += cur[j]
                    cur[j] = 0
                cur[k] += 1
                cur[m - 1] = tail - 1
    finally:
        free(cur)
    return out_arr


def type_log_stats(counts, log_p, log_q, llr, log_fact):
    cdef cnp.int64_t[:, ::1] c = np.ascontiguousarray(counts, dtype=np.int64)
    cdef double[::1] lp = np.ascontiguousarray(log_p, dtype=np.float64)
    cdef double[::1] lq = np.ascontiguousarray(log_q, dtype=np.float64)
    cdef double[::1] ll = np.ascontiguousarray(llr, dtype=np.float64)
    cdef double[::1] lf = np.ascontiguousarray(log_fact, dtype=np.float64)
    cdef Py_ssize_t t, j, rows = c.shape[0], m = c.shape[1]
    cdef cnp.int64_t n = 0
    for j in range(m):
        n += c[0, j]
    a_cnt = np.empty(rows)
    a_p = np.empty(rows)
    a_q = np.empty(rows)
    a_l = np.empty(rows)
    cdef double[::1] o_cnt = a_cnt, o_p = a_p, o_q = a_q, o_l = a_l
    cdef double neg, sp, sq, sl, x
    with nogil:
        for t in range(rows):
            x = <double> c[t, 0]
            neg = lf[c[t, 0]]
            sp = x * lp[0]
            sq = x * lq[0]
            sl = x * ll[0]
            for j in range(1, m):
                x = <double> c[t, j]
                neg = neg + lf[c[t, j]]
                sp = sp + x * lp[j]
                sq = sq + x * lq[j]
                sl = sl + x * ll[j]
            o_cnt[t] = lf[n] - neg
            o_p[t] = sp
            o_q[t] = sq
            o_l[t] = sl
    return a_cnt, a_p, a_q, a_l


def llr_block_sums(u, cdf, llr):
    cdef double[:, ::1] uu = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[::1] cc = np.ascontiguousarray(cdf, dtype=np.float64)
    cdef double[::1] ll = np.ascontiguousarray(llr, dtype=np.float64)
    cdef Py_ssize_t rows = uu.shape[0], n = uu.shape[1], m = cc.shape[0]
    cdef Py_ssize_t r, i, s
    cdef double x, acc
    out_arr = np.empty(rows)
    cdef double[::1] out = out_arr
    cdef cnp.int64_t* hist = <cnp.int64_t*> malloc(m * sizeof(cnp.int64_t))
    if hist == NULL:
        raise MemoryError()
    try:
        with nogil:
            for r in range(rows):
                memset(hist, 0, m * sizeof(cnp.int64_t))
                for i in range(n):
                    x = uu[r, i]
                    s = 0
                    while s < m - 1 and not (x < cc[s]):
                        s += 1
                    hist[s] += 1
                acc = (<double> hist[0]) * ll[0]
                for s in range(1, m):
                    acc = acc + (<double> hist[s]) * ll[s]
                out[r] = acc
    finally:
        free(hist)
    return out_arr
