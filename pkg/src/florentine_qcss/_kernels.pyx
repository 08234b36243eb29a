# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled correlation kernels.

Signatures and results match :mod:`florentine_qcss._kernels_py` exactly.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


def shift_counts(const i64[:, :, ::1] X, Py_ssize_t n, Py_ssize_t tau):
    """Exponent multiplicities of the flock correlation of every ordered pair
    of sets at shift ``tau``.

    ``out[a, b, e]`` counts the terms ``(X[a,s,t] - X[b,s,t+tau]) mod n == e``.
    """
    cdef Py_ssize_t K = X.shape[0], M = X.shape[1], N = X.shape[2]
    if tau < 0 or tau >= N:
        raise ValueError("shift out of range")
    out_arr = np.zeros((K, K, n), dtype=np.int64)
    cdef i64[:, :, ::1] out = out_arr
    cdef Py_ssize_t a, b, s, t, span = N - tau
    cdef i64 e
    with nogil:
        for a in range(K):
            for b in range(K):
                for s in range(M):
                    for t in range(span):
                        e = (X[a, s, t] - X[b, s, t + tau]) % n
                        if e < 0:
                            e = e + n
                        out[a, b, e] += 1
    return out_arr


def norm_counts(const i64[:, ::1] C, Py_ssize_t n):
    """Coefficients of ``v * conj(v)`` in ``Z[x]/(x^n - 1)`` for each row of
    multiplicities ``C``: ``out[p, d] = sum_j C[p, j] * C[p, (j - d) mod n]``."""
    cdef Py_ssize_t P = C.shape[0], p, d, j, l
    if C.shape[1] != n:
        raise ValueError("count vectors must have length n")
    out_arr = np.zeros((P, n), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64 acc
    with nogil:
        for p in range(P):
            for d in range(n):
                acc = 0
                for j in range(n):
                    l = j - d
                    if l < 0:
                        l = l + n
                    acc = acc + C[p, j] * C[p, l]
                out[p, d] = acc
    return out_arr
