# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in _core_py.

Same signatures and results to roundoff (the tests bound the cross-backend
difference at 1e-12; only the association order of the sums differs).
"""

import numpy as np

BACKEND_NAME = "compiled"


def dft_direct(const double complex[::1] values, const double complex[:, ::1] phases):
    cdef Py_ssize_t n = phases.shape[0]
    cdef Py_ssize_t m = phases.shape[1]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t k, w
    cdef double complex acc
    for w in range(m):
        acc = 0
        for k in range(n):
            acc = acc + values[k] * phases[k, w].conjugate()
        o[w] = acc
    return out


def idft_direct(const double complex[::1] values, const double complex[:, ::1] phases):
    cdef Py_ssize_t n = phases.shape[0]
    cdef Py_ssize_t m = phases.shape[1]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t k, w
    cdef double complex acc
    for k in range(n):
        acc = 0
        for w in range(m):
            acc = acc + values[w] * phases[k, w]
        o[k] = acc / m
    return out


def gather_sum(const double complex[::1] values, const long[:, ::1] idx):
    cdef Py_ssize_t rows = idx.shape[0]
    cdef Py_ssize_t cols = idx.shape[1]
    out = np.empty(rows, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t r, j
    cdef double complex acc
    for r in range(rows):
        acc = 0
        for j in range(cols):
            acc = acc + values[idx[r, j]]
        o[r] = acc
    return out


def gather_phase_sum(const double complex[::1] values,
                     const long[:, ::1] idx,
                     const double complex[:, ::1] phases):
    cdef Py_ssize_t rows = idx.shape[0]
    cdef Py_ssize_t terms = idx.shape[1]
    cdef Py_ssize_t cols = phases.shape[1]
    out = np.empty((rows, cols), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t r, c, j
    cdef double complex acc
    for r in range(rows):
        for c in range(cols):
            acc = 0
            for j in range(terms):
                acc = acc + values[idx[r, j]] * phases[j, c]
            o[r, c] = acc
    return out


def unzak(const double complex[:, ::1] zak_values,
          const long[:, ::1] idx,
          const double complex[:, ::1] phases,
          Py_ssize_t out_size):
    cdef Py_ssize_t rows = idx.shape[0]
    cdef Py_ssize_t terms = idx.shape[1]
    cdef Py_ssize_t cols = phases.shape[1]
    out = np.empty(out_size, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t r, j, c
    cdef double complex acc
    for r in range(rows):
        for j in range(terms):
            acc = 0
            for c in range(cols):
                acc = acc + zak_values[r, c] * phases[j, c].conjugate()
            o[idx[r, j]] = acc / cols
    return out


def phase_matmul(const double complex[:, ::1] a, const double complex[:, ::1] b):
    # b is copied transposed so the reduction runs unit-stride on both sides;
    # the typical call is tall-skinny (grid x translates) times (translates x grid)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k = a.shape[1]
    cdef Py_ssize_t m = b.shape[1]
    cdef const double complex[:, ::1] bt = np.ascontiguousarray(np.asarray(b).T)
    out = np.empty((n, m), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t i, j, t
    cdef double complex acc
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc = acc + a[i, t] * bt[j, t]
            o[i, j] = acc
    return out
