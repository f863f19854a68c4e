# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the per-point loops in :mod:`._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, M_PI, pow

cnp.import_array()


def hermite_functions(x, int nmax):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t nx = xv.shape[0]
    out_arr = np.empty((nmax + 1, nx), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double norm0 = pow(M_PI, -0.25)
    cdef double a, b, r2 = sqrt(2.0)
    cdef Py_ssize_t i
    cdef int n
    for i in range(nx):
        out[0, i] = norm0 * exp(-0.5 * xv[i] * xv[i])
    if nmax >= 1:
        for i in range(nx):
            out[1, i] = r2 * xv[i] * out[0, i]
    # Row by row keeps every write contiguous.
    for n in range(1, nmax):
        a = sqrt(2.0 / (n + 1))
        b = sqrt(<double>n / (n + 1))
        for i in range(nx):
            out[n + 1, i] = a * xv[i] * out[n, i] - b * out[n - 1, i]
    return out_arr


cdef void _fill_displacement(double complex beta, double complex[:, ::1] m) noexcept nogil:
    cdef Py_ssize_t dim = m.shape[0]
    cdef Py_ssize_t a, k
    cdef double x = beta.real * beta.real + beta.imag * beta.imag
    cdef double env = exp(-0.5 * x)
    cdef double complex up = 1.0, down = 1.0
    cdef double complex mbc = -beta.conjugate()
    cdef double lag, lag_prev, tmp, pref, v
    for a in range(dim):
        if a > 0:
            up = up * beta / sqrt(<double>a)
            down = down * mbc / sqrt(<double>a)
        lag_prev = 0.0
        lag = 1.0
        pref = env
        for k in range(dim - a):
            if k == 1:
                lag_prev = lag
                lag = 1.0 + a - x
            elif k > 1:
                tmp = ((2 * k - 1 + a - x) * lag - (k - 1 + a) * lag_prev) / k
                lag_prev = lag
                lag = tmp
            if k > 0:
                pref = pref * sqrt(<double>k / (k + a))
            v = pref * lag
            m[k + a, k] = v * up
            if a > 0:
                m[k, k + a] = v * down


def displacement_matrices(betas, int dim):
    cdef double complex[::1] bv = np.ascontiguousarray(betas, dtype=np.complex128).ravel()
    cdef Py_ssize_t p = bv.shape[0]
    out_arr = np.empty((p, dim, dim), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(p):
            _fill_displacement(bv[i], out[i])
    return out_arr


def displaced_parity(psi, beta1s, beta2s):
    cdef double complex[:, ::1] pv = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef double complex[::1] b1 = np.ascontiguousarray(beta1s, dtype=np.complex128).ravel()
    cdef double complex[::1] b2 = np.ascontiguousarray(beta2s, dtype=np.complex128).ravel()
    cdef Py_ssize_t d1 = pv.shape[0], d2 = pv.shape[1], npts = b1.shape[0]
    if b2.shape[0] != npts:
        raise ValueError("displacement lists differ in length")
    signed_arr = np.asarray(pv) * np.outer((-1.0) ** np.arange(d1), (-1.0) ** np.arange(d2))
    cdef double complex[:, ::1] sg = signed_arr
    cdef double complex[:, ::1] m1 = np.empty((d1, d1), dtype=np.complex128)
    cdef double complex[:, ::1] m2 = np.empty((d2, d2), dtype=np.complex128)
    cdef double complex[:, ::1] t = np.empty((d1, d2), dtype=np.complex128)
    out_arr = np.empty(npts, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t p, i, j, k, l
    cdef double complex acc, inner
    with nogil:
        for p in range(npts):
            _fill_displacement(b1[p], m1)
            _fill_displacement(b2[p], m2)
            # t = m1 @ signed
            for i in range(d1):
                for k in range(d2):
                    acc = 0
                    for j in range(d1):
                        acc = acc + m1[i, j] * sg[j, k]
                    t[i, k] = acc
            acc = 0
            for i in range(d1):
                for l in range(d2):
                    inner = 0
                    for k in range(d2):
                        inner = inner + t[i, k] * m2[l, k]
                    acc = acc + pv[i, l].conjugate() * inner
            out[p] = acc.real
    return out_arr
