# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; mirror ``_kernels_py`` function for function."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


cdef inline long _digit(long v, int j, long p, int m):
    cdef long w = 1
    cdef int i
    for i in range(m - 1 - j):
        w *= p
    return (v // w) % p


def field_mul_table(long p, int m, poly):
    cdef long n = p ** m
    cdef long[:] pl = np.asarray(poly, dtype=np.int64).astype(np.int_)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] table = np.zeros((n, n), dtype=np.int64)
    cdef long[:, :] digits = np.zeros((n, m), dtype=np.int_)
    cdef long[:] prod = np.zeros(2 * m - 1, dtype=np.int_)
    cdef long a, b, v, f
    cdef int i, j
    for a in range(n):
        for j in range(m):
            digits[a, j] = _digit(a, j, p, m)
    for a in range(n):
        for b in range(a, n):
            for i in range(2 * m - 1):
                prod[i] = 0
            for i in range(m):
                if digits[a, i]:
                    for j in range(m):
                        prod[i + j] = (prod[i + j] + digits[a, i] * digits[b, j]) % p
            for i in range(m - 1):
                f = prod[i]
                if f:
                    for j in range(m + 1):
                        prod[i + j] = ((prod[i + j] - f * pl[j]) % p + p) % p
            v = 0
            for i in range(m - 1, 2 * m - 1):
                v = v * p + prod[i]
            table[a, b] = v
            table[b, a] = v
    return table


def quadratic_exponents(alpha, long p, long modulus):
    cdef long[:, :, :] al = np.asarray(alpha).astype(np.int_)
    cdef int m = al.shape[0]
    cdef long n = p ** m
    cdef long[:, :] digits = np.zeros((n, m), dtype=np.int_)
    cdef long[:, :] forms = np.zeros((m, n), dtype=np.int_)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((n, n), dtype=np.int64)
    cdef long k, u, s
    cdef int j, r, c
    for u in range(n):
        for j in range(m):
            digits[u, j] = _digit(u, j, p, m)
    for j in range(m):
        for u in range(n):
            s = 0
            for r in range(m):
                if digits[u, r]:
                    for c in range(m):
                        s += digits[u, r] * al[j, r, c] * digits[u, c]
            forms[j, u] = s
    for k in range(n):
        for u in range(n):
            s = 0
            for j in range(m):
                s += digits[k, j] * forms[j, u]
            out[k, u] = s % modulus
    return out


cdef double _off_norm(double complex[:, :] a, int n):
    cdef double s = 0.0
    cdef int i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
    return sqrt(s)


def jacobi_hermitian(a, bint want_vectors, double tol, int max_sweeps):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] warr = np.array(a, dtype=np.complex128, copy=True)
    cdef double complex[:, :] w = warr
    cdef int n = w.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] varr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, :] v = varr
    cdef int i, p, q, r, sweeps = 0
    cdef double g, theta, t, c, s, scale = 0.0, off, threshold
    cdef double complex e, ec, x, y
    for i in range(n):
        w[i, i] = w[i, i].real
    for p in range(n):
        for q in range(n):
            scale += w[p, q].real * w[p, q].real + w[p, q].imag * w[p, q].imag
    scale = sqrt(scale)
    if scale < 1.0:
        scale = 1.0
    threshold = tol * scale
    off = _off_norm(w, n)
    while off > threshold and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = sqrt(w[p, q].real * w[p, q].real + w[p, q].imag * w[p, q].imag)
                if g < 1e-300:
                    continue
                e = w[p, q] / g
                ec = e.conjugate()
                theta = (w[q, q].real - w[p, p].real) / (2.0 * g)
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for r in range(n):
                    x = w[r, p]
                    y = w[r, q]
                    w[r, p] = c * x - s * ec * y
                    w[r, q] = s * x + c * ec * y
                for r in range(n):
                    x = w[p, r]
                    y = w[q, r]
                    w[p, r] = c * x - s * e * y
                    w[q, r] = s * x + c * e * y
                w[p, q] = 0.0
                w[q, p] = 0.0
                w[p, p] = w[p, p].real
                w[q, q] = w[q, q].real
                if want_vectors:
                    for r in range(n):
                        x = v[r, p]
                        y = v[r, q]
                        v[r, p] = c * x - s * ec * y
                        v[r, q] = s * x + c * ec * y
        off = _off_norm(w, n)
    diag = np.array([w[i, i].real for i in range(n)])
    return diag, (varr if want_vectors else None), off, sweeps
