# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels: point counting and Euler-product sieves.

Signatures and results match :mod:`heckecm._fallback` exactly.
"""
import numpy as np

from libc.stdlib cimport calloc, free


def affine_count(long long p, long long k):
    """Number of (x, y) in F_p^2 with y^2 = x^3 + k, p an odd prime."""
    cdef long long x, v, total = 0
    cdef unsigned char *is_square
    k %= p
    if k < 0:
        k += p
    is_square = <unsigned char *>calloc(p, 1)
    if is_square == NULL:
        raise MemoryError()
    try:
        for x in range(1, p):
            is_square[x * x % p] = 1
        for x in range(p):
            v = (x * x % p * x + k) % p
            if v == 0:
                total += 1
            elif is_square[v]:
                total += 2
    finally:
        free(is_square)
    return total


def gl2_coefficients(long long M, long long[:] primes, long long[:] ap, unsigned char[:] good):
    """Dirichlet coefficients 1..M of prod_p (1 - a_p p^-s + [good] p^(1-2s))^-1."""
    out = np.zeros(M + 1, dtype=np.int64)
    cdef long long[:] c = out
    cdef Py_ssize_t i, n = primes.shape[0]
    cdef long long p, a, m, p2
    c[1] = 1
    for i in range(n):
        p = primes[i]
        a = ap[i]
        if p > M:
            break
        p2 = p * p
        m = p
        while m <= M:
            c[m] += a * c[m // p]
            if good[i] and m % p2 == 0:
                c[m] -= p * c[m // p2]
            m += p
    return out


def hecke_coefficients(long long M, long long[:] norms, long long[:] xa, long long[:] xb):
    """Coefficients in Z[t] of prod over prime ideals of (1 - x N^-s)^-1.

    Ideal i has norm norms[i] and character value xa[i] + xb[i]*t.
    Returns the arrays of 1- and t-coordinates.
    """
    out_a = np.zeros(M + 1, dtype=np.int64)
    out_b = np.zeros(M + 1, dtype=np.int64)
    cdef long long[:] ca = out_a
    cdef long long[:] cb = out_b
    cdef Py_ssize_t i, n = norms.shape[0]
    cdef long long q, a, b, m, u, v
    ca[1] = 1
    for i in range(n):
        q = norms[i]
        a = xa[i]
        b = xb[i]
        if q > M:
            continue
        m = q
        while m <= M:
            u = ca[m // q]
            v = cb[m // q]
            # (a + b t)(u + v t) with t^2 = -1 - t
            ca[m] += a * u - b * v
            cb[m] += a * v + b * u - b * v
            m += q
    return out_a, out_b
