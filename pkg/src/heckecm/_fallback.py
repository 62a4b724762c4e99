"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def affine_count(p, k):
    """Number of (x, y) in F_p^2 with y^2 = x^3 + k, p an odd prime."""
    p, k = int(p), int(k) % int(p)
    x = np.arange(p, dtype=np.int64)
    squares = np.zeros(p, dtype=bool)
    squares[x[1:] * x[1:] % p] = True
    v = (x * x % p * x + k) % p
    return int(np.count_nonzero(v == 0) + 2 * np.count_nonzero(squares[v]))


def gl2_coefficients(M, primes, ap, good):
    """Dirichlet coefficients 1..M of prod_p (1 - a_p p^-s + [good] p^(1-2s))^-1."""
    M = int(M)
    c = [0] * (M + 1)
    c[1] = 1
    for p, a, g in zip(primes, ap, good):
        p, a = int(p), int(a)
        if p > M:
            break
        p2 = p * p
        for m in range(p, M + 1, p):
            c[m] += a * c[m // p]
            if g and m % p2 == 0:
                c[m] -= p * c[m // p2]
    return np.array(c, dtype=np.int64)


def hecke_coefficients(M, norms, xa, xb):
    """Coefficients in Z[t] of prod over prime ideals of (1 - x N^-s)^-1."""
    M = int(M)
    ca = [0] * (M + 1)
    cb = [0] * (M + 1)
    ca[1] = 1
    for q, a, b in zip(norms, xa, xb):
        q, a, b = int(q), int(a), int(b)
        if q > M:
            continue
        for m in range(q, M + 1, q):
            u, v = ca[m // q], cb[m // q]
            ca[m] += a * u - b * v
            cb[m] += a * v + b * u - b * v
    return np.array(ca, dtype=np.int64), np.array(cb, dtype=np.int64)
