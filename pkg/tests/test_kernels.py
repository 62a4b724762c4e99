import os

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from heckecm import _fallback, kernels

compiled = pytest.importorskip("heckecm._kernels", reason="extension not built")

odd_primes = st.sampled_from(list(sympy.primerange(3, 400)))


def brute_affine(p, k):
    return sum(1 for x in range(p) for y in range(p) if (y * y - x**3 - k) % p == 0)


def test_backend_selection():
    expected = "python" if os.environ.get("HECKECM_PURE_PYTHON") else "cython"
    assert kernels.BACKEND == expected


@given(odd_primes, st.integers(-10**9, 10**9))
def test_affine_count_backends_agree(p, k):
    assert compiled.affine_count(p, k) == _fallback.affine_count(p, k)


@pytest.mark.parametrize("p", [3, 5, 7, 13, 31, 37])
def test_affine_count_brute_force(p):
    for k in range(p):
        assert kernels.affine_count(p, k) == brute_affine(p, k)


def random_euler_data(seed, n):
    rng = np.random.default_rng(seed)
    primes = np.array(list(sympy.primerange(2, 2000))[:n], dtype=np.int64)
    ap = rng.integers(-60, 61, size=n).astype(np.int64)
    good = (rng.random(n) < 0.9).astype(np.uint8)
    return primes, ap, good


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gl2_backends_agree(seed):
    primes, ap, good = random_euler_data(seed, 120)
    a = compiled.gl2_coefficients(3000, primes, ap, good)
    b = _fallback.gl2_coefficients(3000, primes, ap, good)
    assert np.array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.parametrize("seed", [0, 1])
def test_hecke_backends_agree(seed):
    rng = np.random.default_rng(seed)
    norms = np.array(sorted(rng.integers(2, 2000, size=80)), dtype=np.int64)
    xa = rng.integers(-3, 4, size=80).astype(np.int64)
    xb = rng.integers(-3, 4, size=80).astype(np.int64)
    ca, cb = compiled.hecke_coefficients(2000, norms, xa, xb)
    fa, fb = _fallback.hecke_coefficients(2000, norms, xa, xb)
    assert np.array_equal(np.asarray(ca), np.asarray(fa))
    assert np.array_equal(np.asarray(cb), np.asarray(fb))


def test_gl2_single_prime_recursion():
    # one good prime: c(p^k) = a c(p^(k-1)) - p c(p^(k-2))
    c = kernels.gl2_coefficients(3**6, [3], [2], [1])
    seq = [1, 2]
    for _ in range(4):
        seq.append(2 * seq[-1] - 3 * seq[-2])
    assert [int(c[3**k]) for k in range(6)] == seq
    assert int(c[2]) == 0
