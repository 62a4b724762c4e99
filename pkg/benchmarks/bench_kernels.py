"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import timeit

import numpy as np
import sympy

from heckecm import _fallback

try:
    from heckecm import _kernels
except ImportError:
    _kernels = None


def workloads():
    primes = np.array(list(sympy.primerange(5, 20000)), dtype=np.int64)
    ap = np.array([(p * 7919) % 61 - 30 for p in primes], dtype=np.int64)
    good = np.ones(len(primes), dtype=np.uint8)
    norms = np.array([p for p in primes if p % 3 == 1 for _ in (0, 1)], dtype=np.int64)
    xa = np.array([(q * 31) % 7 - 3 for q in norms], dtype=np.int64)
    xb = np.array([(q * 17) % 7 - 3 for q in norms], dtype=np.int64)
    count_primes = [int(p) for p in primes[-200:]]
    return {
        "affine_count x200": lambda m: [m.affine_count(p, 157**3) for p in count_primes],
        "gl2_coefficients M=20000": lambda m: m.gl2_coefficients(20000, primes, ap, good),
        "hecke_coefficients M=20000": lambda m: m.hecke_coefficients(20000, norms, xa, xb),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<28}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, job in workloads().items():
        slow = min(timeit.repeat(lambda: job(_fallback), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{name:<28}{slow:>12.4f}{'-':>12}{'-':>10}")
            continue
        fast = min(timeit.repeat(lambda: job(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<28}{slow:>12.4f}{fast:>12.4f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
