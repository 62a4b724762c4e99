"""Integer hot loops, compiled when the extension is built.

``BACKEND`` is ``"cython"`` or ``"python"``.  Setting ``HECKECM_PURE_PYTHON=1``
forces the fallback.
"""
import os

import numpy as np

from . import _fallback

if os.environ.get("HECKECM_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = "python" if _impl is _fallback else "cython"


def _i64(xs):
    return np.ascontiguousarray(np.asarray(xs, dtype=np.int64))


def affine_count(p: int, k: int) -> int:
    return int(_impl.affine_count(int(p), int(k)))


def gl2_coefficients(M, primes, ap, good):
    return _impl.gl2_coefficients(int(M), _i64(primes), _i64(ap), np.ascontiguousarray(np.asarray(good, dtype=np.uint8)))


def hecke_coefficients(M, norms, xa, xb):
    return _impl.hecke_coefficients(int(M), _i64(norms), _i64(xa), _i64(xb))
