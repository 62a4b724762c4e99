"""Working-precision contexts, shared constants and reproducible summation.

Every analytic computation runs inside a private :class:`mpmath.MPContext`
so that several precisions can coexist in one process without touching the
global ``mpmath.mp`` state.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import mpmath

DEFAULT_PRECISION = 50
GUARD_DIGITS = 10
PRECISION_ENV = "HECKECM_PRECISION"


def default_precision() -> int:
    value = os.environ.get(PRECISION_ENV)
    return int(value) if value else DEFAULT_PRECISION


@dataclass(frozen=True)
class ConstantSet:
    pi: object
    sqrt3: object
    cbrt2: object
    cbrt4: object
    i: object
    tau: object


class Numerics:
    """A precision P (decimal digits) plus its private mpmath context.

    Arithmetic is carried out with ``GUARD_DIGITS`` extra digits; results
    are meaningful to about P digits.
    """

    def __init__(self, precision: int):
        if precision < 20:
            raise ValueError("precision must be at least 20 digits")
        self.precision = precision
        self.mp = mpmath.MPContext()
        self.mp.dps = precision + GUARD_DIGITS
        mp = self.mp
        sqrt3 = mp.sqrt(3)
        cbrt2 = mp.cbrt(2)
        self.constants = ConstantSet(
            pi=+mp.pi,
            sqrt3=sqrt3,
            cbrt2=cbrt2,
            cbrt4=mp.cbrt(4),
            i=mp.mpc(0, 1),
            tau=mp.mpc(mp.mpf(-1) / 2, sqrt3 / 2),
        )

    def eps(self, shift: int = 0):
        """10^(-P + shift)."""
        return self.mp.mpf(10) ** (shift - self.precision)

    def mpf(self, x):
        return self.mp.mpf(x)

    def mpc(self, re, im=0):
        return self.mp.mpc(re, im)

    def fraction(self, q):
        return self.mp.mpf(q.numerator) / q.denominator

    def eisenstein(self, x):
        """Complex value of an EisensteinInt a + b t."""
        return self.mp.mpc(x.a, 0) + x.b * self.constants.tau

    def sum(self, terms: Sequence):
        return deterministic_sum(terms, self)

    def to_str(self, x, digits: int | None = None) -> str:
        return self.mp.nstr(x, digits or self.precision, strip_zeros=False)

    def pack(self, z) -> tuple:
        """Exact picklable form of an mpc (for worker processes)."""
        z = self.mp.mpc(z)
        return z._mpc_

    def unpack(self, t):
        return self.mp.make_mpc(t)


@lru_cache(maxsize=None)
def numerics(precision: int) -> Numerics:
    return Numerics(precision)


def constants(precision: int) -> ConstantSet:
    return numerics(precision).constants


def deterministic_sum(terms: Sequence, num: Numerics | None = None):
    """Balanced pairwise reduction in a fixed order.

    Adjacent terms are combined first, so the result depends only on the
    order of ``terms``, never on how they were computed.
    """
    level = list(terms)
    if not level:
        return num.mp.mpc(0) if num is not None else 0
    while len(level) > 1:
        nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def parallel_map(fn: Callable, items: Iterable, workers: int = 1, chunksize: int = 256) -> list:
    """Order-preserving map, optionally over a process pool.

    ``fn`` must be a module-level callable; results must be picklable.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunksize = max(1, min(chunksize, -(-len(items) // (4 * workers))))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
