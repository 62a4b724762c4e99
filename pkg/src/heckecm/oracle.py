"""Independent evaluations of L(conj psi_{D_T^3}, 1) that never touch wp.

Three routes:

``closed-form``  T empty: L(conj psi_1, 1) = cbrt4 omega / (4 sqrt3), so
                 L_S is that value times the Euler factors at pi_1..pi_n.
``curve-q``      D_T a rational integer: L(E/Q, 1) for y^2 = x^3 + D_T^3 from
                 point counts, root number +-1.
``afe``          the Hecke L-series itself, coefficients from sextic symbols,
                 with the complex root number solved from two test points.

The last two use the smoothed approximate functional equation

    L(1) = F(t) + W B(t),  F(t) = sum a_n/n e^{-nt/A},
                           B(t) = sum conj(a_n)/n e^{-n/(tA)},  A = sqrt(N)/(2 pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from . import kernels
from .eisenstein import (
    UNITS,
    EisensteinInt,
    SquarefreeD,
    prime_above,
    residue_field,
)
from .hecke import (
    HeckeCharacterSpec,
    as_subset,
    psi_prime_ideal,
    restrict_to_S,
)
from .numerics import numerics
from .weierstrass import lattice_context

METHODS = ("closed-form", "curve-q", "afe")
TEST_POINTS = (Fraction(1), Fraction(6, 5), Fraction(9, 10))


class OracleError(RuntimeError):
    """An oracle route is not applicable or failed its own consistency checks."""


class AmbiguousCharacter(OracleError):
    """Point counts do not determine psi(p) uniquely."""


class RootNumberError(OracleError):
    """The solved root number does not have modulus 1."""


# ---------------------------------------------------------------------------
# point counts


def _inert_affine_count(q: int, k: EisensteinInt) -> int:
    """#{(x, y) : y^2 = x^3 + k} over Z[t]/q, q inert."""
    a = np.repeat(np.arange(q, dtype=np.int64), q)
    b = np.tile(np.arange(q, dtype=np.int64), q)

    def mul(xa, xb, ya, yb):
        return (xa * ya - xb * yb) % q, (xa * yb + xb * ya - xb * yb) % q

    sa, sb = mul(a, b, a, b)
    hits = np.bincount(sa * q + sb, minlength=q * q)
    ca, cb = mul(sa, sb, a, b)
    ca, cb = (ca + k.a) % q, (cb + k.b) % q
    return int(hits[ca * q + cb].sum())


def count_points(d: EisensteinInt | int, pi: EisensteinInt) -> tuple[int, int]:
    """(#E(F_pi), a_pi) for E: y^2 = x^3 + d^3 at a prime pi of good reduction."""
    d, pi = EisensteinInt.coerce(d), EisensteinInt.coerce(pi)
    if pi.norm() % 2 == 0 or pi.norm() % 3 == 0 or pi.divides(d):
        raise OracleError(f"y^2 = x^3 + ({d})^3 has bad reduction at {pi}")
    F = residue_field(pi)
    k = F.reduce(d**3)
    if F.split:
        count = kernels.affine_count(F.p, k) + 1
    else:
        count = _inert_affine_count(F.p, k) + 1
    q = F.order
    a = q + 1 - count
    if a * a > 4 * q:
        raise OracleError(f"Hasse bound violated at {pi}: #E = {count}")
    return count, a


def psi_from_point_counts(pi: EisensteinInt, D: EisensteinInt | int) -> EisensteinInt:
    """psi_{D^3}(pi) as the unique associate of pi whose trace is a_pi."""
    pi = EisensteinInt.coerce(pi)
    _, trace = count_points(D, pi)
    hits = {u * pi for u in UNITS if (u * pi).trace() == trace}
    if not hits:
        raise OracleError(f"no associate of {pi} has trace {trace}")
    if len(hits) > 1:
        raise AmbiguousCharacter(
            f"{len(hits)} associates of {pi} have trace {trace}: " + ", ".join(sorted(map(str, hits))))
    return hits.pop()


# ---------------------------------------------------------------------------
# Dirichlet coefficients


def curve_coefficients(k: int, M: int) -> np.ndarray:
    """a_1..a_M of L(E/Q, s), E: y^2 = x^3 + k (index 0 unused)."""
    primes = list(sympy.primerange(2, M + 1))
    ap, good = [], []
    for p in primes:
        if p in (2, 3) or k % p == 0:
            ap.append(0)
            good.append(0)
        else:
            ap.append(p - kernels.affine_count(p, k % p))
            good.append(1)
    return kernels.gl2_coefficients(M, primes, ap, good)


def hecke_coefficients(D_T: EisensteinInt, M: int) -> tuple[np.ndarray, np.ndarray]:
    """a_n of L(conj psi_{D_T^3}, s) as Z[t] coordinate arrays (a, b)."""
    norms, xa, xb = [], [], []
    for p in sympy.primerange(5, M + 1):
        if p % 3 == 1:
            pi = prime_above(p)
            ideals = [(p, pi), (p, pi.conjugate())]
        elif p * p <= M:
            ideals = [(p * p, EisensteinInt(p, 0))]
        else:
            continue
        for n, g in ideals:
            x = psi_prime_ideal(g, D_T).conjugate()
            if x:
                norms.append(n)
                xa.append(x.a)
                xb.append(x.b)
    order = np.argsort(np.array(norms, dtype=np.int64), kind="stable")
    return kernels.hecke_coefficients(
        M, np.array(norms)[order], np.array(xa)[order], np.array(xb)[order])


# ---------------------------------------------------------------------------
# smoothed functional equation


def cutoff(conductor: int, digits: int, points=TEST_POINTS) -> int:
    """Smallest M with the smoothed tail below 10^-digits.

    Uses |a_n|/n <= d(n)/sqrt(n) <= 2 and both sums, with s = min(t, 1/t).
    """
    A = math.sqrt(conductor) / (2 * math.pi)
    s = float(min(min(t, 1 / t) for t in points))
    x = s / A
    return int(math.ceil((digits * math.log(10) + math.log(4 / -math.expm1(-x))) / x))


@dataclass
class FunctionalEquationFit:
    value: object
    root_number: object
    spread: object
    cutoff: int
    conductor: int


def _smoothed_sums(coeffs, conductor: int, t, num):
    """F(t) and B(t) for complex coefficients given as (index, mpc) pairs."""
    mp = num.mp
    A = mp.sqrt(conductor) / (2 * num.constants.pi)
    t = num.fraction(Fraction(t))
    F = num.sum([c / n * mp.exp(-n * t / A) for n, c in coeffs])
    B = num.sum([mp.conj(c) / n * mp.exp(-n / (t * A)) for n, c in coeffs])
    return F, B


def fit_functional_equation(coeffs, conductor: int, precision: int, digits: int,
                            real_root: bool = False) -> FunctionalEquationFit:
    """Solve L = F(t) + W B(t) at two test points; validate at a third."""
    num = numerics(precision)
    mp = num.mp
    M = coeffs[-1][0] if coeffs else 1
    (F1, B1), (F2, B2), (F3, B3) = (_smoothed_sums(coeffs, conductor, t, num) for t in TEST_POINTS)
    if abs(B2 - B1) < mp.mpf(10) ** (-digits / 2):
        raise OracleError("test points give an ill-conditioned root number system")
    W = (F1 - F2) / (B2 - B1)
    if abs(abs(W) - 1) > 1e-8:
        raise RootNumberError(f"|W| = {mp.nstr(abs(W), 12)} for conductor {conductor}")
    if real_root:
        if abs(W.imag) > 1e-8:
            raise RootNumberError(f"non-real root number {mp.nstr(W, 12)}")
        W = mp.mpc(1 if W.real > 0 else -1)
    L = F1 + W * B1
    spread = max(abs(L - (F2 + W * B2)), abs(L - (F3 + W * B3)))
    if spread > mp.mpf(10) ** (5 - digits) * max(1, abs(L)):
        raise OracleError(f"functional equation inconsistent across test points: {mp.nstr(spread, 5)}")
    return FunctionalEquationFit(L, W, spread, M, conductor)


def scan_conductors(coeffs, candidates, precision: int):
    """Conductors among ``candidates`` whose solved root number has modulus 1 (to 1e-8)."""
    num = numerics(precision)
    good = []
    for N in candidates:
        F1, B1 = _smoothed_sums(coeffs, N, TEST_POINTS[0], num)
        F2, B2 = _smoothed_sums(coeffs, N, TEST_POINTS[1], num)
        if B2 == B1:
            continue
        W = (F1 - F2) / (B2 - B1)
        if abs(abs(W) - 1) < 1e-8:
            good.append(N)
    return good


# ---------------------------------------------------------------------------
# the oracle


@dataclass
class OracleResult:
    method: str
    L: object
    L_S: object
    root_number: object = None
    cutoff: int | None = None
    conductor: int | None = None


def default_digits(precision: int) -> int:
    return min(30, precision - 5)


def oracle_l1(D: SquarefreeD, T=None, precision: int = 50, method: str | None = None,
              digits: int | None = None) -> OracleResult:
    """L(conj psi_{D_T^3}, 1) and L_S by an analytic route independent of wp.

    Without ``method`` the cheapest applicable route is used.
    """
    T = D.full() if T is None else as_subset(D, T)
    spec = HeckeCharacterSpec(D, T)
    D_T = spec.D_T
    num = numerics(precision)
    mp = num.mp
    if method is None:
        method = "closed-form" if T.mask == 0 else "curve-q" if D_T.b == 0 else "afe"
    if method not in METHODS:
        raise OracleError(f"unknown oracle method {method!r}")
    digits = digits or default_digits(precision)

    if method == "closed-form":
        if T.mask:
            raise OracleError("closed-form oracle needs T empty")
        c = num.constants
        L = mp.mpc(c.cbrt4 * lattice_context(precision).omega / (4 * c.sqrt3))
        return OracleResult(method, L, restrict_to_S(L, D, T, precision))

    N = spec.analytic_conductor
    M = cutoff(N, digits)
    if method == "curve-q":
        if D_T.b != 0:
            raise OracleError(f"curve-q oracle needs a rational D_T, got {D_T}")
        a = curve_coefficients(D_T.a ** 3, M)
        coeffs = [(n, mp.mpc(int(a[n]))) for n in range(1, M + 1) if a[n]]
    else:
        ca, cb = hecke_coefficients(D_T, M)
        tau = num.constants.tau
        coeffs = [(n, int(ca[n]) + int(cb[n]) * tau) for n in range(1, M + 1) if ca[n] or cb[n]]
    try:
        fit = fit_functional_equation(coeffs, N, precision, digits, real_root=method == "curve-q")
    except RootNumberError as exc:
        candidates = sorted({N * k // d for k in (1, 2, 3, 4, 9) for d in (1, 2, 3, 4, 9)
                             if N * k % d == 0})
        good = scan_conductors(coeffs, candidates, precision)
        raise RootNumberError(f"{exc}; conductors consistent with the series: {good}") from None
    return OracleResult(method, fit.value, restrict_to_S(fit.value, D, T, precision),
                        fit.root_number, M, N)
