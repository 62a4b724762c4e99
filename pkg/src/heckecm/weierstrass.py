"""Weierstrass functions of the hexagonal lattice L = omega * Z[t].

The lattice is normalised by g2 = 0, g3 = 1, i.e. wp'^2 = 4 wp^3 - 1, which
fixes the real period omega = 3.0599...  Evaluation is by reduction to the
Voronoi cell of L (|z| <= omega/sqrt(3)) followed by the Laurent series at
0, whose coefficients are exact rationals.

Arguments may be plain complex numbers or :class:`LatticePoint` objects,
which carry exact rational coordinates in the basis (omega, omega*t).
Lattice points reduce exactly and their complex conjugates are exact too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .eisenstein import ONE, SQRT_M3, EisensteinInt
from .numerics import Numerics, numerics


class PoleAtLattice(ArithmeticError):
    """The argument is a lattice point, where wp and zeta have poles."""


class OmegaConsistencyError(RuntimeError):
    """The two independent computations of omega disagree."""


class PrecisionError(RuntimeError):
    """A numerical self-check failed at the working precision."""


# ---------------------------------------------------------------------------
# exact lattice points


@dataclass(frozen=True)
class LatticePoint:
    """The complex number omega * (x + y t) with rational x, y."""

    x: Fraction
    y: Fraction

    @classmethod
    def ratio(cls, num: EisensteinInt | int, den: EisensteinInt | int = 1) -> "LatticePoint":
        """omega * num / den for Eisenstein integers num, den."""
        num, den = EisensteinInt.coerce(num), EisensteinInt.coerce(den)
        return cls(*num.coords(den))

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(-self.x, -self.y)

    def scale(self, u: EisensteinInt) -> "LatticePoint":
        """Multiply by an Eisenstein integer."""
        # (x + y t)(a + b t) = (xa - yb) + (xb + ya - yb) t
        a, b = u.a, u.b
        return LatticePoint(self.x * a - self.y * b, self.x * b + self.y * a - self.y * b)

    def conjugate(self) -> "LatticePoint":
        # omega is real; conj(t) = -1 - t
        return LatticePoint(self.x - self.y, -self.y)

    def norm(self) -> Fraction:
        """|z / omega|^2."""
        return self.x * self.x - self.x * self.y + self.y * self.y

    def reduce(self) -> tuple["LatticePoint", EisensteinInt]:
        """Exact nearest lattice point: self = reduced + lam."""
        fx, fy = math.floor(self.x), math.floor(self.y)
        best = None
        # the nearest point is a vertex of the enclosing parallelogram, which
        # splits into two equilateral triangles
        for a in (fx, fx + 1):
            for b in (fy, fy + 1):
                r = LatticePoint(self.x - a, self.y - b)
                key = (r.norm(), a, b)
                if best is None or key < best[0]:
                    best = (key, r, EisensteinInt(a, b))
        return best[1], best[2]

    def __str__(self):
        return f"omega*({self.x} + {self.y}*t)"


# ---------------------------------------------------------------------------
# Laurent coefficients and the period


def laurent_coefficients(order: int) -> list[Fraction]:
    """Exact coefficients c_1..c_order of wp(z) - z^-2 = sum c_k z^(2k).

    Generated from g2 = 0, g3 = 1 by the standard recurrence
    c_k = 3/((2k+3)(k-2)) * sum_{m=1}^{k-2} c_m c_{k-1-m}.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    g2, g3 = Fraction(0), Fraction(1)
    c = [None, g2 / 20, g3 / 28]
    for k in range(3, order + 1):
        s = sum((c[m] * c[k - 1 - m] for m in range(1, k - 1)), Fraction(0))
        c.append(Fraction(3, (2 * k + 3) * (k - 2)) * s)
    return c[1:]


GUARD_SHIFT = 5


def series_order(digits: int) -> int:
    """Number of z^2-powers needed when |z| <= omega/sqrt(3)."""
    return math.ceil(digits * math.log(10) / math.log(3)) + 8


def _omega_lattice_sum(num: Numerics):
    """omega = (140 G6(Z[t]))^(1/6), G6 summed row by row.

    Each row sum over m of (m + n t)^-6 is replaced by its Lipschitz series,
    which turns the lattice sum into 2 zeta(6) - 2 (2 pi)^6/5! sum sigma_5(m) q^m
    with q = exp(2 pi i t) = -exp(-pi sqrt 3).
    """
    mp = num.mp
    q = -mp.exp(-mp.pi * mp.sqrt(3))
    eps = num.eps(-GUARD_SHIFT)
    total = mp.mpf(0)
    n = 1
    while abs(q) ** n > eps:
        qn = q**n
        r, term_q = 1, qn
        while True:
            term = mp.mpf(r) ** 5 * term_q
            total += term
            if abs(term) < eps * abs(total) and r > 1:
                break
            r += 1
            term_q *= qn
        n += 1
    g6 = 2 * mp.zeta(6) - 2 * (2 * mp.pi) ** 6 / 120 * total
    return mp.root(140 * g6, 6)



def _omega_quadrature(num: Numerics):
    """omega = 2 * int_{a}^{inf} dx / sqrt(4x^3 - 1), a = 4^(-1/3).

    The substitution x = a + u^2 removes the endpoint singularity:
    omega = 2 * int_0^inf du / sqrt(3a^2 + 3a u^2 + u^4).
    """
    mp = num.mp
    a = mp.cbrt(mp.mpf(1) / 4)
    f = lambda u: 1 / mp.sqrt(3 * a * a + 3 * a * u * u + u**4)
    value, err = mp.quad(f, [0, 1, 4, mp.inf], error=True, maxdegree=12)
    return 2 * value


@lru_cache(maxsize=None)
def omega_routes(precision: int):
    num = numerics(precision)
    return _omega_lattice_sum(num), _omega_quadrature(num)


@lru_cache(maxsize=None)
def compute_omega(precision: int):
    """The real period of wp'^2 = 4 wp^3 - 1, checked by two routes."""
    num = numerics(precision)
    a, b = omega_routes(precision)
    if abs(a - b) > num.eps(5) * a:
        raise OmegaConsistencyError(f"omega routes disagree: {a} vs {b}")
    return a


# ---------------------------------------------------------------------------
# evaluation context


class LatticeContext:
    """Precomputed data for evaluating wp, wp', zeta and E1* on L_omega."""

    def __init__(self, precision: int):
        self.num = num = numerics(precision)
        self.precision = precision
        mp = num.mp
        self.omega = compute_omega(precision)
        self.order = series_order(mp.dps)
        self.laurent = laurent_coefficients(self.order)
        # only c_2, c_5, c_8, ... survive because g2 = 0
        assert all(c == 0 for k, c in enumerate(self.laurent, 1) if k % 3 != 2)
        sparse = [(k, c) for k, c in enumerate(self.laurent, 1) if k % 3 == 2]
        self._wp_coeffs = [num.fraction(c) for _, c in sparse]
        self._dwp_coeffs = [num.fraction(c * (2 * k)) for k, c in sparse]
        self._zeta_coeffs = [num.fraction(c / (2 * k + 1)) for k, c in sparse]
        c = num.constants
        self.eta_coeff = 2 * c.pi / (c.sqrt3 * self.omega**2)
        self.covering_radius = self.omega / c.sqrt3
        self.pole_tol = num.eps(5) * self.omega
        self._check_tol = num.eps(8)

    # -- conversions -------------------------------------------------
    def value(self, z):
        """Complex value of a LatticePoint (or pass a number through)."""
        if isinstance(z, LatticePoint):
            num = self.num
            return self.omega * (num.fraction(z.x) + num.fraction(z.y) * num.constants.tau)
        return self.num.mp.mpc(z)

    def lattice_value(self, lam: EisensteinInt):
        return self.omega * self.num.eisenstein(lam)

    def point(self, num, den=ONE) -> LatticePoint:
        return LatticePoint.ratio(num, den)

    def division_point(self, c: EisensteinInt, D: EisensteinInt) -> LatticePoint:
        """sqrt(-3) c omega / D."""
        return LatticePoint.ratio(SQRT_M3 * c, D)

    # -- reduction ---------------------------------------------------
    def reduce(self, z):
        """Return (z_red, lam) with z = z_red + lam*omega, |z_red| <= omega/sqrt(3)."""
        if isinstance(z, LatticePoint):
            r, lam = z.reduce()
            return self.value(r), lam
        mp, c = self.num.mp, self.num.constants
        z = mp.mpc(z)
        w = z / self.omega
        y = w.imag * 2 / c.sqrt3
        x = w.real + y / 2
        fx, fy = int(mp.floor(x)), int(mp.floor(y))
        best = None
        for a in (fx, fx + 1):
            for b in (fy, fy + 1):
                lam = EisensteinInt(a, b)
                r = z - self.lattice_value(lam)
                d = abs(r)
                if best is None or d < best[0]:
                    best = (d, r, lam)
        return best[1], best[2]

    def _reduced(self, z):
        zr, lam = self.reduce(z)
        if isinstance(z, LatticePoint):
            if z.x == lam.a and z.y == lam.b:
                raise PoleAtLattice(str(z))
        elif abs(zr) <= self.pole_tol:
            raise PoleAtLattice(str(z))
        return zr, lam

    # -- series on the reduced argument -----------------------------
    def _series_wp(self, z):
        z2 = z * z
        w = z2 * z2 * z2
        s = 0
        for c in reversed(self._wp_coeffs):
            s = s * w + c
        t = 0
        for c in reversed(self._dwp_coeffs):
            t = t * w + c
        p = 1 / z2 + z2 * z2 * s
        dp = -2 / (z2 * z) + z2 * z * t
        return p, dp

    def _series_zeta(self, z):
        z2 = z * z
        w = z2 * z2 * z2
        s = 0
        for c in reversed(self._zeta_coeffs):
            s = s * w + c
        return 1 / z - z2 * z2 * z * s

    # -- public evaluators ------------------------------------------
    def wp(self, z):
        """(wp(z), wp'(z)); raises PoleAtLattice at lattice points."""
        zr, _ = self._reduced(z)
        p, dp = self._series_wp(zr)
        scale = max(1, abs(p) ** 3)
        if abs(dp * dp - 4 * p**3 + 1) > self._check_tol * scale:
            raise PrecisionError(f"differential equation check failed at {z}")
        return p, dp

    def zeta(self, z):
        """Weierstrass zeta, with the quasi-period correction for L_omega."""
        zr, lam = self._reduced(z)
        value = self._series_zeta(zr)
        if lam:
            value += self.eta(lam)
        return value

    def eta(self, lam: EisensteinInt):
        """Quasi-period zeta(z + lam*omega) - zeta(z) = 2 pi conj(lam*omega)/(sqrt3 omega^2)."""
        return self.eta_coeff * self.omega * self.num.eisenstein(lam.conjugate())

    def conj_value(self, z):
        if isinstance(z, LatticePoint):
            return self.value(z.conjugate())
        return self.num.mp.conj(self.num.mp.mpc(z))

    def e1_star(self, z):
        """E1*(z) = zeta(z) - 2 pi conj(z) / (sqrt3 omega^2)."""
        return self.zeta(z) - self.eta_coeff * self.conj_value(z)

    def g3_check(self, z):
        """|wp'^2 - 4 wp^3 + 1| at z (should vanish)."""
        p, dp = self.wp(z)
        return abs(dp * dp - 4 * p**3 + 1)


@lru_cache(maxsize=None)
def lattice_context(precision: int) -> LatticeContext:
    return LatticeContext(precision)


def reduce_mod_lattice(z, ctx: LatticeContext):
    return ctx.reduce(z)


def wp(z, ctx: LatticeContext):
    return ctx.wp(z)


def zeta(z, ctx: LatticeContext):
    return ctx.zeta(z)


def e1_star(z, ctx: LatticeContext):
    return ctx.e1_star(z)


# ---------------------------------------------------------------------------
# the exact special values used in the closed formula


def special_values(ctx: LatticeContext) -> list[dict]:
    """The seventeen exact wp/wp'/zeta values at 2-, 3- and 6-division points."""
    num, mp = ctx.num, ctx.num.mp
    c = num.constants
    pi, s3, r2, r4, i, om = c.pi, c.sqrt3, c.cbrt2, c.cbrt4, c.i, ctx.omega
    P = ctx.point
    rows = []

    def add(name, value, expected):
        rows.append({"name": name, "value": value, "expected": mp.mpc(expected),
                     "error": abs(value - expected)})

    w3 = ctx.wp(P(1, 3))
    w23 = ctx.wp(P(2, 3))
    w2 = ctx.wp(P(1, 2))
    w6 = ctx.wp(P(1, 6))
    ws = ctx.wp(P(SQRT_M3, 6))
    add("wp(omega/3) = 1", w3[0], 1)
    add("wp'(omega/3) = -sqrt3", w3[1], -s3)
    add("zeta(omega/2) = pi/(sqrt3 omega)", ctx.zeta(P(1, 2)), pi / (s3 * om))
    add("zeta(omega/3) = 2pi/(3 sqrt3 omega) + 1/sqrt3", ctx.zeta(P(1, 3)), 2 * pi / (3 * s3 * om) + 1 / s3)
    add("zeta(2omega/3) = 4pi/(3 sqrt3 omega) - 1/sqrt3", ctx.zeta(P(2, 3)), 4 * pi / (3 * s3 * om) - 1 / s3)
    add("wp'(omega/2) = 0", w2[1], 0)
    add("wp(2omega/3) = 1", w23[0], 1)
    add("wp'(2omega/3) = sqrt3", w23[1], s3)
    add("wp(omega/2) = cbrt2/2", w2[0], r2 / 2)
    add("zeta(5omega/6) = 5pi/(3 sqrt3 omega) + 1/sqrt3 + sqrt3/(cbrt2 - 2)", ctx.zeta(P(5, 6)),
        5 * pi / (3 * s3 * om) + 1 / s3 + s3 / (r2 - 2))
    add("zeta(omega/6) = pi/(3 sqrt3 omega) - 1/sqrt3 - sqrt3/(cbrt2 - 2)", ctx.zeta(P(1, 6)),
        pi / (3 * s3 * om) - 1 / s3 - s3 / (r2 - 2))
    add("wp(omega/6) = 1 + cbrt2 + cbrt4", w6[0], 1 + r2 + r4)
    add("wp'(omega/6) = -sqrt3 (3 + 2 cbrt2 + 2 cbrt4)", w6[1], -s3 * (3 + 2 * r2 + 2 * r4))
    add("wp(sqrt-3 omega/6) = -cbrt2", ws[0], -r2)
    add("wp(omega/sqrt-3) = 0", ctx.wp(P(1, SQRT_M3))[0], 0)
    add("wp'(sqrt-3 omega/6) = -3i", ws[1], -3 * i)
    add("zeta(sqrt-3 omega/6) = -pi i/(3 omega) - (i/2) cbrt4", ctx.zeta(P(SQRT_M3, 6)),
        -pi * i / (3 * om) - i / 2 * r4)
    return rows
