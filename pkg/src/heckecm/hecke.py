"""The Hecke characters psi_{D_T^3} and the closed formula for L_S(conj psi, 1).

For D = pi_1 ... pi_n (pi_k = 1 mod 12) and a subset T, the value
L_S(conj psi_{D_T^3}, 1) is

    -(omega / D) (2/D_T)_2^-1 [ sqrt3/4 * sum_c (c/D_T)_2 / (wp(sqrt(-3) c omega/D) + cbrt2)
                                - cbrt4/(4 sqrt3) * sum_c (c/D_T)_2 ]

with c over a residue system of (Z[t]/D)^x.  At D = 1 the only term sits at
a lattice point and contributes 0.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .eisenstein import (
    ONE,
    SQRT_M3,
    UNITS,
    ZERO,
    EisensteinError,
    EisensteinInt,
    ResidueSystem,
    SquarefreeD,
    SubsetSelector,
    power_residue_symbol,
    residue_system,
)
from .numerics import Numerics, numerics, parallel_map
from .weierstrass import LatticePoint, PoleAtLattice, PrecisionError, lattice_context


class CharacterError(ValueError):
    """Invalid input to the Hecke character, or inconsistent evaluations."""


@dataclass(frozen=True)
class HeckeCharacterSpec:
    """psi_{D_T^3} together with the omitted prime set S = {pi_1..pi_n}."""

    D: SquarefreeD
    T: SubsetSelector

    @classmethod
    def of(cls, D: SquarefreeD, T: SubsetSelector | int) -> "HeckeCharacterSpec":
        return cls(D, as_subset(D, T))

    @property
    def D_T(self) -> EisensteinInt:
        return self.T.D_T

    @property
    def conductor(self) -> EisensteinInt:
        """Generator 2 sqrt(-3) D_T of the conductor of psi."""
        return 2 * SQRT_M3 * self.D_T

    @property
    def omitted_primes(self) -> tuple[EisensteinInt, ...]:
        return self.D.primes

    @property
    def curve_conductor_over_K(self) -> EisensteinInt:
        return 12 * self.D_T * self.D_T

    @property
    def analytic_conductor(self) -> int:
        """|d_K| * N(conductor) = 36 N(D_T)."""
        return 3 * self.conductor.norm()


def as_subset(D: SquarefreeD, T) -> SubsetSelector:
    if isinstance(T, SubsetSelector):
        return T
    return SubsetSelector(D, int(T))


def is_one_mod(x: EisensteinInt, m: int) -> bool:
    return x.a % m == 1 % m and x.b % m == 0


def psi_of_generator(alpha: EisensteinInt, spec: HeckeCharacterSpec) -> EisensteinInt:
    """psi_{D_T^3}((alpha)) for a generator alpha = 1 mod 6 coprime to 6D.

    Evaluated as conj((4 D_T^3/alpha)_6) * alpha and checked against the
    simplified form (D_T/alpha)_2 * alpha.
    """
    alpha = EisensteinInt.coerce(alpha)
    if not is_one_mod(alpha, 6):
        raise CharacterError(f"{alpha} is not congruent to 1 mod 6")
    if alpha.norm() == 1:
        return alpha
    D_T = spec.D_T
    try:
        sextic = power_residue_symbol(4 * D_T**3, alpha, 6)
        quad = power_residue_symbol(D_T, alpha, 2)
    except EisensteinError as exc:
        raise CharacterError(str(exc)) from exc
    if any(p.divides(alpha) for p in spec.D.primes):
        raise CharacterError(f"{alpha} is not coprime to D")
    value = sextic.conjugate().as_eisenstein() * alpha
    if value != quad.as_eisenstein() * alpha:
        raise CharacterError(f"sextic and quadratic evaluations of psi disagree at {alpha}")
    return value


def primary_associate(pi: EisensteinInt) -> EisensteinInt:
    """The associate congruent to 1 mod 3 of an element coprime to 3."""
    for u in UNITS:
        x = u * pi
        if is_one_mod(x, 3):
            return x
    raise CharacterError(f"{pi} is not coprime to 3")


def psi_prime_ideal(pi: EisensteinInt, D_T: EisensteinInt) -> EisensteinInt:
    """psi_{D_T^3} on the prime ideal (pi); zero when (pi) divides the conductor.

    Uses the generator alpha = 1 mod 3: psi = conj((4 D_T^3/alpha)_6) alpha.
    """
    n = pi.norm()
    if n % 2 == 0 or n % 3 == 0 or pi.divides(D_T):
        return ZERO
    alpha = primary_associate(pi)
    return power_residue_symbol(4 * D_T**3, alpha, 6).conjugate().as_eisenstein() * alpha


# ---------------------------------------------------------------------------
# the closed formula


@dataclass
class LValueReport:
    D: SquarefreeD
    T: SubsetSelector
    precision: int
    L_S_formula: object
    sum1: object
    sum2: int
    two_symbol: int
    L_adjusted: object
    term_count: int
    wall_time: float = 0.0
    oracle_method: str | None = None
    oracle_value: object = None
    abs_diff: object = None

    @property
    def num(self) -> Numerics:
        return numerics(self.precision)

    def prefactor_residual(self):
        """|-(D/omega)(2/D_T)_2 L_S - rhs|, zero up to rounding."""
        num = self.num
        omega = lattice_context(self.precision).omega
        lhs = -num.eisenstein(self.D.D) / omega * self.two_symbol * self.L_S_formula
        return abs(lhs - formula_rhs(self.sum1, self.sum2, num))

    def to_json(self, timings: bool = False) -> dict:
        num = self.num
        out = {
            "schema": 1,
            "primes": [str(p) for p in self.D.primes],
            "D": str(self.D.D),
            "subset_mask": self.T.mask,
            "D_T": str(self.T.D_T),
            "precision": self.precision,
            "term_count": self.term_count,
            "two_symbol": self.two_symbol,
            "sum1": complex_json(self.sum1, num),
            "sum2": self.sum2,
            "L_S_formula": complex_json(self.L_S_formula, num),
            "L_adjusted": complex_json(self.L_adjusted, num),
            "oracle_method": self.oracle_method,
            "oracle_value": None if self.oracle_value is None else complex_json(self.oracle_value, num),
            "abs_diff": None if self.abs_diff is None else num.mp.nstr(self.abs_diff, 6),
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def complex_json(z, num: Numerics) -> dict:
    z = num.mp.mpc(z)
    return {"re": num.to_str(z.real), "im": num.to_str(z.imag)}


def formula_rhs(sum1, sum2: int, num: Numerics):
    c = num.constants
    return c.sqrt3 / 4 * sum1 - c.cbrt4 / (4 * c.sqrt3) * sum2


def _reciprocal_term(args):
    precision, point = args
    ctx = lattice_context(precision)
    try:
        p, _ = ctx.wp(point)
    except PoleAtLattice:
        return None
    return ctx.num.pack(1 / (p + ctx.num.constants.cbrt2))


def reciprocal_terms(system: ResidueSystem, precision: int, workers: int = 1) -> list:
    """1/(wp(sqrt(-3) c omega/D) + cbrt2) for every c; 0 at a lattice point."""
    ctx = lattice_context(precision)
    D = system.modulus
    points = [(precision, LatticePoint.ratio(SQRT_M3 * c, D)) for c in system.reps]
    packed = parallel_map(_reciprocal_term, points, workers)
    zero = ctx.num.mp.mpc(0)
    return [zero if t is None else ctx.num.unpack(t) for t in packed]


def euler_factors(D: SquarefreeD, T: SubsetSelector, num: Numerics) -> list:
    """1 - (D_T/pi_k)_2 / pi_k for every pi_k dividing D/D_T."""
    out = []
    D_T = T.D_T
    for k in T.complement_indices:
        pi = D.primes[k]
        chi = power_residue_symbol(D_T, pi, 2).sign
        out.append(1 - chi / num.eisenstein(pi))
    return out


def euler_adjust(L_S, D: SquarefreeD, T, precision: int):
    """L(conj psi_{D_T^3}, 1) from L_S by restoring the Euler factors at pi_k | D/D_T.

    Primes dividing D_T are ramified for psi and carry no Euler factor.
    """
    T = as_subset(D, T)
    num = numerics(precision)
    value = num.mp.mpc(L_S)
    for f in euler_factors(D, T, num):
        value /= f
    return value


def restrict_to_S(L, D: SquarefreeD, T, precision: int):
    """Inverse of :func:`euler_adjust`."""
    T = as_subset(D, T)
    num = numerics(precision)
    value = num.mp.mpc(L)
    for f in euler_factors(D, T, num):
        value *= f
    return value


def formula_l1(D: SquarefreeD, T=None, precision: int = 50, *, workers: int = 1,
               escalate: bool = False, system: ResidueSystem | None = None,
               terms: Sequence | None = None) -> LValueReport:
    """Evaluate L_S(conj psi_{D_T^3}, 1) by the closed formula.

    ``terms`` may carry precomputed reciprocal terms (see
    :func:`reciprocal_terms`) for the same residue system and precision.
    With ``escalate`` the computation is repeated at precision + 20 and the
    two values must agree to 10^(-P+10).
    """
    start = time.perf_counter()
    T = D.full() if T is None else as_subset(D, T)
    num = numerics(precision)
    ctx = lattice_context(precision)
    if system is None:
        system = residue_system(D)
    if terms is None:
        terms = reciprocal_terms(system, precision, workers)
    chi = system.character(T.mask)
    sum1 = num.sum([t if s > 0 else -t for s, t in zip(chi, terms)])
    sum2 = sum(chi)
    two = power_residue_symbol(2, T.D_T, 2).sign
    L_S = -ctx.omega / num.eisenstein(D.D) * two * formula_rhs(sum1, sum2, num)
    if escalate:
        hi = formula_l1(D, T, precision + 20, workers=workers, system=system)
        if abs(hi.L_S_formula - L_S) > num.eps(10) * max(1, abs(L_S)):
            raise PrecisionError(
                f"precision escalation disagreement {num.mp.nstr(abs(hi.L_S_formula - L_S), 5)}")
    return LValueReport(
        D=D, T=T, precision=precision, L_S_formula=L_S, sum1=sum1, sum2=sum2,
        two_symbol=two, L_adjusted=euler_adjust(L_S, D, T, precision),
        term_count=len(system), wall_time=time.perf_counter() - start,
    )


def formula_all_subsets(D: SquarefreeD, precision: int = 50, workers: int = 1):
    """Reports for every subset T, sharing one set of wp evaluations."""
    system = residue_system(D)
    terms = reciprocal_terms(system, precision, workers)
    reports = [formula_l1(D, T, precision, system=system, terms=terms) for T in D.subsets()]
    return reports, system, terms


def subset_aggregation_residual(D: SquarefreeD, precision: int = 50, workers: int = 1):
    """Residual of the identity obtained by summing the formula over all T.

    sum_T (D/omega)(2/D_T)_2 L_S(T)
        = -(sqrt3/4) sum_c prod_k (1 + (c/pi_k)_2) / (wp + cbrt2) + cbrt4/(4 sqrt3) #C
    Returns (lhs, rhs, |lhs - rhs|).
    """
    reports, system, terms = formula_all_subsets(D, precision, workers)
    num = numerics(precision)
    c = num.constants
    omega = lattice_context(precision).omega
    Dc = num.eisenstein(D.D)
    lhs = num.sum([Dc / omega * r.two_symbol * r.L_S_formula for r in reports])
    single = [system.character(1 << k) for k in range(D.n)]
    weighted = []
    for i, t in enumerate(terms):
        w = math.prod(1 + s[i] for s in single)
        weighted.append(w * t)
    rhs = -c.sqrt3 / 4 * num.sum(weighted) + c.cbrt4 / (4 * c.sqrt3) * len(system)
    return lhs, rhs, abs(lhs - rhs)


# ---------------------------------------------------------------------------
# proof-level identities


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: object
    tolerance: object
    offending: list = field(default_factory=list)

    def to_json(self, num: Numerics) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": num.mp.nstr(self.residual, 6) if not isinstance(self.residual, int) else self.residual,
            "tolerance": num.mp.nstr(self.tolerance, 3) if self.tolerance is not None else None,
            "offending": [str(c) for c in self.offending],
        }


def identity_checks(D: SquarefreeD, T=None, precision: int = 50, *, tol=None,
                    tol_2_16=None, sample: int | None = None) -> list[CheckResult]:
    """The vanishing sums behind the closed formula, plus the shifted-zeta identity.

    (i)   sum_c (c/D_T)_2 zeta(z_c) = 0
    (ii)  sum_c (c/D_T)_2 wp'(z_c)/(wp(z_c) + cbrt2) = 0
    (iii) sum_c (c/D_T)_2 conj(c) = 0 exactly
    (iv)  zeta(z_c + sqrt(-3) omega/6) = zeta(z_c) - pi i/(3 omega) - (i/2) cbrt4
                                         + (wp'(z_c) + 3i) / (2 (wp(z_c) + cbrt2))
    with z_c = sqrt(-3) c omega / D.  ``sample`` limits (iv) to that many c.
    """
    if D.n == 0:
        raise ValueError("identity checks need a non-unit D")
    T = D.full() if T is None else as_subset(D, T)
    num = numerics(precision)
    mp = num.mp
    ctx = lattice_context(precision)
    k = num.constants
    system = residue_system(D)
    chi = system.character(T.mask)
    if tol is None:
        tol = num.eps(12) * len(system)
    if tol_2_16 is None:
        tol_2_16 = num.eps(10)
    shift = LatticePoint.ratio(SQRT_M3, 6)
    const = -k.pi * k.i / (3 * ctx.omega) - k.i / 2 * k.cbrt4

    zetas, ratios = [], []
    worst, bad = mp.mpf(0), []
    step = 1 if not sample else max(1, len(system) // sample)
    for idx, (c, s) in enumerate(zip(system.reps, chi)):
        z = LatticePoint.ratio(SQRT_M3 * c, D.D)
        p, dp = ctx.wp(z)
        zc = ctx.zeta(z)
        zetas.append(s * zc)
        ratios.append(s * dp / (p + k.cbrt2))
        if idx % step == 0:
            lhs = ctx.zeta(z + shift)
            rhs = zc + const + (dp + 3 * k.i) / (2 * (p + k.cbrt2))
            r = abs(lhs - rhs)
            worst = max(worst, r)
            if r > tol_2_16:
                bad.append(c)

    conj_sum = ZERO
    for c, s in zip(system.reps, chi):
        conj_sum = conj_sum + (c.conjugate() if s > 0 else -c.conjugate())

    r1 = abs(num.sum(zetas))
    r2 = abs(num.sum(ratios))
    return [
        CheckResult("sum chi(c) zeta(z_c) = 0", r1 <= tol, r1, tol),
        CheckResult("sum chi(c) wp'(z_c)/(wp(z_c)+cbrt2) = 0", r2 <= tol, r2, tol),
        CheckResult("sum chi(c) conj(c) = 0 (exact)", not conj_sum, conj_sum.norm(), 0),
        CheckResult("zeta(z_c + sqrt(-3) omega/6) decomposition", not bad, worst, tol_2_16, bad),
    ]


def symbol_checks(D: SquarefreeD) -> list[CheckResult]:
    """Exact symbol facts used by the formula, checked for every c and T.

    For alpha = 6c + D: alpha = 1 mod 6, (2/alpha)_3 = 1, and for T non-empty
    (D_T/alpha)_2 = (alpha/D_T)_2 = (2c/D_T)_2 with the sextic and quadratic
    forms of psi agreeing.  Also (-1/D_T)_2 = 1, the character sums, and the
    subset sums of (c/D_T)_2.
    """
    from .valuation import subset_symbol_sums

    system = residue_system(D)
    subsets = [T for T in D.subsets() if T.mask]
    specs = [HeckeCharacterSpec(D, T) for T in subsets]
    bad = {name: [] for name in ("congruence", "cubic", "reciprocity", "psi", "subset")}
    for c in system.reps:
        alpha = 6 * c + D.D
        if not is_one_mod(alpha, 6):
            bad["congruence"].append(c)
            continue
        if power_residue_symbol(2, alpha, 3).k != 0:
            bad["cubic"].append(c)
        for spec in specs:
            D_T = spec.D_T
            chain = (power_residue_symbol(D_T, alpha, 2), power_residue_symbol(alpha, D_T, 2),
                     power_residue_symbol(2 * c, D_T, 2))
            if len(set(chain)) != 1:
                bad["reciprocity"].append(c)
            try:
                psi_of_generator(alpha, spec)
            except CharacterError:
                bad["psi"].append(c)
        try:
            subset_symbol_sums(D, c)
        except ArithmeticError:
            bad["subset"].append(c)

    out = [
        CheckResult("6c + D = 1 mod 6", not bad["congruence"], len(bad["congruence"]), 0, bad["congruence"]),
        CheckResult("(2/(6c+D))_3 = 1", not bad["cubic"], len(bad["cubic"]), 0, bad["cubic"]),
        CheckResult("(D_T/(6c+D))_2 = (6c+D/D_T)_2 = (2c/D_T)_2", not bad["reciprocity"],
                    len(bad["reciprocity"]), 0, bad["reciprocity"]),
        CheckResult("sextic psi = quadratic psi on 6c + D", not bad["psi"], len(bad["psi"]), 0, bad["psi"]),
        CheckResult("subset sums in {0, 2^n}, brute force = product", not bad["subset"],
                    len(bad["subset"]), 0, bad["subset"]),
    ]
    minus = [T for T in subsets if power_residue_symbol(-1, T.D_T, 2).sign != 1]
    out.append(CheckResult("(-1/D_T)_2 = 1", not minus, len(minus), 0, [T.D_T for T in minus]))
    wrong = []
    for T in D.subsets():
        chi = system.character(T.mask)
        expected = len(system) if T.mask == 0 else 0
        total = ZERO
        for c, s in zip(system.reps, chi):
            total = total + (c.conjugate() if s > 0 else -c.conjugate())
        if sum(chi) != expected or total:
            wrong.append(T.D_T)
    out.append(CheckResult("sum chi = #C or 0, sum chi(c) conj(c) = 0", not wrong, len(wrong), 0, wrong))
    return out
