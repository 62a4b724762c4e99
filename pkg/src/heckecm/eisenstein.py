"""Exact arithmetic in the Eisenstein integers Z[t], t^2 + t + 1 = 0.

Elements are written ``a + b*t`` with ``t = (-1 + sqrt(-3))/2``.  Besides the
ring operations this module provides the Euclidean structure, primality,
residue fields of prime elements, power-residue symbols of degree 2, 3 and 6
(extended to composite moduli multiplicatively), and the negation-symmetric
residue systems used by the L-value formula.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import sympy


class EisensteinError(ValueError):
    """Raised for invalid arguments to an arithmetic operation."""


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    a: int
    b: int

    # -- constructors -------------------------------------------------
    @classmethod
    def coerce(cls, x: "EisensteinInt | int") -> "EisensteinInt":
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    @classmethod
    def parse(cls, text: str) -> "EisensteinInt":
        return parse_eisenstein(text)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = EisensteinInt.coerce(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = EisensteinInt.coerce(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return EisensteinInt.coerce(other) - self

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other):
        other = EisensteinInt.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        # t^2 = -1 - t
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise EisensteinError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        return eisenstein_divmod(self, EisensteinInt.coerce(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __bool__(self):
        return bool(self.a or self.b)

    # -- structure ----------------------------------------------------
    def conjugate(self) -> "EisensteinInt":
        # conj(t) = -1 - t
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def trace(self) -> int:
        return 2 * self.a - self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def associates(self) -> list["EisensteinInt"]:
        return [u * self for u in UNITS]

    def divides(self, other: "EisensteinInt | int") -> bool:
        if not self:
            return not EisensteinInt.coerce(other)
        return not (EisensteinInt.coerce(other) % self)

    def exact_div(self, other: "EisensteinInt | int") -> "EisensteinInt":
        q, r = divmod(self, other)
        if r:
            raise EisensteinError(f"{other} does not divide {self}")
        return q

    def is_congruent(self, other, modulus) -> bool:
        return EisensteinInt.coerce(modulus).divides(self - other)

    def coords(self, modulus: "EisensteinInt") -> tuple[Fraction, Fraction]:
        """Coordinates of ``self / modulus`` in the basis (1, t)."""
        n = modulus.norm()
        w = self * modulus.conjugate()
        return Fraction(w.a, n), Fraction(w.b, n)

    def __complex__(self):
        return complex(self.a - self.b / 2, self.b * math.sqrt(3) / 2)

    def __str__(self):
        return format_eisenstein(self)

    def __repr__(self):
        return f"EisensteinInt({self.a}, {self.b})"


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
TAU = EisensteinInt(0, 1)
SQRT_M3 = EisensteinInt(1, 2)  # 1 + 2t = sqrt(-3)
# (-1)^s t^k ordered by (s, k)
UNITS = (ONE, TAU, EisensteinInt(-1, -1), -ONE, -TAU, EisensteinInt(1, 1))


_TERM = re.compile(r"([+-]?)(\d*)(\*?t)?")


def parse_eisenstein(text: str) -> EisensteinInt:
    """Parse ``a+b*t`` style text (whitespace-insensitive, ``t`` is tau)."""
    s = "".join(text.split())
    if not s:
        raise EisensteinError("empty Eisenstein integer")
    a = b = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise EisensteinError(f"cannot parse {text!r}")
        sign, digits, t = m.groups()
        if pos > 0 and not sign:
            raise EisensteinError(f"cannot parse {text!r}")
        if not digits and not t:
            raise EisensteinError(f"cannot parse {text!r}")
        value = int(digits) if digits else 1
        if t and t.startswith("*") and not digits:
            raise EisensteinError(f"cannot parse {text!r}")
        if sign == "-":
            value = -value
        if t:
            b += value
        else:
            a += value
        pos = m.end()
    return EisensteinInt(a, b)


def format_eisenstein(x: EisensteinInt) -> str:
    if x.b == 0:
        return str(x.a)
    if x.a == 0:
        return f"{x.b}*t"
    sign = "+" if x.b > 0 else "-"
    return f"{x.a}{sign}{abs(x.b)}*t"


# ---------------------------------------------------------------------------
# Euclidean structure


def _round_half_toward_zero(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0), ties broken toward zero."""
    q = (2 * abs(num) + den - 1) // (2 * den)  # ceil(|num|/den - 1/2)
    return q if num >= 0 else -q


def eisenstein_divmod(x: EisensteinInt, y: EisensteinInt):
    """Return (q, r) with x = q*y + r and norm(r) < norm(y)."""
    if not y:
        raise ZeroDivisionError("Eisenstein division by zero")
    n = y.norm()
    w = x * y.conjugate()
    q = EisensteinInt(_round_half_toward_zero(w.a, n), _round_half_toward_zero(w.b, n))
    return q, x - q * y


def norm(x: EisensteinInt) -> int:
    return x.norm()


def canonical_associate(x: EisensteinInt) -> EisensteinInt:
    """Associate with maximal real part a - b/2, ties by maximal b."""
    if not x:
        return x
    return max(x.associates(), key=lambda u: (2 * u.a - u.b, u.b))


def gcd(x: EisensteinInt, y: EisensteinInt) -> EisensteinInt:
    x, y = EisensteinInt.coerce(x), EisensteinInt.coerce(y)
    if not x and not y:
        raise EisensteinError("gcd(0, 0) is undefined")
    while y:
        x, y = y, x % y
    return canonical_associate(x)


def unit_part(x: EisensteinInt, canonical: EisensteinInt) -> EisensteinInt:
    for u in UNITS:
        if u * canonical == x:
            return u
    raise EisensteinError(f"{canonical} is not an associate of {x}")


# ---------------------------------------------------------------------------
# primes


def is_prime(x: EisensteinInt) -> bool:
    x = EisensteinInt.coerce(x)
    if not x or x.is_unit():
        raise EisensteinError("primality is only defined for non-zero non-units")
    n = x.norm()
    if sympy.isprime(n):
        return True
    q = math.isqrt(n)
    if q * q != n or q % 3 != 2 or not sympy.isprime(q):
        return False
    return x.a % q == 0 and x.b % q == 0


def is_primary(x: EisensteinInt, flag: str = "12") -> bool:
    """Congruence used for the prime list: 1 mod 12, or 1 mod 4*sqrt(-3)."""
    return modulus_for_flag(flag).divides(x - ONE)


def modulus_for_flag(flag: str) -> EisensteinInt:
    if flag == "12":
        return EisensteinInt(12, 0)
    if flag == "4sqrt-3":
        return 4 * SQRT_M3
    raise EisensteinError(f"unknown congruence flag {flag!r} (use '12' or '4sqrt-3')")


def find_primes(norm_bound: int, flag: str = "12") -> list[EisensteinInt]:
    """All primes congruent to 1 modulo the flagged modulus, norm <= bound.

    Sorted by (norm, a, b).  Each associate class contributes at most one
    element because the six units are pairwise incongruent modulo 12 and
    modulo 4*sqrt(-3).
    """
    if norm_bound < 1:
        raise EisensteinError("norm bound must be >= 1")
    modulus = modulus_for_flag(flag)
    # 1 mod 12:           12 | b and a = 1 mod 12
    # 1 mod 4*sqrt(-3):    4 | b and a = 1 + 2b mod 12
    b_step = 12 if flag == "12" else 4
    out = []
    bmax = math.isqrt(4 * norm_bound // 3) + 1
    for b in range(-(bmax // b_step) * b_step, bmax + 1, b_step):
        # (2a - b)^2 + 3 b^2 <= 4 * bound
        rest = 4 * norm_bound - 3 * b * b
        if rest < 0:
            continue
        r = math.isqrt(rest)
        lo = (b - r) // 2 - 1
        a0 = lo + (1 + 2 * b - lo) % 12
        for a in range(a0, (b + r) // 2 + 2, 12):
            x = EisensteinInt(a, b)
            n = x.norm()
            if n > norm_bound or n < 2:
                continue
            if modulus.divides(x - ONE) and sympy.isprime(n):
                out.append(x)
    out.sort(key=lambda x: (x.norm(), x.a, x.b))
    return out


@lru_cache(maxsize=None)
def prime_above(p: int) -> EisensteinInt:
    """A prime element of norm p (p = 3 or p = 1 mod 3), canonical associate."""
    if p == 3:
        return canonical_associate(SQRT_M3)
    if p % 3 != 1 or not sympy.isprime(p):
        raise EisensteinError(f"{p} does not split in Z[t]")
    r = cube_root_of_unity_mod(p)
    return gcd(EisensteinInt(p, 0), EisensteinInt(-r, 1))


@lru_cache(maxsize=None)
def cube_root_of_unity_mod(p: int) -> int:
    """Smallest r with r^2 + r + 1 = 0 mod p, for p = 1 mod 3."""
    for g in range(2, p):
        r = pow(g, (p - 1) // 3, p)
        if r != 1:
            return min(r, r * r % p)
    raise EisensteinError(f"no cube root of unity modulo {p}")


def factor(x: EisensteinInt) -> list[tuple[EisensteinInt, int]]:
    """Prime factorisation as (canonical prime, exponent) pairs; unit omitted."""
    x = EisensteinInt.coerce(x)
    if not x:
        raise EisensteinError("cannot factor zero")
    return list(_factor_cached(x.a, x.b))


@lru_cache(maxsize=1 << 16)
def _factor_cached(a: int, b: int) -> tuple[tuple[EisensteinInt, int], ...]:
    x = EisensteinInt(a, b)
    out = []
    for p, e in sorted(sympy.factorint(x.norm()).items()):
        if p % 3 == 2:
            out.append((EisensteinInt(p, 0), e // 2))
            x = x.exact_div(EisensteinInt(p, 0) ** (e // 2))
            continue
        candidates = [prime_above(p)]
        if p != 3:
            candidates.append(canonical_associate(candidates[0].conjugate()))
        for pi in candidates:
            k = 0
            while pi.divides(x):
                x = x.exact_div(pi)
                k += 1
            if k:
                out.append((pi, k))
    if not x.is_unit():
        raise EisensteinError("factorisation did not terminate in a unit")
    return tuple(out)


# ---------------------------------------------------------------------------
# roots of unity and residue fields


@dataclass(frozen=True, slots=True)
class UnitRoot:
    """The unit (-1)^sign_bit * t^k."""

    sign_bit: int = 0
    k: int = 0

    def __post_init__(self):
        if self.sign_bit not in (0, 1) or self.k not in (0, 1, 2):
            raise EisensteinError(f"invalid unit root ({self.sign_bit}, {self.k})")

    def __mul__(self, other: "UnitRoot") -> "UnitRoot":
        return UnitRoot((self.sign_bit + other.sign_bit) % 2, (self.k + other.k) % 3)

    def __pow__(self, e: int) -> "UnitRoot":
        return UnitRoot((self.sign_bit * e) % 2, (self.k * e) % 3)

    def conjugate(self) -> "UnitRoot":
        return UnitRoot(self.sign_bit, (-self.k) % 3)

    def inverse(self) -> "UnitRoot":
        return self.conjugate()

    @property
    def sign(self) -> int:
        return -1 if self.sign_bit else 1

    def is_real(self) -> bool:
        return self.k == 0

    def __int__(self):
        if self.k:
            raise EisensteinError(f"{self} is not a real unit")
        return self.sign

    def as_eisenstein(self) -> EisensteinInt:
        return UNITS[3 * self.sign_bit + self.k]

    @classmethod
    def from_eisenstein(cls, u: EisensteinInt) -> "UnitRoot":
        i = UNITS.index(u)
        return cls(i // 3, i % 3)

    def to_json(self) -> dict:
        return {"sign": self.sign, "tau_exp": self.k}

    def __str__(self):
        return str(self.as_eisenstein())


UNIT_ONE = UnitRoot()


class ResidueField:
    """The finite field Z[t]/(pi) for a prime element pi coprime to 6.

    Split primes (norm p) are modelled as F_p via t -> r with pi | t - r;
    inert primes q are modelled as Z[t]/q, elements being reduced
    EisensteinInts.
    """

    def __init__(self, pi: EisensteinInt):
        pi = EisensteinInt.coerce(pi)
        if not is_prime(pi):
            raise EisensteinError(f"{pi} is not prime")
        self.pi = pi
        self.order = pi.norm()
        if math.gcd(self.order, 6) != 1:
            raise EisensteinError(f"residue symbols need a modulus coprime to 6, got {pi}")
        if sympy.isprime(self.order):
            self.split = True
            self.p = self.order
            # pi = a + b t with p not dividing b; t = -a/b mod p
            self.r = (-pi.a * pow(pi.b, -1, self.p)) % self.p
        else:
            self.split = False
            self.p = math.isqrt(self.order)
            self.r = None
        self._unit_residues = {self.reduce(u): UnitRoot.from_eisenstein(u) for u in UNITS}

    def reduce(self, x: EisensteinInt):
        x = EisensteinInt.coerce(x)
        if self.split:
            return (x.a + x.b * self.r) % self.p
        return EisensteinInt(x.a % self.p, x.b % self.p)

    def mul(self, x, y):
        if self.split:
            return x * y % self.p
        return self.reduce(x * y)

    def pow(self, x, e: int):
        if self.split:
            return pow(x, e, self.p)
        result, base = self.reduce(ONE), x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, x):
        if self.split:
            return pow(x, -1, self.p)
        return self.pow(x, self.order - 2)

    def is_zero(self, x) -> bool:
        return not x

    def lift(self, x) -> EisensteinInt:
        return EisensteinInt(x, 0) if self.split else x

    def elements(self) -> Iterator:
        """All field elements in lexicographic order."""
        if self.split:
            return iter(range(self.p))
        return (EisensteinInt(a, b) for a in range(self.p) for b in range(self.p))

    def unit_root(self, x) -> UnitRoot:
        """Identify a residue that is a sixth root of unity."""
        try:
            return self._unit_residues[x]
        except KeyError:
            raise EisensteinError(f"residue {x} is not a sixth root of unity mod {self.pi}") from None

    def symbol(self, alpha: EisensteinInt, degree: int) -> UnitRoot:
        x = self.reduce(alpha)
        if self.is_zero(x):
            raise EisensteinError(f"{alpha} is not coprime to {self.pi}")
        return self.unit_root(self.pow(x, (self.order - 1) // degree))

    def legendre(self, x) -> int:
        """Quadratic character of an already reduced non-zero residue."""
        if self.split:
            return 1 if pow(x, (self.p - 1) // 2, self.p) == 1 else -1
        return self.unit_root(self.pow(x, (self.order - 1) // 2)).sign


@lru_cache(maxsize=4096)
def residue_field(pi: EisensteinInt) -> ResidueField:
    return ResidueField(canonical_associate(pi))


def power_residue_symbol(alpha: EisensteinInt, beta: EisensteinInt, degree: int) -> UnitRoot:
    """(alpha / beta)_degree for degree in {2, 3, 6}.

    For composite beta the symbol is the product over the prime factors
    (Jacobi convention).  Unit beta gives 1.  Non-coprime arguments and beta
    divisible by 2 or sqrt(-3) raise.
    """
    if degree not in (2, 3, 6):
        raise EisensteinError(f"degree must be 2, 3 or 6, got {degree}")
    alpha, beta = EisensteinInt.coerce(alpha), EisensteinInt.coerce(beta)
    if not beta:
        raise EisensteinError("symbol modulo zero")
    if beta.is_unit():
        return UNIT_ONE
    if beta.norm() % 2 == 0 or beta.norm() % 3 == 0:
        raise EisensteinError(f"modulus {beta} is divisible by 2 or sqrt(-3)")
    result = UNIT_ONE
    for pi, e in factor(beta):
        result = result * residue_field(pi).symbol(alpha, degree) ** e
    return result


def quadratic_symbol(alpha, beta) -> int:
    return power_residue_symbol(alpha, beta, 2).sign


# ---------------------------------------------------------------------------
# prime lists, subsets and residue systems


@dataclass(frozen=True)
class SquarefreeD:
    """D = pi_1 ... pi_n with each pi_k prime and congruent to 1 (flag)."""

    primes: tuple[EisensteinInt, ...]
    congruence_flag: str = "12"
    D: EisensteinInt = field(init=False)

    def __post_init__(self):
        primes = tuple(EisensteinInt.coerce(p) for p in self.primes)
        object.__setattr__(self, "primes", primes)
        modulus = modulus_for_flag(self.congruence_flag)
        for k, p in enumerate(primes):
            if p.norm() <= 1 or not is_prime(p):
                raise EisensteinError(f"{p} is not a prime element")
            if not modulus.divides(p - ONE):
                raise EisensteinError(f"{p} is not congruent to 1 mod {modulus}")
            for q in primes[:k]:
                if canonical_associate(p) == canonical_associate(q):
                    raise EisensteinError(f"{p} and {q} are associate")
        D = ONE
        for p in primes:
            D = D * p
        object.__setattr__(self, "D", D)

    @classmethod
    def parse(cls, text: str, flag: str = "12") -> "SquarefreeD":
        items = [s for s in text.split(",") if s.strip()]
        return cls(tuple(parse_eisenstein(s) for s in items), flag)

    @property
    def n(self) -> int:
        return len(self.primes)

    def subsets(self) -> list["SubsetSelector"]:
        return [SubsetSelector(self, m) for m in range(1 << self.n)]

    def full(self) -> "SubsetSelector":
        return SubsetSelector(self, (1 << self.n) - 1)

    def __str__(self):
        return ",".join(str(p) for p in self.primes)


@dataclass(frozen=True)
class SubsetSelector:
    """A subset T of {1..n} as a bitmask; bit k-1 selects pi_k."""

    D: SquarefreeD
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.D.n):
            raise EisensteinError(f"subset mask {self.mask:#b} out of range for n={self.D.n}")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.D.n) if self.mask >> k & 1)

    @property
    def complement_indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.D.n) if not self.mask >> k & 1)

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def D_T(self) -> EisensteinInt:
        out = ONE
        for k in self.indices:
            out = out * self.D.primes[k]
        return out

    @property
    def D_hat(self) -> EisensteinInt:
        out = ONE
        for k in self.complement_indices:
            out = out * self.D.primes[k]
        return out

    def __str__(self):
        return "{" + ",".join(str(k + 1) for k in self.indices) + "}"


@dataclass(frozen=True)
class ResidueSystem:
    """Representatives of (Z[t]/D)^x, stored as {c, -c} adjacent pairs.

    ``residues[i]`` holds the residue tuple of ``reps[i]`` in the residue
    fields of the primes of D, which makes quadratic characters cheap.
    """

    modulus: EisensteinInt
    primes: tuple[EisensteinInt, ...]
    reps: tuple[EisensteinInt, ...]
    residues: tuple[tuple, ...]

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def character(self, mask: int) -> list[int]:
        """Values of (c / D_T)_2 for every representative c."""
        selected = [k for k in range(len(self.primes)) if mask >> k & 1]
        tables = []
        for k in selected:
            F = residue_field(self.primes[k])
            tables.append({x: F.legendre(x) for x in F.elements() if not F.is_zero(x)})
        out = []
        for res in self.residues:
            chi = 1
            for k, table in zip(selected, tables):
                chi *= table[res[k]]
            out.append(chi)
        return out


def _crt_basis(primes: Sequence[EisensteinInt], D: EisensteinInt) -> list[EisensteinInt]:
    basis = []
    for pi in primes:
        F = residue_field(pi)
        M = D.exact_div(pi)
        inv = F.inverse(F.reduce(M))
        basis.append(M * F.lift(inv))
    return basis


def residue_system(D: SquarefreeD) -> ResidueSystem:
    """Deterministic negation-symmetric representatives of (Z[t]/D)^x.

    Classes are enumerated by their residue tuples in lexicographic order;
    each new class c is emitted together with -c.  Representatives are the
    Euclidean remainders of the CRT lift modulo D.
    """
    if D.n == 0:
        return ResidueSystem(ONE, (), (ZERO,), ((),))
    fields = [residue_field(p) for p in D.primes]
    basis = _crt_basis(D.primes, D.D)
    neg = [(lambda F: (lambda x: F.reduce(-F.lift(x))))(F) for F in fields]
    seen = set()
    reps, residues = [], []
    nonzero = [[x for x in F.elements() if not F.is_zero(x)] for F in fields]
    for tup in itertools.product(*nonzero):
        if tup in seen:
            continue
        c = ZERO
        for r, e, F in zip(tup, basis, fields):
            c = c + F.lift(r) * e
        c = c % D.D
        minus = tuple(f(r) for f, r in zip(neg, tup))
        seen.add(tup)
        seen.add(minus)
        reps.extend((c, -c))
        residues.extend((tup, minus))
    return ResidueSystem(D.D, D.primes, tuple(reps), tuple(residues))


def unit_group_order(D: SquarefreeD) -> int:
    return math.prod(p.norm() - 1 for p in D.primes)
