import itertools

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from heckecm.eisenstein import (
    ONE,
    SQRT_M3,
    TAU,
    UNITS,
    ZERO,
    EisensteinError,
    EisensteinInt,
    SquarefreeD,
    SubsetSelector,
    UnitRoot,
    canonical_associate,
    eisenstein_divmod,
    factor,
    find_primes,
    format_eisenstein,
    gcd,
    is_prime,
    parse_eisenstein,
    power_residue_symbol,
    prime_above,
    residue_field,
    residue_system,
    unit_group_order,
)

from conftest import PI, PI_BAR

small = st.integers(-60, 60)
elements = st.builds(EisensteinInt, small, small)
nonzero = elements.filter(bool)


def brute_norm(x):
    z = complex(x)
    return round(abs(z) ** 2)


# -- ring structure ----------------------------------------------------------


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(elements, elements)
def test_norm_is_multiplicative_and_matches_complex(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.norm() == brute_norm(x) >= 0
    assert (x.norm() == 0) == (not x)


@given(elements)
def test_conjugation(x):
    assert x.conjugate().conjugate() == x
    assert x * x.conjugate() == EisensteinInt(x.norm(), 0)
    assert complex(x.conjugate()) == pytest.approx(complex(x).conjugate())
    assert x.trace() == x.a * 2 - x.b


def test_units_and_small_norms():
    assert TAU * TAU + TAU + ONE == ZERO
    assert {u.norm() for u in UNITS} == {1}
    assert all(abs(complex(u) ** 6 - 1) < 1e-12 for u in UNITS)
    assert set(UNITS) == {x for x in (EisensteinInt(a, b) for a in range(-2, 3) for b in range(-2, 3)) if x.norm() == 1}
    assert TAU.norm() == 1
    assert SQRT_M3.norm() == 3
    assert EisensteinInt(13, 12).norm() == 157


@given(elements, nonzero)
def test_divmod_remainder_is_small(x, y):
    q, r = eisenstein_divmod(x, y)
    assert q * y + r == x
    # rounding each basis coordinate leaves |r/y|^2 <= 3/4
    assert 4 * r.norm() <= 3 * y.norm()


def test_divmod_examples():
    x = EisensteinInt(5, 1)
    assert divmod(x, ONE) == (x, ZERO)
    assert divmod(x, x) == (ONE, ZERO)
    q, r = divmod(x, EisensteinInt(2, 0))
    assert q * 2 + r == x and r.norm() < 4


@given(elements, elements)
def test_gcd_divides_and_is_canonical(x, y):
    assume(x or y)
    g = gcd(x, y)
    assert g.divides(x) and g.divides(y)
    assert g == canonical_associate(g)
    # every common divisor of small norm divides g
    for d in (SQRT_M3, EisensteinInt(2, 0), EisensteinInt(3, 1), EisensteinInt(-1, 2)):
        if d.divides(x) and d.divides(y):
            assert d.divides(g)


def test_gcd_examples():
    x = EisensteinInt(-7, 4)
    assert gcd(x, ZERO) == canonical_associate(x)
    assert gcd(PI, PI.conjugate()) == ONE
    assert canonical_associate(gcd(EisensteinInt(6, 0), SQRT_M3)) == canonical_associate(SQRT_M3)
    assert SQRT_M3 * SQRT_M3 == EisensteinInt(-3, 0)


def test_parse_and_format_round_trip():
    for text, value in [("13+12t", PI), ("1-12*t", PI_BAR), (" 2 + t ", EisensteinInt(2, 1)),
                        ("-t", -TAU), ("7", EisensteinInt(7, 0)), ("0", ZERO)]:
        assert parse_eisenstein(text) == value
        assert parse_eisenstein(format_eisenstein(value)) == value
    for bad in ("", "t+", "3x", "1+2*tt"):
        with pytest.raises(EisensteinError):
            parse_eisenstein(bad)


@given(elements)
def test_format_round_trip(x):
    assert parse_eisenstein(format_eisenstein(x)) == x


# -- primes ------------------------------------------------------------------


def test_prime_examples():
    assert is_prime(PI)
    assert not is_prime(EisensteinInt(13, 0))
    assert is_prime(EisensteinInt(2, 0))
    assert is_prime(SQRT_M3)
    assert is_prime(EisensteinInt(-11, 0))
    with pytest.raises(EisensteinError):
        is_prime(ONE)


@given(nonzero)
def test_factorisation_reconstructs(x):
    assume(not x.is_unit())
    prod = ONE
    for p, e in factor(x):
        assert is_prime(p)
        prod = prod * p**e
    assert canonical_associate(prod) == canonical_associate(x)


def brute_find(bound):
    """Scan a box containing every element of norm <= bound."""
    r = int((4 * bound / 3) ** 0.5) + 1
    out = []
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            x = EisensteinInt(a, b)
            if 1 < x.norm() <= bound and (a - 1) % 12 == 0 and b % 12 == 0 and sympy.isprime(x.norm()):
                out.append(x)
    return sorted(out, key=lambda x: (x.norm(), x.a, x.b))


def test_find_primes_matches_brute_force():
    assert find_primes(157) == [PI_BAR, PI]
    assert find_primes(100) == []
    assert EisensteinInt(-11, 12) in find_primes(397)
    assert find_primes(2000) == brute_find(2000)


def test_find_primes_weaker_flag():
    primes = find_primes(500, "4sqrt-3")
    modulus = 4 * SQRT_M3
    assert set(find_primes(500)) <= set(primes)
    assert all(modulus.divides(p - ONE) and is_prime(p) for p in primes)


def test_prime_above():
    for p in (7, 13, 31, 157, 9973):
        pi = prime_above(p)
        assert pi.norm() == p and is_prime(pi)


# -- symbols -----------------------------------------------------------------


def test_quadratic_symbol_matches_squares_mod_pi():
    F = residue_field(PI)
    squares = {F.mul(x, x) for x in F.elements() if x}
    for x in F.elements():
        if not x:
            continue
        alpha = F.lift(x)
        assert (power_residue_symbol(alpha, PI, 2).sign == 1) == (x in squares)


def test_symbol_examples():
    assert power_residue_symbol(1, PI, 2) == UnitRoot()
    for D_T in (PI, PI_BAR, PI * PI_BAR):
        assert power_residue_symbol(-1, D_T, 2).sign == 1
    with pytest.raises(EisensteinError):
        power_residue_symbol(PI, PI, 2)
    with pytest.raises(EisensteinError):
        power_residue_symbol(5, SQRT_M3 * PI, 2)
    with pytest.raises(EisensteinError):
        power_residue_symbol(5, PI, 4)


coprime_moduli = [PI, PI_BAR, EisensteinInt(5, 0), EisensteinInt(-1, 6), PI * EisensteinInt(11, 0)]


@given(nonzero, nonzero, st.sampled_from(coprime_moduli), st.sampled_from((2, 3, 6)))
def test_symbol_multiplicative(a, b, beta, d):
    assume(gcd(a * b, beta) == ONE)
    assert power_residue_symbol(a * b, beta, d) == power_residue_symbol(a, beta, d) * power_residue_symbol(b, beta, d)


@given(nonzero, st.sampled_from(coprime_moduli))
def test_sextic_factorisation(a, beta):
    assume(gcd(a, beta) == ONE)
    s6 = power_residue_symbol(a, beta, 6)
    assert s6**3 == power_residue_symbol(a, beta, 2)
    assert s6**2 == power_residue_symbol(a, beta, 3)


def test_unit_root_algebra():
    for s, k in itertools.product((0, 1), (0, 1, 2)):
        u = UnitRoot(s, k)
        assert UnitRoot.from_eisenstein(u.as_eisenstein()) == u
        assert (u * u.conjugate()) == UnitRoot()
        assert u.conjugate().as_eisenstein() == u.as_eisenstein().conjugate()
        assert u.to_json() == {"sign": -1 if s else 1, "tau_exp": k}


# -- D, subsets, residue systems --------------------------------------------


def test_squarefree_D_validation():
    assert SquarefreeD(()).D == ONE
    assert SquarefreeD((PI, PI_BAR)).D == EisensteinInt(157, 0)
    with pytest.raises(EisensteinError):
        SquarefreeD((EisensteinInt(7, 0),))
    with pytest.raises(EisensteinError):
        SquarefreeD((PI, PI))
    with pytest.raises(EisensteinError):
        SquarefreeD((EisensteinInt(3, 1),))  # prime, not 1 mod 12
    assert SquarefreeD.parse("13+12t, 1-12t").primes == (PI, PI_BAR)


def test_subset_selector(D2):
    assert SubsetSelector(D2, 0).D_T == ONE
    assert SubsetSelector(D2, 1).D_T == PI
    assert SubsetSelector(D2, 2).D_hat == PI
    assert D2.full().D_T == D2.D
    with pytest.raises(EisensteinError):
        SubsetSelector(D2, 4)


def test_residue_system_trivial(D0):
    system = residue_system(D0)
    assert system.reps == (ZERO,) and len(system) == 1


@pytest.mark.parametrize("which", ["D1", "D2"])
def test_residue_system_structure(which, request):
    D = request.getfixturevalue(which)
    system = residue_system(D)
    assert len(system) == unit_group_order(D) == 156 ** D.n
    classes = {c % D.D for c in system.reps}
    assert len(classes) == len(system)
    assert all(gcd(c, D.D) == ONE for c in system.reps)
    for i in range(0, len(system), 2):
        assert system.reps[i + 1] == -system.reps[i]
    assert {(-c) % D.D for c in system.reps} == classes


def test_character_table_matches_symbols(D2):
    system = residue_system(D2)
    for T in D2.subsets():
        chi = system.character(T.mask)
        for c, s in list(zip(system.reps, chi))[::97]:
            assert s == power_residue_symbol(c, T.D_T, 2).sign
        assert sum(chi) == (len(system) if T.mask == 0 else 0)
        total = ZERO
        for c, s in zip(system.reps, chi):
            total = total + s * c.conjugate()
        assert total == ZERO
