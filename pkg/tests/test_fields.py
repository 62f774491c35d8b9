import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modpoly.errors import FieldMismatchError
from modpoly.fields import (
    ExtensionField,
    PrimeField,
    QuadraticField,
    format_element,
    frobenius_p2,
    is_irreducible,
    make_extension,
    parse_fp2,
    quadratic_character,
    sqrt,
)

SMALL_PRIMES = [p for p in range(3, 100) if all(p % d for d in range(2, int(p**0.5) + 1))]


def test_inverse_in_f7():
    F = PrimeField(7)
    # brute force: the k with 3k = 1 mod 7
    k = next(k for k in range(1, 7) if 3 * k % 7 == 1)
    assert F(3).inverse() == F(k) == F(5)


def test_identities(rng):
    for F in (PrimeField(101), QuadraticField(101), make_extension(QuadraticField(101), 5, rng)):
        for _ in range(20):
            a = F.random(rng)
            assert a + F.zero == a
            if not a.is_zero():
                assert (a * a.inverse()).is_one()


@pytest.mark.parametrize("F", [PrimeField(7), QuadraticField(7)])
def test_zero_division(F):
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        F.zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        PrimeField(7)(1) + PrimeField(11)(1)
    with pytest.raises(FieldMismatchError):
        QuadraticField(7)(1, 1) * QuadraticField(13)(2)


def test_make_extension_degree_one_is_base(rng):
    F = QuadraticField(13)
    assert make_extension(F, 1, rng) is F


def test_extension_over_f3_has_no_roots(rng):
    base = PrimeField(3)
    for seed in range(10):
        E = make_extension(base, 2, np.random.default_rng(seed))
        f = E.modulus
        assert f[-1] == 1 and len(f) == 3
        assert all(not (f[0] + f[1] * x + x * x).is_zero() for x in base.elements())


def test_extension_total_degree(rng):
    E = make_extension(QuadraticField(13), 6 * (5 - 1), rng)
    assert E.degree == 48
    assert E.order == 13**48


@pytest.mark.parametrize("base", [PrimeField(5), PrimeField(7), QuadraticField(3), QuadraticField(5)])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_constructed_modulus_rootless(base, m):
    E = make_extension(base, m, np.random.default_rng(m))
    f = E.modulus
    for x in base.elements():
        acc = base.zero
        for c in reversed(f):
            acc = acc * x + c
        assert not acc.is_zero()


def test_irreducibility_known_cases():
    F = PrimeField(3)
    assert is_irreducible(F, [1, 0, 1])  # T^2 + 1
    assert not is_irreducible(F, [2, 0, 1])  # T^2 - 1
    # (T^2 + 2)(T^2 + 3) over F_5 has no roots but is reducible
    assert not is_irreducible(PrimeField(5), [1, 0, 0, 0, 1])


def test_sqrt_examples():
    F = PrimeField(7)
    assert sqrt(F.zero).is_zero()
    assert sqrt(F(4)) in (F(2), F(5))
    assert sqrt(F(3)) is None
    assert {x * x for x in F.elements()} == {F(0), F(1), F(2), F(4)}


@pytest.mark.parametrize("p", [7, 13, 17, 41, 97])
def test_sqrt_random_squares(p, rng):
    fields = [PrimeField(p), QuadraticField(p), make_extension(QuadraticField(p), 3, rng)]
    for F in fields:
        count = 1000 if F.degree <= 2 else 100
        for _ in range(count):
            a = F.random(rng)
            sq = a * a
            r = sqrt(sq)
            assert r * r == sq


def test_sqrt_nonsquare_in_extension(rng):
    F = make_extension(QuadraticField(13), 4, rng)
    nonsq = F._nonresidue
    assert sqrt(nonsq) is None
    assert not nonsq.is_square()


def test_quadratic_character_examples():
    assert quadratic_character(1, 13) == 1
    assert quadratic_character(26, 13) == 0
    assert {x * x % 13 for x in range(1, 13)} == {1, 3, 4, 9, 10, 12}
    assert quadratic_character(2, 13) == -1


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_quadratic_character_exhaustive(p):
    F = PrimeField(p)
    for d in range(-p, 2 * p):
        chi = quadratic_character(d, p)
        if d % p == 0:
            assert chi == 0
        else:
            assert (chi == 1) == (sqrt(F(d)) is not None)


def test_frobenius_examples():
    F = QuadraticField(3)
    assert F.c == 2  # i^2 = 2 = -1
    i = F.gen
    assert frobenius_p2(i) == -i
    assert i**3 == -i
    for a in F.elements():
        assert frobenius_p2(frobenius_p2(a)) == a
    for v in range(3):
        assert frobenius_p2(F(v)) == F(v)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 96), st.integers(0, 96), st.integers(0, 96), st.integers(0, 96))
def test_frobenius_homomorphism(a, b, c, d):
    F = QuadraticField(97)
    x, y = F(a, b), F(c, d)
    assert frobenius_p2(x + y) == frobenius_p2(x) + frobenius_p2(y)
    assert frobenius_p2(x * y) == frobenius_p2(x) * frobenius_p2(y)
    assert frobenius_p2(x) == x**97


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=6, max_size=6), st.lists(st.integers(0, 12), min_size=6, max_size=6))
def test_extension_ring_axioms(u, v):
    F = ExtensionField(QuadraticField(13), [2, 1, 0, 1])  # T^3 + T + 2
    a = F([tuple(u[0:2]), tuple(u[2:4]), tuple(u[4:6])])
    b = F([tuple(v[0:2]), tuple(v[2:4]), tuple(v[4:6])])
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    assert a * (b + 1) == a * b + a


def test_serialization_roundtrip():
    F = QuadraticField(41)
    a = F(3, 17)
    assert format_element(a) == "3,17"
    assert parse_fp2("3,17", F) == a
    assert parse_fp2("5", F) == F(5)
    with pytest.raises(ValueError):
        parse_fp2("1,2,3", F)
