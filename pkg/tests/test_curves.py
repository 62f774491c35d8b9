import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modpoly.curves import (
    INFINITY,
    Curve,
    CurvePoint,
    brute_force_count,
    curve_from_j,
    enumerate_points,
    point_add,
    point_count_ext,
    random_point,
    scalar_mul,
    supersingular_trace,
)
from modpoly.errors import NotSupersingularError, PointNotOnCurveError
from modpoly.fields import PrimeField, QuadraticField, make_extension


@pytest.fixture
def e7():
    return Curve.short(PrimeField(7), 1, 0)  # y^2 = x^3 + x


def test_group_order_f7(e7):
    pts = enumerate_points(e7)
    assert len(pts) == 8 == brute_force_count(e7)
    for A in pts:
        assert scalar_mul(e7, 8, A).is_infinity
        assert scalar_mul(e7, 0, A).is_infinity
        assert point_add(e7, A, e7.neg(A)).is_infinity


def test_random_point_x_support(e7, rng):
    xs = {int(random_point(e7, rng).x) for _ in range(200)}
    # brute force: x with x^3 + x a square (or zero) mod 7
    squares = {v * v % 7 for v in range(7)}
    allowed = {x for x in range(7) if (x**3 + x) % 7 in squares}
    assert allowed == {0, 1, 3, 5}
    assert xs <= allowed and len(xs) == 4


def test_random_point_reproducible(e7):
    a = [random_point(e7, np.random.default_rng(5)) for _ in range(3)]
    assert a[0] == a[1] == a[2]


def test_off_curve_rejected(e7):
    with pytest.raises(PointNotOnCurveError, match="point not on curve"):
        e7.point(1, 1)
    bad = CurvePoint(PrimeField(7)(1), PrimeField(7)(1))
    with pytest.raises(PointNotOnCurveError):
        scalar_mul(e7, 3, bad)


def test_j_invariant_special():
    F = PrimeField(101)
    assert Curve.short(F, 0, 1).j_invariant().is_zero()
    assert Curve.short(F, 1, 0).j_invariant() == 1728


@pytest.mark.parametrize("p", [13, 101, 1009])
def test_curve_from_j_roundtrip(p, rng):
    F = QuadraticField(p)
    for _ in range(1000 if p == 1009 else 200):
        j = F.random(rng)
        assert curve_from_j(j).j_invariant() == j
    assert curve_from_j(F(0)).j_invariant().is_zero()
    assert curve_from_j(F(1728)).j_invariant() == 1728


def test_long_form_group_law(rng):
    F = QuadraticField(31)
    E = Curve.from_coefficients(F, 1, 3, 5, 7, 11)
    for _ in range(20):
        A, B, C = (random_point(E, rng) for _ in range(3))
        assert point_add(E, A, B) == point_add(E, B, A)
        assert point_add(E, point_add(E, A, B), C) == point_add(E, A, point_add(E, B, C))
        m, n = int(rng.integers(0, 500)), int(rng.integers(0, 500))
        assert scalar_mul(E, m + n, A) == point_add(E, scalar_mul(E, m, A), scalar_mul(E, n, A))


def test_long_form_order_annihilates():
    F = PrimeField(101)
    E = Curve.from_coefficients(F, 1, 2, 3, 4, 5)
    N = brute_force_count(E)
    for P in enumerate_points(E):
        assert scalar_mul(E, N, P).is_infinity


def test_point_count_examples():
    assert point_count_ext(7, 3, 1) == 7 + 1 - 3
    # t2 = -14, t3 = 0, t4 = 98
    assert point_count_ext(7, 0, 4) == 7**4 + 1 - 98 == 2304
    assert point_count_ext(7, 0, 2) == 64 and 64 % 8 == 0


def test_point_count_matches_brute_force():
    F = PrimeField(7)
    E = Curve.short(F, 1, 0)
    F49 = QuadraticField(7)
    assert brute_force_count(E.base_change(F49)) == point_count_ext(7, 0, 2)
    E2 = Curve.short(F, 3, 2)
    a = 8 - brute_force_count(E2)
    K = make_extension(F, 3, np.random.default_rng(0))
    assert brute_force_count(E2.base_change(K)) == point_count_ext(7, a, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**4), st.data(), st.integers(1, 6), st.integers(1, 4))
def test_point_count_divisibility(q, data, n, k):
    bound = int((4 * q) ** 0.5)
    a = data.draw(st.integers(-bound, bound))
    assert point_count_ext(q, a, n * k) % point_count_ext(q, a, n) == 0


def test_trace_base_change_f49(rng):
    E = Curve.short(QuadraticField(7), 1, 0)
    t = supersingular_trace(E, rng)
    assert t.a == 0**2 - 2 * 7 == -14
    assert t.q == 49


@pytest.mark.parametrize("p", [11, 13, 41, 97])
def test_trace_annihilates_fresh_points(p, rng):
    from modpoly.ssinit import supersingular_j

    E = curve_from_j(supersingular_j(p))
    t = supersingular_trace(E, rng)
    assert t.a in (0, p, -p, 2 * p, -2 * p)
    for _ in range(20):
        assert scalar_mul(E, t.order, random_point(E, rng)).is_infinity


def test_trace_prime_level(rng):
    t = supersingular_trace(Curve.short(PrimeField(7), 1, 0), rng)
    assert (t.q, t.a) == (7, 0)


def test_trace_rejects_ordinary(rng):
    E = Curve.short(QuadraticField(7), 1, 1)
    n = brute_force_count(E)
    assert n not in {49 + 1 - a for a in (0, 7, -7, 14, -14)}
    with pytest.raises(NotSupersingularError, match="not supersingular"):
        supersingular_trace(E, rng)


def test_infinity_helpers(e7):
    assert INFINITY.is_infinity and INFINITY.key() is None
    assert e7.neg(INFINITY) is INFINITY
