import numpy as np
import pytest

from modpoly.curves import Curve, TraceData, curve_from_j, point_count_ext, scalar_mul, supersingular_trace
from modpoly.errors import PreconditionError, TorsionError
from modpoly.fields import PrimeField, QuadraticField, make_extension
from modpoly.torsion import (
    TorsionStats,
    bsgs_member,
    ell_valuation,
    torsion_basis,
    torsion_extension_degree,
)


def check_basis(basis, ell):
    E = basis.curve
    P, Q = basis.P, basis.Q
    assert not P.is_infinity and not Q.is_infinity
    assert E.contains(P) and E.contains(Q)
    assert scalar_mul(E, ell, P).is_infinity
    assert scalar_mul(E, ell, Q).is_infinity
    multiples = [scalar_mul(E, m, P) for m in range(ell)]
    assert Q not in multiples
    assert basis.k >= 2 and basis.s * ell**basis.k == basis.S


@pytest.mark.parametrize(
    "a, ell, expected",
    [(-26, 3, 2), (26, 7, 6), (0, 3, 4), (0, 5, 8), (13, 5, 12), (-13, 7, 18)],
)
def test_extension_degree_cases(a, ell, expected):
    assert torsion_extension_degree(TraceData(q=169, a=a, p=13), ell) == expected


def test_extension_degree_ordinary_fallback():
    assert torsion_extension_degree(TraceData(q=25, a=3, p=5), 3) == 8


def test_trace_zero_f7_ell3():
    t = TraceData(q=7, a=0, p=7)
    n = torsion_extension_degree(t, 3)
    assert n == 4
    assert point_count_ext(7, 0, n) % 9 == 0


def test_basis_y2_x3_plus_x_f7():
    E = Curve.short(PrimeField(7), 1, 0)
    trace = TraceData(q=7, a=0, p=7)
    basis = torsion_basis(E, 3, trace, np.random.default_rng(11))
    assert (basis.n, basis.S, basis.k, basis.s) == (4, 2304, 2, 256)
    check_basis(basis, 3)


def test_bsgs_matches_exhaustive(rng):
    E = curve_from_j(QuadraticField(97)(45, 28))
    trace = supersingular_trace(E, rng)
    for ell in (3, 5, 7, 11, 13):
        basis = torsion_basis(E, ell, trace, rng)
        Ex, P, Q = basis.curve, basis.P, basis.Q
        assert bsgs_member(Ex, P, Q, ell) is False
        mults = [scalar_mul(Ex, m, P) for m in range(ell)]
        for m in (0, 1, 2, ell - 1):
            assert bsgs_member(Ex, P, mults[m], ell)
        for c in range(1, 4):
            R = scalar_mul(Ex, c, Q)
            assert bsgs_member(Ex, P, R, ell) == (R in mults)


def test_valuation_too_small(rng):
    E = curve_from_j(QuadraticField(13)(5))
    trace = supersingular_trace(E, rng)
    with pytest.raises(TorsionError, match="valuation too small"):
        torsion_basis(E, 5, trace, rng, n=1)


def test_wrong_trace_exhausts_retries(rng):
    E = curve_from_j(QuadraticField(13)(5))
    true = supersingular_trace(E, rng)
    wrong = TraceData(q=169, a=-true.a, p=13)
    with pytest.raises(TorsionError):
        torsion_basis(E, 3, wrong, rng, n=1)


def test_rejects_bad_ell(rng):
    E = curve_from_j(QuadraticField(13)(5))
    t = supersingular_trace(E, rng)
    with pytest.raises(PreconditionError):
        torsion_basis(E, 4, t, rng)
    with pytest.raises(PreconditionError):
        torsion_basis(Curve.short(QuadraticField(3), 1, 1), 3, t, rng)


def test_sharpest_case_n_ell_minus_1(rng):
    E = curve_from_j(QuadraticField(13)(5))
    trace = supersingular_trace(E, rng)
    assert abs(trace.a) == 26
    for ell in (3, 5, 7, 11):
        basis = torsion_basis(E, ell, trace, rng)
        assert basis.n == ell - 1
        check_basis(basis, ell)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_draw_success_rate(ell):
    E = curve_from_j(QuadraticField(13)(5))
    rng = np.random.default_rng(ell)
    trace = supersingular_trace(E, rng)
    ext = make_extension(E.field, ell - 1, rng)
    stats = TorsionStats()
    while stats.draws < 200:
        torsion_basis(E, ell, trace, rng, extension=ext, stats=stats)
    assert stats.draw_success_rate >= (1 - 1 / ell**2) ** 2 - 0.05


@pytest.mark.parametrize("ell", [3, 5])
def test_independence_failure_rate_is_one_over_ell_plus_one(ell):
    # Q lands on the line <P> with probability (l-1)/(l^2-1) = 1/(l+1) for
    # uniform order-l points.
    E = curve_from_j(QuadraticField(13)(5))
    rng = np.random.default_rng(100 + ell)
    trace = supersingular_trace(E, rng)
    ext = make_extension(E.field, ell - 1, rng)
    stats = TorsionStats()
    while stats.independence_tests < 600:
        torsion_basis(E, ell, trace, rng, extension=ext, stats=stats)
    assert abs(stats.independence_failure_rate - 1 / (ell + 1)) < 0.05


def test_ell_valuation():
    assert ell_valuation(2304, 3) == 2
    assert ell_valuation(7, 3) == 0
