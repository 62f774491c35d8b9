import pytest

from modpoly.classical import (
    QExpansion,
    classical_phi,
    delta_qexp,
    growth_report,
    j_qexp,
    j_qexp_via_e6,
    jpow_coeffs,
    kronecker_congruence,
)
from modpoly.errors import PreconditionError


def test_j_leading_coefficients():
    j = j_qexp(30)
    assert j.val == -1
    assert (j[-1], j[0], j[1], j[2]) == (1, 744, 196884, 21493760)


@pytest.mark.parametrize("N", [2, 10, 120])
def test_two_constructions_of_j_agree(N):
    a, b = j_qexp(N), j_qexp_via_e6(N)
    assert a.val == b.val and a.coeffs == b.coeffs[: len(a.coeffs)]


def test_j_coefficients_positive():
    assert all(c > 0 for c in j_qexp(400).coeffs)


def test_delta_tau_values():
    # Ramanujan tau: 1, -24, 252, -1472, 4830
    assert delta_qexp(6).coeffs[:5] == (1, -24, 252, -1472, 4830)


def test_jpow_basics():
    assert jpow_coeffs(1, 20) == j_qexp(20)
    j2 = jpow_coeffs(2, 20)
    assert j2.val == -2 and j2[-2] == 1 and j2[-1] == 2 * 744 == 1488


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_jpow_product_consistency(k):
    N = 40
    lhs = jpow_coeffs(k, N) * jpow_coeffs(1, N)
    rhs = jpow_coeffs(k + 1, N)
    top = min(lhs.prec, rhs.prec)
    assert all(lhs[e] == rhs[e] for e in range(-k - 1, top))


def test_qexpansion_precision_tracking():
    a = QExpansion(-1, (1, 2, 3))  # known below q^2
    b = QExpansion(2, (5, 7))  # known below q^4
    c = a * b
    assert c.val == 1 and c.prec == min(a.prec + b.val, b.prec + a.val) == 3
    with pytest.raises(IndexError):
        c[3]


def test_phi2_coefficients():
    phi = classical_phi(2)
    assert phi.coeff(2, 2) == -1
    assert phi.coeff(2, 1) == phi.coeff(1, 2) == 1488
    assert phi.coeff(0, 0) == -157464000000000
    assert phi.coeff(1, 1) == 40773375


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_kronecker_congruence(ell):
    assert classical_phi(ell).reduce(ell) == kronecker_congruence(ell).reduce(ell)


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_phi_vanishes_on_q_expansions(ell):
    phi = classical_phi(ell)
    N = 60
    j = j_qexp(N * ell)
    jl = j.in_q_power(ell)
    total = None
    for k, m, c in phi.terms():
        term = (j**k if k else QExpansion(0, (1,) + (0,) * (N * ell))) * (
            jl**m if m else QExpansion(0, (1,) + (0,) * (N * ell))
        )
        term = term * c
        total = term if total is None else total + term
    assert total.prec > 10
    assert all(v == 0 for v in total.coeffs)


def test_phi_shape_and_symmetry():
    for ell in (2, 3, 5, 7):
        phi = classical_phi(ell)
        assert phi.is_symmetric()
        assert phi.shape_violations() == []


def test_unsupported_ell():
    with pytest.raises(PreconditionError):
        classical_phi(11)


def test_growth_report_bounds():
    rows, asym = growth_report(300, 10)
    assert len(rows) == 3000
    assert all(r.logcoeff <= r.upper for r in rows)
    assert min(r.ratio for r in rows if r.n / r.k >= 20) >= 2.0
    late = [a.ratio for a in asym if 100 <= a.n <= 300]
    assert 0.8 <= min(late) and max(late) <= 1.2
