"""Starting points for the supersingular walk: discriminants, class polynomials, j_0."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import PrecisionError, PreconditionError, SearchFailedError
from .fields import Fp2Element, QuadraticField, element_sort_key, quadratic_character

MAX_DOUBLINGS = 4
MAX_ABS_DISCRIMINANT = 10**6


@dataclass(frozen=True)
class Discriminant:
    D: int
    d: int | None = None  # D = -4d when the search produced it that way


@dataclass(frozen=True)
class ClassPolynomial:
    """Monic integer H_D, coefficients from the constant term upward."""

    D: int
    coeffs: tuple
    residual: float = 0.0
    precision: int = 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _require_prime_gt3(p: int):
    if p <= 3 or p % 2 == 0 or any(p % r == 0 for r in range(3, math.isqrt(p) + 1, 2)):
        raise PreconditionError(f"p must be a prime > 3, got {p}")


def find_discriminant(p: int) -> Discriminant:
    """D = -4 when p = 3 mod 4, otherwise D = -4d for the least non-residue d."""
    _require_prime_gt3(p)
    if p % 4 == 3:
        return Discriminant(-4, 1)
    d = 2
    while quadratic_character(d, p) != -1:
        d += 1
    return Discriminant(-4 * d, d)


def supersingular_count(p: int) -> int:
    """Number of supersingular j-invariants in characteristic p."""
    _require_prime_gt3(p)
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


# -- class polynomials ---------------------------------------------------------


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive forms (a, b, c) with b^2 - 4ac = D, in (a, b) order."""
    if D >= 0 or D % 4 not in (0, 1):
        raise PreconditionError(f"{D} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def class_number(D: int) -> int:
    return len(reduced_forms(D))


def _j_complex(tau, prec_bits: int):
    """j(tau) = E_4^3 / Delta by q-series, evaluated at the current mpmath precision."""
    q = mpmath.exp(2j * mpmath.pi * tau)
    eps = mpmath.mpf(2) ** (-prec_bits - 8)
    # E_4 = 1 + 240 sum n^3 q^n / (1 - q^n)
    e4 = mpmath.mpc(0)
    qn = q
    n = 1
    while True:
        term = n**3 * qn / (1 - qn)
        e4 += term
        if abs(term) < eps:
            break
        n += 1
        qn *= q
    e4 = 1 + 240 * e4
    # prod (1 - q^n) by the pentagonal number theorem
    eta = mpmath.mpc(1)
    k = 1
    while True:
        t1 = q ** (k * (3 * k - 1) // 2)
        t2 = q ** (k * (3 * k + 1) // 2)
        sign = -1 if k % 2 else 1
        eta += sign * (t1 + t2)
        if abs(t1) < eps:
            break
        k += 1
    delta = q * eta**24
    return e4**3 / delta


def _initial_precision(D: int, h: int) -> int:
    return int(3.5 * math.pi * math.sqrt(-D) * h / math.log(2)) + 64


def hilbert_class_poly(D: int) -> ClassPolynomial:
    """H_D over the integers by evaluating j at CM points (reduced forms).

    Coefficients are rounded to the nearest integers; when the worst
    rounding residual exceeds 0.25 the precision is doubled (at most four
    times) before :class:`PrecisionError` is raised.
    """
    if -D > MAX_ABS_DISCRIMINANT:
        raise PreconditionError(f"|D| must be at most {MAX_ABS_DISCRIMINANT}")
    forms = reduced_forms(D)
    prec = _initial_precision(D, len(forms))
    for _ in range(MAX_DOUBLINGS + 1):
        with mpmath.workprec(prec):
            sqrtD = mpmath.sqrt(mpmath.mpf(-D))
            roots = [_j_complex(mpmath.mpc(-b, sqrtD) / (2 * a), prec) for a, b, _ in forms]
            poly = [mpmath.mpc(1)]  # low to high
            for r in roots:
                nxt = [mpmath.mpc(0)] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i + 1] += c
                    nxt[i] -= r * c
                poly = nxt
            coeffs = [int(mpmath.nint(c.real)) for c in poly]
            residual = max(float(abs(c - k)) for c, k in zip(poly, coeffs))
        if residual <= 0.25:
            return ClassPolynomial(D, tuple(coeffs), residual, prec)
        prec *= 2
    raise PrecisionError("insufficient precision")


# -- roots in F_{p^2} ----------------------------------------------------------


def _roots_fp2(coeffs, F: QuadraticField, rng: np.random.Generator) -> list[Fp2Element]:
    """Distinct roots in F_{p^2} of an integer polynomial (low to high) reduced mod p."""
    R = F.ring()
    p = F.p
    f = R.zeros(len(coeffs))
    f[0, :] = [c % p for c in coeffs]
    f = R.monic(f)
    x = R.monomial(1)
    # Product of the distinct linear factors over F_{p^2}.
    g = R.gcd(f, R.sub(R.powmod(x, p * p, f), x))
    pending = [g]
    roots = []
    half = (p * p - 1) // 2
    one = R.const((1, 0))
    trials = 0
    while pending:
        g = pending.pop()
        deg = R.degree(g)
        if deg <= 0:
            continue
        if deg == 1:
            s = R.sinv(R.lead(g))
            c0 = R.smul(tuple(int(v) for v in g[:, 0]), s)
            roots.append(F(-c0[0] % p, -c0[1] % p))
            continue
        trials += 1
        if trials > 64 * (len(coeffs) + 1):
            raise SearchFailedError("root splitting failed")
        r = F.random(rng)
        shift = R.add(x, R.const((r.a, r.b)))
        h = R.gcd(g, R.sub(R.powmod(shift, half, g), one))
        dh = R.degree(h)
        if 0 < dh < deg:
            pending.append(h)
            pending.append(R.monic(R.divmod(g, h)[0]))
        else:
            pending.append(g)
    return roots


def supersingular_j(p: int, rng: np.random.Generator | None = None) -> Fp2Element:
    """A supersingular j-invariant in F_{p^2} (canonical representation).

    1728 when p = 3 mod 4, 0 when p = 2 mod 3, and otherwise the smallest
    (in canonical order) root of H_D mod p, so the result does not depend on
    the random splits.
    """
    _require_prime_gt3(p)
    F = QuadraticField(p)
    if p % 4 == 3:
        return F(1728)
    if p % 3 == 2:
        return F(0)
    if rng is None:
        rng = np.random.default_rng(0)
    disc = find_discriminant(p)
    H = hilbert_class_poly(disc.D)
    roots = _roots_fp2(H.coeffs, F, rng)
    if not roots:
        raise SearchFailedError("class polynomial has no root in F_p^2")
    return min(roots, key=element_sort_key)


__all__ = [
    "ClassPolynomial",
    "Discriminant",
    "class_number",
    "find_discriminant",
    "hilbert_class_poly",
    "reduced_forms",
    "supersingular_count",
    "supersingular_j",
]
