"""q-expansions of the j-function and the linear-algebra oracle for phi_l.

Everything here uses exact Python integers.  ``classical_phi`` solves for the
integer coefficients of phi_l from the identity phi_l(j(q), j(q^l)) = 0 and
deliberately shares no code with the isogeny-graph pipeline, so the two can
check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bivariate import BivariatePoly
from .errors import PreconditionError, TripwireError


@dataclass(frozen=True)
class QExpansion:
    """Laurent series sum(coeffs[i] q^(val+i)), known for exponents < val + N."""

    val: int
    coeffs: tuple

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def prec(self) -> int:
        return self.val + self.N

    def __getitem__(self, e: int) -> int:
        if e >= self.prec:
            raise IndexError(f"coefficient q^{e} beyond truncation q^{self.prec}")
        if e < self.val:
            return 0
        return self.coeffs[e - self.val]

    def truncate(self, prec: int) -> QExpansion:
        return QExpansion(self.val, self.coeffs[: max(0, prec - self.val)])

    def __add__(self, other):
        if isinstance(other, int):
            other = QExpansion(0, (other,) + (0,) * max(0, self.prec - 1))
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        return QExpansion(val, tuple(self[e] + other[e] for e in range(val, prec)))

    def __neg__(self):
        return QExpansion(self.val, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QExpansion(self.val, tuple(c * other for c in self.coeffs))
        prec = min(self.prec + other.val, other.prec + self.val)
        val = self.val + other.val
        n = prec - val
        a, b = self.coeffs, other.coeffs
        out = [0] * max(n, 0)
        for i in range(min(len(a), n)):
            ai = a[i]
            if ai:
                for j in range(min(len(b), n - i)):
                    out[i + j] += ai * b[j]
        return QExpansion(val, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QExpansion:
        if k < 0:
            return self.inverse() ** (-k)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        if result is None:
            return QExpansion(0, (1,) + (0,) * (self.N - 1))
        return result

    def inverse(self) -> QExpansion:
        """1/f for a leading coefficient of +-1 (keeps integrality)."""
        lead = self.coeffs[0]
        if lead not in (1, -1):
            raise ValueError("leading coefficient must be a unit")
        a = self.coeffs
        inv = [0] * self.N
        inv[0] = lead
        for n in range(1, self.N):
            s = sum(a[i] * inv[n - i] for i in range(1, n + 1))
            inv[n] = -s * lead
        return QExpansion(-self.val, tuple(inv))

    def in_q_power(self, ell: int) -> QExpansion:
        """f(q^l)."""
        out = [0] * (self.N * ell - (ell - 1))
        for i, c in enumerate(self.coeffs):
            out[i * ell] = c
        return QExpansion(self.val * ell, tuple(out))

    def shift(self, s: int) -> QExpansion:
        """q^s f."""
        return QExpansion(self.val + s, self.coeffs)


def _divisor_power_sums(n: int, r: int) -> list[int]:
    sig = [0] * n
    for d in range(1, n):
        dr = d**r
        for m in range(d, n, d):
            sig[m] += dr
    return sig


def eisenstein(weight: int, N: int) -> QExpansion:
    """E_4 or E_6 normalized with constant term 1, N coefficients."""
    factor = {4: 240, 6: -504}[weight]
    sig = _divisor_power_sums(N, weight - 1)
    return QExpansion(0, (1,) + tuple(factor * sig[n] for n in range(1, N)))


def euler_product(N: int) -> QExpansion:
    """prod (1 - q^n) via the pentagonal number theorem."""
    out = [0] * N
    k = 0
    while True:
        done = True
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < N:
                out[e] += -1 if kk % 2 else 1
                done = False
        if done:
            break
        k += 1
    return QExpansion(0, tuple(out))


def delta_qexp(N: int) -> QExpansion:
    """Delta = q prod (1 - q^n)^24, N coefficients starting at q^1."""
    return (euler_product(N) ** 24).shift(1)


@lru_cache(maxsize=8)
def j_qexp(N: int) -> QExpansion:
    """j = E_4^3 / Delta with N coefficients (q^-1 up to q^(N-2))."""
    if N < 2:
        raise ValueError("N >= 2 required")
    E4 = eisenstein(4, N)
    return E4 * E4 * E4 * delta_qexp(N).inverse()


def j_qexp_via_e6(N: int) -> QExpansion:
    """Independent route: j = E_6^2 / Delta + 1728."""
    E6 = eisenstein(6, N)
    return E6 * E6 * delta_qexp(N).inverse() + 1728


def jpow_coeffs(k: int, N: int) -> QExpansion:
    """j^k with N coefficients starting at q^-k."""
    if k < 1:
        raise ValueError("k >= 1 required")
    j = j_qexp(N)
    out = j
    for _ in range(k - 1):
        out = out * j
    return out


# -- growth of coefficients of j^k ------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    n: int
    k: int
    logcoeff: float
    upper: float
    ratio: float


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    logcoeff: float
    ratio: float  # c(n) * sqrt(2) * n^(3/4) / exp(4 pi sqrt(n))


def growth_report(Nmax: int, Kmax: int):
    """Coefficient growth of j^k for 1 <= n <= Nmax, 1 <= k <= Kmax.

    Returns ``(rows, asymptotic_rows)``.  Every row is checked against the
    upper bound ln c_k(n) <= 4 pi sqrt((n+k) k); a violation means the series
    arithmetic is broken and raises :class:`TripwireError`.
    """
    N = Nmax + Kmax + 2
    j = j_qexp(N)
    rows, asym = [], []
    power = j
    for k in range(1, Kmax + 1):
        if k > 1:
            power = power * j
        for n in range(1, Nmax + 1):
            c = power[n]
            if c <= 0:
                continue
            L = math.log(c)
            U = 4 * math.pi * math.sqrt((n + k) * k)
            if L > U:
                raise TripwireError(f"coefficient bound violated at n={n}, k={k}")
            rows.append(GrowthRow(n, k, L, U, L / math.sqrt(n * k)))
            if k == 1:
                r = math.exp(L + 0.5 * math.log(2) + 0.75 * math.log(n) - 4 * math.pi * math.sqrt(n))
                asym.append(AsymptoticRow(n, L, r))
    return rows, asym


# -- the classical linear system ---------------------------------------------

SUPPORTED_ORACLE_ELLS = (2, 3, 5, 7)


def _solve_exact(rows, rhs, ncols):
    """Solve an overdetermined consistent integer system exactly.

    Returns the unique rational solution, or None when the rank is short.
    Raises :class:`TripwireError` if the system is inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f, g = aug[i][c], pr[c]
                row = [g * x - f * y for x, y in zip(aug[i], pr)]
                content = math.gcd(*row)
                if content > 1:
                    row = [x // content for x in row]
                aug[i] = row
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1]:
            raise TripwireError("inconsistent linear system for phi_l")
    return [Fraction(aug[i][-1], aug[i][c]) for i, c in enumerate(pivots)]


def classical_phi(ell: int) -> BivariatePoly:
    """phi_l over the integers from q-expansions (small l only).

    Unknowns are the symmetric coefficients c[k][m], k <= m <= l; the x^(l+1)
    and y^(l+1) terms are known.  Matching the coefficients of q^e for
    N = (l+1)^2 + 2l + 8 consecutive exponents starting at -l(l+1) gives an
    overdetermined system solved by exact integer elimination.
    """
    if ell not in SUPPORTED_ORACLE_ELLS:
        raise PreconditionError(f"oracle supports l in {SUPPORTED_ORACLE_ELLS}")
    N = (ell + 1) ** 2 + 2 * ell + 8
    for _ in range(4):
        solution = _classical_attempt(ell, N)
        if solution is not None:
            return solution
        N += 2 * (ell + 1)
    raise TripwireError("insufficient truncation")


def _classical_attempt(ell: int, N: int):
    e0 = -ell * (ell + 1)
    e_max = e0 + N - 1
    # Enough terms of j for every product to be known through q^e_max.
    terms = e_max + ell * (ell + 1) + 3
    j = j_qexp(terms)
    jl = j.in_q_power(ell)
    X = [None, j]
    Y = [None, jl]
    for _ in range(ell):
        X.append(X[-1] * j)
        Y.append(Y[-1] * jl)
    one = QExpansion(0, (1,) + (0,) * (terms * ell))
    X[0] = one
    Y[0] = one

    def mono(k, m):
        return X[k] * Y[m]

    unknowns = [(k, m) for k in range(ell + 1) for m in range(k, ell + 1)]
    cols = []
    for k, m in unknowns:
        s = mono(k, m) if k == m else mono(k, m) + mono(m, k)
        if s.prec <= e_max:
            raise TripwireError("q-expansion precision bookkeeping failed")
        cols.append(s)
    known = X[ell + 1] + Y[ell + 1]
    exps = range(e0, e_max + 1)
    rows = [[col[e] for col in cols] for e in exps]
    rhs = [-known[e] for e in exps]
    sol = _solve_exact(rows, rhs, len(unknowns))
    if sol is None:
        return None
    size = ell + 2
    grid = [[0] * size for _ in range(size)]
    grid[ell + 1][0] = grid[0][ell + 1] = 1
    for (k, m), v in zip(unknowns, sol):
        if v.denominator != 1:
            raise TripwireError("non-integral coefficient in phi_l")
        grid[k][m] = grid[m][k] = int(v)
    return BivariatePoly.from_grid(ell, grid)


def kronecker_congruence(ell: int) -> BivariatePoly:
    """(x^l - y)(x - y^l) as a grid, for comparison mod l."""
    size = ell + 2
    grid = [[0] * size for _ in range(size)]
    grid[ell + 1][0] += 1
    grid[ell][ell] -= 1
    grid[1][1] -= 1
    grid[0][ell + 1] += 1
    return BivariatePoly.from_grid(ell, grid)
