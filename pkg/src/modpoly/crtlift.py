"""Integer phi_l from its reductions modulo several primes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .bivariate import BivariatePoly
from .errors import NotStabilizedError, PreconditionError
from .globalphi import modular_poly_mod_p
from .ssinit import supersingular_count

STABLE_EXTRA_PRIMES = 2


def modulus_cap_bits(ell: int) -> float:
    """Backstop on the total modulus size: 2 (6 l ln l + 18 l + 64) / ln 2 bits."""
    return 2 * (6 * ell * math.log(ell) + 18 * ell + 64) / math.log(2)


def prime_ok(p: int, ell: int) -> bool:
    return p > 3 and p != ell and sympy.isprime(p) and supersingular_count(p) >= ell + 1


def default_primes(ell: int):
    """Primes p >= 12 l + 13 in increasing order (all satisfy S(p) >= l + 1)."""
    p = 12 * ell + 12
    while True:
        p = sympy.nextprime(p)
        if prime_ok(p, ell):
            yield p


def _symmetric(x: int, M: int) -> int:
    x %= M
    return x - M if x > M // 2 else x


@dataclass
class CrtAccumulator:
    """Running CRT combination of grids mod distinct primes."""

    ell: int
    primes: list = field(default_factory=list)
    images: list = field(default_factory=list)
    modulus: int = 1
    residues: list | None = None  # grid of residues mod ``modulus``

    def add(self, phi: BivariatePoly):
        p = phi.modulus
        if phi.ell != self.ell or p is None:
            raise PreconditionError("grid must be a reduction of phi_l for the same l")
        if p in self.primes:
            raise PreconditionError(f"prime {p} already used")
        size = self.ell + 2
        if self.residues is None:
            self.residues = [list(row) for row in phi.coeffs]
        else:
            M = self.modulus
            Minv = pow(M, -1, p)
            for k in range(size):
                row = self.residues[k]
                for m in range(size):
                    r = row[m]
                    t = (phi.coeffs[k][m] - r) * Minv % p
                    row[m] = r + M * t
        self.modulus *= p
        self.primes.append(p)
        self.images.append(phi)

    def lift(self) -> BivariatePoly:
        """Current reconstruction with entries in (-M/2, M/2]."""
        M = self.modulus
        grid = [[_symmetric(c, M) for c in row] for row in self.residues]
        return BivariatePoly.from_grid(self.ell, grid)

    @property
    def bits(self) -> float:
        return math.log2(self.modulus)


def crt_lift(
    ell: int,
    primes=None,
    rng: np.random.Generator | None = None,
    *,
    accumulator_out: list | None = None,
) -> BivariatePoly:
    """Integer phi_l by CRT over mod-p computations.

    Primes are consumed in order (default: ascending from 12 l + 13).  The
    lift is accepted once it is unchanged after two further primes.  When
    an explicit list runs out first a :class:`PreconditionError` is raised;
    passing :func:`modulus_cap_bits` without stabilising raises
    :class:`NotStabilizedError`.
    """
    if ell < 3 or ell % 2 == 0 or not sympy.isprime(ell):
        raise PreconditionError("l must be an odd prime")
    if rng is None:
        rng = np.random.default_rng(0)
    if primes is None:
        source = default_primes(ell)
    else:
        primes = list(primes)
        for p in primes:
            if not prime_ok(p, ell):
                raise PreconditionError(f"prime {p} unusable: need a prime with S(p) ≥ ℓ+1, p ≠ ℓ")
        if len(set(primes)) != len(primes):
            raise PreconditionError("primes must be distinct")
        source = iter(primes)
    acc = CrtAccumulator(ell)
    if accumulator_out is not None:
        accumulator_out.append(acc)
    cap = modulus_cap_bits(ell)
    last = None
    unchanged = 0
    for p in source:
        acc.add(modular_poly_mod_p(p, ell, rng))
        current = acc.lift()
        if current == last:
            unchanged += 1
            if unchanged >= STABLE_EXTRA_PRIMES:
                return current
        else:
            unchanged = 0
            last = current
        if acc.bits > cap:
            break
    else:
        if primes is not None:
            raise PreconditionError(
                f"explicit prime list exhausted before the lift stabilized ({len(acc.primes)} primes,"
                f" {acc.bits:.1f} bits); supply more primes"
            )
    raise NotStabilizedError(
        f"not stabilized: {len(acc.primes)} primes, {acc.bits:.1f} modulus bits (cap {cap:.1f})"
    )
