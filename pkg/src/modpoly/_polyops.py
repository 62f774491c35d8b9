"""Dense polynomial arithmetic over F_p or F_p[i]/(i^2 - c).

Polynomials are integer arrays of shape ``(d, n)``: row 0 holds the F_p part
of each coefficient and, when ``d == 2``, row 1 holds the ``i`` part.
Column ``k`` is the coefficient of ``T**k``.  The zero polynomial has ``n == 0``.
"""

from __future__ import annotations

import numpy as np

# Products of two reduced residues summed over a few hundred terms must fit.
_INT64_SAFE_P = 1 << 24


class BaseRing:
    """Polynomial ring over F_p (``c is None``) or F_{p^2} = F_p[i]/(i^2 - c)."""

    def __init__(self, p: int, c: int | None = None):
        self.p = p
        self.c = c
        self.d = 1 if c is None else 2
        self.dtype = np.int64 if p < _INT64_SAFE_P else object

    # -- scalars: tuples of d ints -------------------------------------------

    def smul(self, s, t):
        p = self.p
        if self.d == 1:
            return (s[0] * t[0] % p,)
        return ((s[0] * t[0] + self.c * s[1] * t[1]) % p, (s[0] * t[1] + s[1] * t[0]) % p)

    def sinv(self, s):
        p = self.p
        if self.d == 1:
            if s[0] % p == 0:
                raise ZeroDivisionError("division by zero")
            return (pow(s[0], -1, p),)
        norm = (s[0] * s[0] - self.c * s[1] * s[1]) % p
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        ninv = pow(norm, -1, p)
        return (s[0] * ninv % p, -s[1] * ninv % p)

    # -- construction ---------------------------------------------------------

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros((self.d, n), dtype=self.dtype)

    def const(self, s) -> np.ndarray:
        a = self.zeros(1)
        a[:, 0] = s
        return self.trim(a)

    def monomial(self, k: int) -> np.ndarray:
        a = self.zeros(k + 1)
        a[0, k] = 1
        return a

    def asarray(self, rows) -> np.ndarray:
        return np.array(rows, dtype=self.dtype).reshape(self.d, -1) % self.p

    # -- basic arithmetic -----------------------------------------------------

    @staticmethod
    def trim(a: np.ndarray) -> np.ndarray:
        nz = np.flatnonzero(np.any(a != 0, axis=0))
        if len(nz) == 0:
            return a[:, :0]
        return a[:, : nz[-1] + 1]

    @staticmethod
    def degree(a: np.ndarray) -> int:
        return a.shape[1] - 1

    def lead(self, a: np.ndarray):
        return tuple(int(v) for v in a[:, -1])

    def add(self, a, b):
        n = max(a.shape[1], b.shape[1])
        out = self.zeros(n)
        out[:, : a.shape[1]] += a
        out[:, : b.shape[1]] += b
        return self.trim(out % self.p)

    def sub(self, a, b):
        n = max(a.shape[1], b.shape[1])
        out = self.zeros(n)
        out[:, : a.shape[1]] += a
        out[:, : b.shape[1]] -= b
        return self.trim(out % self.p)

    def scale(self, a, s):
        p = self.p
        if self.d == 1:
            return a * s[0] % p
        out = np.empty_like(a)
        out[0] = (a[0] * s[0] + self.c * (a[1] * s[1] % p)) % p
        out[1] = (a[0] * s[1] + a[1] * s[0]) % p
        return out

    def mul(self, a, b):
        """Untrimmed-safe product (result is reduced mod p, not trimmed)."""
        if a.shape[1] == 0 or b.shape[1] == 0:
            return self.zeros(0)
        p = self.p
        if self.d == 1:
            return (np.convolve(a[0], b[0]) % p).reshape(1, -1)
        A = np.convolve(a[0], b[0]) % p
        B = np.convolve(a[1], b[1]) % p
        C = np.convolve(a[0] + a[1], b[0] + b[1]) % p
        out = np.empty((2, len(A)), dtype=self.dtype)
        out[0] = (A + self.c * B) % p
        out[1] = (C - A - B) % p
        return out

    def divmod(self, a, b):
        b = self.trim(b)
        if b.shape[1] == 0:
            raise ZeroDivisionError("polynomial division by zero")
        r = self.trim(a.copy())
        db = b.shape[1] - 1
        if r.shape[1] - 1 < db:
            return self.zeros(0), r
        inv_lead = self.sinv(self.lead(b))
        q = self.zeros(r.shape[1] - db)
        p = self.p
        while r.shape[1] - 1 >= db:
            shift = r.shape[1] - 1 - db
            coef = self.smul(self.lead(r), inv_lead)
            q[:, shift] = coef
            r = r.copy()
            r[:, shift:] = (r[:, shift:] - self.scale(b, coef)) % p
            r = self.trim(r)
        return q, r

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        a = self.trim(a)
        if a.shape[1] == 0:
            return a
        return self.scale(a, self.sinv(self.lead(a)))

    def gcd(self, a, b):
        a, b = self.trim(a), self.trim(b)
        while b.shape[1] > 0:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def inv_mod(self, a, f):
        """Inverse of ``a`` modulo ``f`` via the extended Euclidean algorithm."""
        r0, r1 = self.trim(f.copy()), self.mod(a, f)
        s0, s1 = self.zeros(0), self.const((1,) + (0,) * (self.d - 1))
        while r1.shape[1] > 1:
            q, r = self.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.trim(self.mul(q, s1)))
        if r1.shape[1] == 0:
            raise ZeroDivisionError("division by zero (non-invertible residue)")
        return self.mod(self.scale(s1, self.sinv(self.lead(r1))), f)

    def mulmod(self, a, b, f):
        return self.mod(self.mul(a, b), f)

    def powmod(self, a, e: int, f):
        result = self.const((1,) + (0,) * (self.d - 1))
        base = self.mod(a, f)
        while e:
            if e & 1:
                result = self.mulmod(result, base, f)
            e >>= 1
            if e:
                base = self.mulmod(base, base, f)
        return result

    def derivative(self, a):
        n = a.shape[1]
        if n <= 1:
            return self.zeros(0)
        k = np.arange(1, n, dtype=self.dtype)
        return self.trim(a[:, 1:] * k % self.p)

    def evaluate(self, a, s):
        acc = (0,) * self.d
        for k in range(a.shape[1] - 1, -1, -1):
            acc = self.smul(acc, s)
            acc = tuple((x + int(y)) % self.p for x, y in zip(acc, a[:, k]))
        return acc
