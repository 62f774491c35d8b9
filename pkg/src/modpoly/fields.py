"""Finite field tower F_p < F_{p^2} < F_{p^2}[T]/(f).

Three descriptor classes share the :class:`FieldDescriptor` interface:

* :class:`PrimeField` -- F_p, elements hold one reduced integer.
* :class:`QuadraticField` -- F_p[i]/(i^2 - c) with ``c`` the least positive
  quadratic non-residue mod p, so serialized elements are reproducible.
* :class:`ExtensionField` -- base[T]/(f) for a monic irreducible ``f`` over a
  prime or quadratic base.  Elements are numpy arrays and multiplication is
  convolution followed by a precomputed reduction matrix.

Descriptors are immutable once built; elements are immutable values.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ._polyops import BaseRing
from .errors import FieldMismatchError, SearchFailedError

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "PrimeField",
    "QuadraticField",
    "ExtensionField",
    "make_extension",
    "sqrt",
    "quadratic_character",
    "frobenius_p2",
    "format_element",
    "random_below",
    "batch_inverse",
]


def random_below(rng: np.random.Generator, n: int, size=None):
    """Uniform integers in [0, n) from a numpy generator, for any size of n."""
    if n < (1 << 62):
        return rng.integers(0, n, size=size)
    nbytes = (n.bit_length() + 7) // 8 + 8
    if size is None:
        return int.from_bytes(rng.bytes(nbytes), "little") % n
    count = int(np.prod(size))
    vals = [int.from_bytes(rng.bytes(nbytes), "little") % n for _ in range(count)]
    return np.array(vals, dtype=object).reshape(size)


def quadratic_character(d: int, p: int) -> int:
    """Legendre symbol (d/p) for an odd prime p, by Euler's criterion."""
    r = pow(d % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class FieldElement:
    """Common behaviour of elements of every tower level."""

    __slots__ = ("field",)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            if other.field == self.field:
                return self.field(other)
            try:
                return self.field(other)
            except FieldMismatchError:
                raise
            except (TypeError, ValueError):
                raise FieldMismatchError(f"field mismatch: {other.field!r} vs {self.field!r}")
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other % self.field.p == 0:
                raise ZeroDivisionError("division by zero")
            return self * pow(other, -1, self.field.p)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __ne__(self, other):
        return not self == other

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        return (self ** ((self.field.order - 1) // 2)).is_one()

    def sqrt(self):
        return sqrt(self)

    def is_one(self) -> bool:
        return self == self.field.one

    def __repr__(self):
        return f"{type(self).__name__}({format_element(self)} in {self.field!r})"


class FpElement(FieldElement):
    __slots__ = ("v",)

    def __init__(self, field, v: int):
        self.field = field
        self.v = v

    @property
    def coeffs(self):
        return (self.v,)

    def to_list(self):
        return [self.v]

    def is_zero(self):
        return self.v == 0

    def __bool__(self):
        return self.v != 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, (self.v + other.v) % self.field.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, (self.v - other.v) % self.field.p)

    def __neg__(self):
        return FpElement(self.field, -self.v % self.field.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return FpElement(self.field, self.v * other % self.field.p)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.field, self.v * other.v % self.field.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by zero")
        return FpElement(self.field, pow(self.v, -1, self.field.p))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElement(self.field, pow(self.v, e, self.field.p))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.v == int(other) % self.field.p
        if isinstance(other, FpElement):
            return self.field == other.field and self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __int__(self):
        return self.v


class Fp2Element(FieldElement):
    """a + b*i with i^2 = c."""

    __slots__ = ("a", "b")

    def __init__(self, field, a: int, b: int):
        self.field = field
        self.a = a
        self.b = b

    @property
    def coeffs(self):
        return (self.a, self.b)

    def to_list(self):
        return [self.a, self.b]

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return Fp2Element(self.field, (self.a + other.a) % p, (self.b + other.b) % p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return Fp2Element(self.field, (self.a - other.a) % p, (self.b - other.b) % p)

    def __neg__(self):
        p = self.field.p
        return Fp2Element(self.field, -self.a % p, -self.b % p)

    def __mul__(self, other):
        p = self.field.p
        if isinstance(other, int):
            return Fp2Element(self.field, self.a * other % p, self.b * other % p)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, x, y = self.a, self.b, other.a, other.b
        return Fp2Element(self.field, (a * x + self.field.c * b * y) % p, (a * y + b * x) % p)

    def inverse(self):
        p = self.field.p
        norm = (self.a * self.a - self.field.c * self.b * self.b) % p
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        ninv = pow(norm, -1, p)
        return Fp2Element(self.field, self.a * ninv % p, -self.b * ninv % p)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.b == 0 and self.a == int(other) % self.field.p
        if isinstance(other, Fp2Element):
            return self.field == other.field and self.a == other.a and self.b == other.b
        if isinstance(other, FpElement) and other.field.p == self.field.p:
            return self.b == 0 and self.a == other.v
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash((self.field.p, self.a))
        return hash((self.field.p, self.a, self.b))

    def sort_key(self):
        return (self.a, self.b)


class ExtElement(FieldElement):
    """Element of base[T]/(f) stored as an array of shape (d, m)."""

    __slots__ = ("c",)

    def __init__(self, field, c: np.ndarray):
        self.field = field
        self.c = c

    @property
    def coeffs(self):
        return tuple(self.field.base_element(self.c[:, k]) for k in range(self.field.m))

    def to_list(self):
        return [[int(v) for v in self.c[:, k]] for k in range(self.field.m)]

    def is_zero(self):
        return not self.c.any()

    def __bool__(self):
        return bool(self.c.any())

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElement(self.field, (self.c + other.c) % self.field.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElement(self.field, (self.c - other.c) % self.field.p)

    def __neg__(self):
        return ExtElement(self.field, -self.c % self.field.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return ExtElement(self.field, self.c * (other % self.field.p) % self.field.p)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElement(self.field, self.field._mul(self.c, other.c))

    def inverse(self):
        if not self.c.any():
            raise ZeroDivisionError("division by zero")
        return ExtElement(self.field, self.field._inv(self.c))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.field(int(other))
        elif isinstance(other, FieldElement) and other.field != self.field:
            try:
                other = self.field(other)
            except (FieldMismatchError, TypeError, ValueError):
                return False
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.field.p, tuple(int(v) for v in self.c.ravel())))

    def descend(self):
        """The base-field element equal to ``self``, or None if not constant."""
        if self.c[:, 1:].any():
            return None
        return self.field.base_element(self.c[:, 0])


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------


class FieldDescriptor:
    """Common interface: ``p``, ``degree`` (over F_p), ``level``, ``order``."""

    level: str
    p: int
    degree: int

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def characteristic(self) -> int:
        return self.p

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    def __ne__(self, other):
        return not self == other

    @cached_property
    def _nonresidue(self):
        """A fixed non-square, found by deterministic search (for square roots)."""
        for cand in self._nonresidue_candidates():
            if not cand.is_zero() and not cand.is_square():
                return cand
        raise SearchFailedError("no quadratic non-residue found")


class PrimeField(FieldDescriptor):
    level = "prime"

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise ValueError("odd prime characteristic required")
        self.p = p
        self.degree = 1
        self.base = None
        self.modulus = None

    def __call__(self, value):
        if isinstance(value, FpElement) and value.field.p == self.p:
            return value if value.field is self else FpElement(self, value.v)
        if isinstance(value, Fp2Element) and value.field.p == self.p and value.b == 0:
            return FpElement(self, value.a)
        if isinstance(value, FieldElement):
            raise FieldMismatchError(f"cannot coerce {value!r} into {self!r}")
        return FpElement(self, int(value) % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"F_{self.p}"

    def random(self, rng) -> FpElement:
        return FpElement(self, int(random_below(rng, self.p)))

    def elements(self):
        for v in range(self.p):
            yield FpElement(self, v)

    def _nonresidue_candidates(self):
        for v in range(2, self.p):
            yield self(v)

    def ring(self) -> BaseRing:
        return BaseRing(self.p)


class QuadraticField(FieldDescriptor):
    """F_{p^2} = F_p[i]/(i^2 - c), c the least positive non-residue."""

    level = "quadratic"

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise ValueError("odd prime characteristic required")
        self.p = p
        self.degree = 2
        self.base = PrimeField(p)
        self.c = next(c for c in range(2, p) if quadratic_character(c, p) == -1)
        # i^2 - c, over F_p, low to high.
        self.modulus = (-self.c % p, 0, 1)

    def __call__(self, value, b: int = 0):
        if isinstance(value, Fp2Element) and value.field.p == self.p:
            return value if value.field is self else Fp2Element(self, value.a, value.b)
        if isinstance(value, FpElement) and value.field.p == self.p:
            return Fp2Element(self, value.v, 0)
        if isinstance(value, FieldElement):
            raise FieldMismatchError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, (tuple, list)):
            value, b = value
        return Fp2Element(self, int(value) % self.p, int(b) % self.p)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.p == self.p

    def __hash__(self):
        return hash(("quadratic", self.p))

    def __repr__(self):
        return f"F_{self.p}^2"

    @property
    def gen(self) -> Fp2Element:
        return Fp2Element(self, 0, 1)

    def random(self, rng) -> Fp2Element:
        a, b = random_below(rng, self.p, size=2)
        return Fp2Element(self, int(a), int(b))

    def elements(self):
        for a in range(self.p):
            for b in range(self.p):
                yield Fp2Element(self, a, b)

    def _nonresidue_candidates(self):
        for k in range(self.p):
            yield Fp2Element(self, k, 1)

    def ring(self) -> BaseRing:
        return BaseRing(self.p, self.c)


class ExtensionField(FieldDescriptor):
    """base[T]/(f) for a monic polynomial f of degree m over a prime or quadratic base.

    ``modulus`` is given low-to-high as base elements or ints and must be
    monic.  Irreducibility is the caller's responsibility (see
    :func:`make_extension`); with ``f`` reducible this is just a quotient ring
    and inversion may fail.
    """

    level = "extension"

    def __init__(self, base: FieldDescriptor, modulus):
        if base.level not in ("prime", "quadratic"):
            raise ValueError("extension base must be the prime or quadratic level")
        self.base = base
        self.p = base.p
        self._ring = base.ring()
        self.d = self._ring.d
        if isinstance(modulus, np.ndarray):
            f = modulus.astype(self._ring.dtype).reshape(self.d, -1) % self.p
        else:
            f = np.array([_base_coeffs(base, c) for c in modulus], dtype=self._ring.dtype).T
            f = f.reshape(self.d, -1) % self.p
        if f.shape[1] < 2 or f[0, -1] != 1 or (self.d == 2 and f[1, -1] != 0):
            raise ValueError("modulus must be monic of degree >= 1")
        self._f = f
        self.m = f.shape[1] - 1
        self.degree = base.degree * self.m
        self.modulus = tuple(_to_base(base, f[:, k]) for k in range(self.m + 1))
        self._key = (self.p, self.d, tuple(int(v) for v in f.ravel()))
        self._red = self._reduction_matrix()

    def _reduction_matrix(self) -> np.ndarray:
        """Rows give T^(m+i) mod f for i < m-1, stacked for one matrix product."""
        m, d, p = self.m, self.d, self.p
        if m == 1:
            return np.zeros((0, d), dtype=self._ring.dtype)
        rows = np.zeros((m - 1, d, m), dtype=self._ring.dtype)
        # T^m = -(f_0 + ... + f_{m-1} T^{m-1})
        cur = (-self._f[:, :m]) % p
        for i in range(m - 1):
            rows[i] = cur
            top = tuple(int(v) for v in cur[:, m - 1])
            nxt = np.zeros((d, m), dtype=self._ring.dtype)
            nxt[:, 1:] = cur[:, : m - 1]
            nxt = (nxt + self._ring.scale((-self._f[:, :m]) % p, top)) % p
            cur = nxt
        if d == 1:
            return rows[:, 0, :]
        R0, R1 = rows[:, 0, :], rows[:, 1, :]
        top = np.concatenate([R0, R1], axis=1)
        bottom = np.concatenate([self._ring.c * R1 % p, R0], axis=1)
        return np.concatenate([top, bottom], axis=0)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        prod = self._ring.mul(a, b)
        m = self.m
        if m == 1:
            return prod
        high = prod[:, m:]
        red = high.reshape(-1) @ self._red
        out = prod[:, :m] + red.reshape(self.d, m)
        return out % self.p

    def _inv(self, a: np.ndarray) -> np.ndarray:
        r = self._ring.inv_mod(self._ring.trim(a), self._f)
        out = self._ring.zeros(self.m)
        out[:, : r.shape[1]] = r
        return out

    def __call__(self, value):
        if isinstance(value, ExtElement):
            if value.field == self:
                return value if value.field is self else ExtElement(self, value.c)
            raise FieldMismatchError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, (np.ndarray, list, tuple)):
            # Coefficients low to high: ints, base elements, or a (d, k) array.
            if isinstance(value, np.ndarray) and value.ndim == 2:
                arr = value
            else:
                arr = np.array([_base_coeffs(self.base, v) for v in value], dtype=self._ring.dtype).T
            out = self._ring.zeros(self.m)
            out[:, : arr.shape[1]] = arr % self.p
            return ExtElement(self, out)
        # Scalars and base-level elements embed as constants.
        s = self.base(value)
        out = self._ring.zeros(self.m)
        out[:, 0] = _base_coeffs(self.base, s)
        return ExtElement(self, out)

    def base_element(self, col):
        return _to_base(self.base, col)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{self.base!r}[T]/(deg {self.m})"

    @property
    def gen(self) -> ExtElement:
        return self([0, 1])

    def random(self, rng) -> ExtElement:
        arr = random_below(rng, self.p, size=(self.d, self.m))
        return ExtElement(self, np.asarray(arr, dtype=self._ring.dtype))

    def elements(self):
        """Every element; only sensible for small fields."""
        for flat in np.ndindex(*([self.p] * (self.d * self.m))):
            arr = np.array(flat, dtype=self._ring.dtype).reshape(self.m, self.d).T
            yield ExtElement(self, arr)

    def _nonresidue_candidates(self):
        for k in range(self.p):
            c = self._ring.zeros(self.m)
            c[0, 0] = k
            c[0, 1 % self.m] += 1
            yield ExtElement(self, c % self.p)

    def modulus_array(self) -> np.ndarray:
        return self._f.copy()


def _base_coeffs(base: FieldDescriptor, value):
    if isinstance(value, FieldElement):
        value = base(value)
        return list(value.coeffs)
    if base.level == "prime":
        return [int(value) % base.p]
    if isinstance(value, (tuple, list)):
        return [int(v) % base.p for v in value]
    return [int(value) % base.p, 0]


def _to_base(base: FieldDescriptor, col):
    if base.level == "prime":
        return FpElement(base, int(col[0]))
    return Fp2Element(base, int(col[0]), int(col[1]))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _is_irreducible(base: FieldDescriptor, f: np.ndarray) -> bool:
    """Ben-Or test: no factor of degree <= m/2 divides f."""
    ring = base.ring()
    m = f.shape[1] - 1
    if m == 1:
        return True
    if not f[:, 0].any():
        return False
    ext = ExtensionField(base, f)
    t = ext.gen
    h = t
    q = base.order
    for _ in range(m // 2):
        h = h**q
        diff = ring.trim((h - t).c)
        if diff.shape[1] == 0 or ring.gcd(f, diff).shape[1] > 1:
            return False
    return True


def is_irreducible(base: FieldDescriptor, modulus) -> bool:
    """Irreducibility of a monic polynomial (low-to-high coefficients) over ``base``."""
    ring = base.ring()
    f = np.array([_base_coeffs(base, c) for c in modulus], dtype=ring.dtype).T.reshape(ring.d, -1) % base.p
    return _is_irreducible(base, f)


def make_extension(base: FieldDescriptor, m: int, rng: np.random.Generator) -> FieldDescriptor:
    """A degree-``m`` extension of ``base`` with a random irreducible modulus.

    ``m == 1`` returns ``base`` unchanged.  Random monic candidates are tested
    with Ben-Or's algorithm; about ``m`` trials are expected and ``64*m`` are
    allowed before giving up.
    """
    if m < 1:
        raise ValueError("extension degree must be positive")
    if m == 1:
        return base
    ring = base.ring()
    for _ in range(64 * m):
        f = ring.zeros(m + 1)
        f[:, :m] = np.asarray(random_below(rng, base.p, size=(ring.d, m)), dtype=ring.dtype)
        f[0, m] = 1
        if _is_irreducible(base, f):
            return ExtensionField(base, f)
    raise SearchFailedError("irreducible search failed")


def sqrt(a: FieldElement):
    """A square root of ``a`` or None when ``a`` is not a square.

    Tonelli-Shanks over any odd-order field, using a fixed non-residue of the
    field so repeated calls are deterministic.  Either root may be returned.
    """
    F = a.field
    if a.is_zero():
        return F.zero
    if F.level == "prime":
        return _sqrt_prime(a)
    q = F.order
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    x = a ** ((s + 1) // 2)
    b = a**s
    if b.is_one():
        return x
    # b has 2-power order; a is a square iff that order is below 2^e.
    g = F._nonresidue ** s
    r = e
    while not b.is_one():
        t, k = b, 0
        while not t.is_one():
            t = t * t
            k += 1
            if k == r:
                return None
        gs = g ** (1 << (r - k - 1))
        x = x * gs
        g = gs * gs
        b = b * g
        r = k
    return x


def _sqrt_prime(a: FpElement):
    p = a.field.p
    v = a.v
    if pow(v, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return FpElement(a.field, pow(v, (p + 1) // 4, p))
    s, e = p - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = a.field._nonresidue.v
    x = pow(v, (s + 1) // 2, p)
    b = pow(v, s, p)
    g = pow(z, s, p)
    r = e
    while b != 1:
        t, k = b, 0
        while t != 1:
            t = t * t % p
            k += 1
        gs = pow(g, 1 << (r - k - 1), p)
        x = x * gs % p
        g = gs * gs % p
        b = b * g % p
        r = k
    return FpElement(a.field, x)


def batch_inverse(elems):
    """Inverses of nonzero elements with one field inversion (Montgomery's trick)."""
    if not elems:
        return []
    prefix = [elems[0]]
    for e in elems[1:]:
        prefix.append(prefix[-1] * e)
    inv = prefix[-1].inverse()
    out = [None] * len(elems)
    for k in range(len(elems) - 1, 0, -1):
        out[k] = inv * prefix[k - 1]
        inv = inv * elems[k]
    out[0] = inv
    return out


def frobenius_p2(a: Fp2Element) -> Fp2Element:
    """a^p for a in F_{p^2}; conjugation a + b i -> a - b i."""
    if a.field.level != "quadratic":
        raise ValueError("frobenius_p2 expects an element of the quadratic level")
    return Fp2Element(a.field, a.a, -a.b % a.field.p)


def format_element(a: FieldElement) -> str:
    """Comma-separated little-endian coefficients, flattened across tower levels."""

    def flat(x):
        if isinstance(x, list):
            for y in x:
                yield from flat(y)
        else:
            yield str(x)

    return ",".join(flat(a.to_list()))


def element_sort_key(a: FieldElement):
    return tuple(int(v) for v in format_element(a).split(","))


def parse_fp2(text: str, F: QuadraticField) -> Fp2Element:
    parts = [int(t) for t in str(text).split(",")]
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2:
        raise ValueError(f"expected 'a' or 'a,b' for an F_p^2 element, got {text!r}")
    return F(parts[0], parts[1])
