"""Long Weierstrass curves over tower fields.

The public group law works on affine points.  Scalar multiplication moves to
the isomorphic short model ``Y^2 = X^3 - 27 c4 X - 54 c6`` and runs in
Jacobian coordinates there, which avoids a field inversion per step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotSupersingularError, PointNotOnCurveError
from .fields import FieldDescriptor, FieldElement, batch_inverse, format_element, sqrt


@dataclass(frozen=True)
class CurvePoint:
    """Affine point ``(x, y)``; both coordinates None for the point at infinity."""

    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def key(self):
        """Hashable serialization used for table lookups."""
        if self.x is None:
            return None
        return (format_element(self.x), format_element(self.y))

    def __repr__(self):
        if self.x is None:
            return "CurvePoint(O)"
        return f"CurvePoint({self.x.to_list()}, {self.y.to_list()})"


INFINITY = CurvePoint()


@dataclass(frozen=True, eq=False)
class Curve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self):
        if self.discriminant().is_zero():
            raise ValueError("singular curve (discriminant is zero)")

    @classmethod
    def from_coefficients(cls, field: FieldDescriptor, a1=0, a2=0, a3=0, a4=0, a6=0) -> Curve:
        return cls(field(a1), field(a2), field(a3), field(a4), field(a6))

    @classmethod
    def short(cls, field: FieldDescriptor, a, b) -> Curve:
        return cls.from_coefficients(field, 0, 0, 0, a, b)

    @property
    def field(self) -> FieldDescriptor:
        return self.a4.field

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other):
        return isinstance(other, Curve) and all(x == y for x, y in zip(self.ainvs, other.ainvs))

    def __hash__(self):
        return hash(tuple(format_element(a) for a in self.ainvs))

    def base_change(self, F: FieldDescriptor) -> Curve:
        return Curve(*(F(a) for a in self.ainvs))

    # -- invariants -----------------------------------------------------------

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + a2 * 4
        b4 = a4 * 2 + a1 * a3
        b6 = a3 * a3 + a6 * 4
        b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - b4 * 24
        c6 = -(b2 * b2 * b2) + b2 * b4 * 36 - b6 * 216
        return c4, c6

    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b_invariants()
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    def j_invariant(self) -> FieldElement:
        c4, _ = self.c_invariants()
        return c4 * c4 * c4 / self.discriminant()

    # -- points ---------------------------------------------------------------

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6

    def point(self, x, y) -> CurvePoint:
        P = CurvePoint(self.field(x), self.field(y))
        if not self.contains(P):
            raise PointNotOnCurveError("point not on curve")
        return P

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def is_short(self) -> bool:
        return self.a1.is_zero() and self.a2.is_zero() and self.a3.is_zero()

    def short_coefficients(self):
        """(A, B) of the isomorphic short model used for fast arithmetic."""
        if self.is_short():
            return self.a4, self.a6
        c4, c6 = self.c_invariants()
        return c4 * -27, c6 * -54

    def to_short(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity or self.is_short():
            return P
        b2 = self.b_invariants()[0]
        return CurvePoint(P.x * 36 + b2 * 3, (P.y * 2 + self.a1 * P.x + self.a3) * 108)

    def from_short(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity or self.is_short():
            return P
        b2 = self.b_invariants()[0]
        x = (P.x - b2 * 3) / 36
        y = (P.y / 108 - self.a1 * x - self.a3) / 2
        return CurvePoint(x, y)

    def __repr__(self):
        return "Curve(" + "; ".join(format_element(a) for a in self.ainvs) + f" over {self.field!r})"


def point_add(E: Curve, A: CurvePoint, B: CurvePoint, *, check: bool = True) -> CurvePoint:
    """Affine group law on the long Weierstrass model."""
    if check and not (E.contains(A) and E.contains(B)):
        raise PointNotOnCurveError("point not on curve")
    if A.is_infinity:
        return B
    if B.is_infinity:
        return A
    a1, a2, a3, a4, a6 = E.ainvs
    x1, y1, x2, y2 = A.x, A.y, B.x, B.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3).is_zero():
            return INFINITY
        lam = (x1 * x1 * 3 + a2 * x1 * 2 + a4 - a1 * y1) / (y1 * 2 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


# -- Jacobian arithmetic on y^2 = x^3 + A x + B ------------------------------


def _jac_double(P, A):
    X, Y, Z = P
    if Z.is_zero() or Y.is_zero():
        return (X, Y, Z.field.zero)
    YY = Y * Y
    S = X * YY * 4
    XX = X * X
    M = XX * 3
    if not A.is_zero():
        ZZ = Z * Z
        M = M + A * ZZ * ZZ
    X3 = M * M - S * 2
    Y3 = M * (S - X3) - YY * YY * 8
    Z3 = Y * Z * 2
    return (X3, Y3, Z3)


def _jac_add_affine(P, x2, y2, A):
    X1, Y1, Z1 = P
    if Z1.is_zero():
        return (x2, y2, x2.field.one)
    Z1Z1 = Z1 * Z1
    U2 = x2 * Z1Z1
    S2 = y2 * Z1 * Z1Z1
    H = U2 - X1
    r = S2 - Y1
    if H.is_zero():
        if r.is_zero():
            return _jac_double(P, A)
        return (X1, Y1, Z1.field.zero)
    HH = H * H
    HHH = H * HH
    V = X1 * HH
    X3 = r * r - HHH - V * 2
    Y3 = r * (V - X3) - Y1 * HHH
    Z3 = Z1 * H
    return (X3, Y3, Z3)


def _naf(m: int):
    digits = []
    while m:
        if m & 1:
            d = 2 - (m & 3)
            m -= d
        else:
            d = 0
        digits.append(d)
        m >>= 1
    return digits


def _jac_mul(P: CurvePoint, m: int, A):
    """m*P in Jacobian coordinates on the short model, P affine."""
    F = A.field
    R = (F.one, F.one, F.zero)
    if P.is_infinity or m == 0:
        return R
    negy = -P.y
    for d in reversed(_naf(m)):
        R = _jac_double(R, A)
        if d == 1:
            R = _jac_add_affine(R, P.x, P.y, A)
        elif d == -1:
            R = _jac_add_affine(R, P.x, negy, A)
    return R


def batch_normalize(points):
    """Affine forms of Jacobian points using a single field inversion."""
    finite = [i for i, P in enumerate(points) if not P[2].is_zero()]
    out = [INFINITY] * len(points)
    invs = batch_inverse([points[i][2] for i in finite])
    for zi, i in zip(invs, finite):
        X, Y, _ = points[i]
        zi2 = zi * zi
        out[i] = CurvePoint(X * zi2, Y * zi2 * zi)
    return out


def _normalize(P) -> CurvePoint:
    return batch_normalize([P])[0]


def scalar_mul(E: Curve, m: int, A: CurvePoint, *, check: bool = True) -> CurvePoint:
    """m*A by signed double-and-add; negative m multiplies -A."""
    if check and not E.contains(A):
        raise PointNotOnCurveError("point not on curve")
    if m < 0:
        return scalar_mul(E, -m, E.neg(A), check=False)
    if m == 0 or A.is_infinity:
        return INFINITY
    a, _ = E.short_coefficients()
    R = _jac_mul(E.to_short(A), m, a)
    return E.from_short(_normalize(R))


def is_zero_multiple(E: Curve, m: int, A: CurvePoint) -> bool:
    """Whether m*A is the point at infinity (no final normalization needed)."""
    if A.is_infinity or m == 0:
        return True
    a, _ = E.short_coefficients()
    return _jac_mul(E.to_short(A), abs(m), a)[2].is_zero()


def random_point(E: Curve, rng: np.random.Generator) -> CurvePoint:
    """Random affine point: uniform x among solvable ones, then a random root for y."""
    F = E.field
    a1, a2, a3, a4, a6 = E.ainvs
    while True:
        x = F.random(rng)
        h = a1 * x + a3
        disc = h * h + (x * x * x + a2 * x * x + a4 * x + a6) * 4
        r = sqrt(disc)
        if r is None:
            continue
        if rng.integers(2):
            r = -r
        return CurvePoint(x, (r - h) / 2)


def j_invariant(E: Curve) -> FieldElement:
    return E.j_invariant()


def curve_from_j(j: FieldElement) -> Curve:
    """A curve with the given j-invariant (characteristic > 3)."""
    F = j.field
    if F.p <= 3:
        raise ValueError("curve_from_j requires characteristic > 3")
    if j.is_zero():
        return Curve.short(F, 0, 1)
    if j == 1728:
        return Curve.short(F, 1, 0)
    k = j * (F(1728) - j)
    return Curve.short(F, k * 3, k * (F(1728) - j) * 2)


# -- traces and point counts -------------------------------------------------


@dataclass(frozen=True)
class TraceData:
    """Frobenius trace ``a`` of a curve over F_q (q = p or p^2)."""

    q: int
    a: int
    p: int

    @property
    def order(self) -> int:
        return self.q + 1 - self.a

    @property
    def is_supersingular(self) -> bool:
        return self.a % self.p == 0


TRACE_CONFIRMATIONS = 8
_TRACE_MAX_POINTS = 64


def supersingular_trace(E: Curve, rng: np.random.Generator) -> TraceData:
    """Identify the trace among {0, +-p, +-2p} by annihilating random points.

    Candidates are eliminated when (q + 1 - a) * P != O.  At least eight
    points are drawn and drawing continues until exactly one candidate is
    left.  Raises :class:`NotSupersingularError` when none survive (or the
    set never narrows to one).
    """
    F = E.field
    p = F.p
    if F.level == "prime":
        candidates = [0]
    elif F.level == "quadratic":
        candidates = [0, p, -p, 2 * p, -2 * p]
    else:
        raise ValueError("supersingular_trace expects a curve over F_p or F_p^2")
    q = F.order
    drawn = 0
    while drawn < _TRACE_MAX_POINTS:
        P = random_point(E, rng)
        drawn += 1
        candidates = [a for a in candidates if is_zero_multiple(E, q + 1 - a, P)]
        if not candidates:
            raise NotSupersingularError("not supersingular or trace undetermined")
        if len(candidates) == 1 and drawn >= TRACE_CONFIRMATIONS:
            return TraceData(q=q, a=candidates[0], p=p)
    raise NotSupersingularError("not supersingular or trace undetermined")


def point_count_ext(q: int, a: int, n: int) -> int:
    """#E(F_{q^n}) = q^n + 1 - (pi^n + conj(pi)^n) via the Lucas recurrence."""
    if n < 1:
        raise ValueError("n must be positive")
    t_prev, t = 2, a
    for _ in range(n - 1):
        t_prev, t = t, a * t - q * t_prev
    return q**n + 1 - t


def brute_force_count(E: Curve) -> int:
    """#E(F_q) by testing every x; only sensible for small fields."""
    a1, a2, a3, a4, a6 = E.ainvs
    count = 1
    for x in E.field.elements():
        h = a1 * x + a3
        disc = h * h + (x * x * x + a2 * x * x + a4 * x + a6) * 4
        if disc.is_zero():
            count += 1
        elif disc.is_square():
            count += 2
    return count


def enumerate_points(E: Curve):
    """All points of a small curve, infinity first."""
    pts = [INFINITY]
    a1, a2, a3, a4, a6 = E.ainvs
    for x in E.field.elements():
        h = a1 * x + a3
        disc = h * h + (x * x * x + a2 * x * x + a4 * x + a6) * 4
        r = sqrt(disc)
        if r is None:
            continue
        y1 = (r - h) / 2
        pts.append(CurvePoint(x, y1))
        if not r.is_zero():
            pts.append(CurvePoint(x, (-r - h) / 2))
    return pts
