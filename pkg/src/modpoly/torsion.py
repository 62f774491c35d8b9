"""Generators of the l-torsion subgroup E[l] over a suitable extension."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import (
    INFINITY,
    Curve,
    CurvePoint,
    TraceData,
    _jac_add_affine,
    _jac_mul,
    batch_normalize,
    point_count_ext,
    random_point,
)
from .errors import PreconditionError, TorsionError
from .fields import FieldDescriptor, make_extension

OUTER_RETRIES = 20
_DRAW_RETRIES = 64


@dataclass(frozen=True)
class TorsionBasis:
    """P, Q generating E[l] on ``curve`` (the base change to the extension)."""

    P: CurvePoint
    Q: CurvePoint
    curve: Curve
    n: int
    S: int
    k: int
    s: int


@dataclass
class TorsionStats:
    """Counters for the randomized steps, accumulated across calls."""

    draws: int = 0
    draw_successes: int = 0
    independence_tests: int = 0
    independence_failures: int = 0
    extension_degrees: list = field(default_factory=list)

    @property
    def draw_success_rate(self) -> float:
        return self.draw_successes / self.draws if self.draws else float("nan")

    @property
    def independence_failure_rate(self) -> float:
        if not self.independence_tests:
            return float("nan")
        return self.independence_failures / self.independence_tests


def ell_valuation(S: int, ell: int) -> int:
    k = 0
    while S % ell == 0:
        S //= ell
        k += 1
    return k


def torsion_extension_degree(trace: TraceData, ell: int) -> int:
    """Degree n with E[l] defined over F_{q^n}.

    Supersingular traces give l-1, 2(l-1), 3(l-1) for t = +-2p, 0, +-p.  Any
    other trace gets the generic first choice l^2 - 1 (see
    :func:`extension_degree_candidates` for the full trial sequence).
    """
    p = trace.p
    if trace.is_supersingular:
        if abs(trace.a) == 2 * p:
            return ell - 1
        if trace.a == 0:
            return 2 * (ell - 1)
        if abs(trace.a) == p:
            return 3 * (ell - 1)
    return ell * ell - 1


def extension_degree_candidates(trace: TraceData, ell: int) -> tuple[int, ...]:
    if trace.is_supersingular and trace.a in (0, trace.p, -trace.p, 2 * trace.p, -2 * trace.p):
        return (torsion_extension_degree(trace, ell),)
    return (ell * ell - 1, ell * (ell - 1))


def _key(P: CurvePoint):
    return P.key()


def bsgs_member(E: Curve, P: CurvePoint, Q: CurvePoint, ell: int) -> bool:
    """True iff Q = m*P for some 0 <= m < l, for P of order l.

    ceil(sqrt(l)) baby steps are tabulated by serialized coordinates and at
    most ceil(sqrt(l)) + 1 giant steps are compared against the table.
    """
    if Q.is_infinity:
        return True
    m = math.isqrt(ell - 1) + 1
    a, _ = E.short_coefficients()
    Ps, Qs = E.to_short(P), E.to_short(Q)
    F = E.field
    baby = [(F.one, F.one, F.zero)]
    for _ in range(1, m + 1):
        baby.append(_jac_add_affine(baby[-1], Ps.x, Ps.y, a))
    baby_aff = batch_normalize(baby)
    table = {_key(B): j for j, B in enumerate(baby_aff[:m])}
    mP = baby_aff[m]
    if mP.is_infinity:
        return _key(Qs) in table
    step_y = -mP.y
    giants = [(Qs.x, Qs.y, F.one)]
    for _ in range(m):
        giants.append(_jac_add_affine(giants[-1], mP.x, step_y, a))
    return any(_key(G) in table for G in batch_normalize(giants))


def _exact_order_ell(E_short_a, P: CurvePoint, ell: int, k: int):
    """l^i * P for the i with l^i P != O and l^(i+1) P = O, i < k.

    Returns None when l^k P != O, which means P is not in an l-Sylow of the
    assumed size (wrong trace or extension degree).
    """
    cur = P
    for _ in range(k):
        nxt = batch_normalize([_jac_mul(cur, ell, E_short_a)])[0]
        if nxt.is_infinity:
            return cur
        cur = nxt
    return None


def sylow_draw(E_ext: Curve, s: int, rng: np.random.Generator) -> CurvePoint:
    """s * U for a random point U, in short-model coordinates (may be O)."""
    a, _ = E_ext.short_coefficients()
    U = E_ext.to_short(random_point(E_ext, rng))
    return batch_normalize([_jac_mul(U, s, a)])[0]


def _extension_for(E: Curve, n: int, rng, extension: FieldDescriptor | None):
    if extension is not None and extension.degree == E.field.degree * n and extension.p == E.field.p:
        return extension
    return make_extension(E.field, n, rng)


def torsion_basis(
    E: Curve,
    ell: int,
    trace: TraceData,
    rng: np.random.Generator,
    *,
    n: int | None = None,
    extension: FieldDescriptor | None = None,
    stats: TorsionStats | None = None,
) -> TorsionBasis:
    """Two independent points of order l on E over F_{q^n}.

    Each round draws U, V until both s*U and s*V are nonzero, pushes them
    down to exact order l, and rejects the pair when BSGS finds Q in <P>.
    At most ``OUTER_RETRIES`` rounds are tried per extension degree.
    """
    p = E.field.p
    if ell < 3 or ell % 2 == 0:
        raise PreconditionError("l must be an odd prime")
    if ell == p:
        raise PreconditionError("l must differ from the characteristic")
    degrees = (n,) if n is not None else extension_degree_candidates(trace, ell)
    last_error = None
    for n_try in degrees:
        S = point_count_ext(trace.q, trace.a, n_try)
        k = ell_valuation(S, ell)
        if k < 2:
            last_error = TorsionError(f"l-valuation too small (k={k} at n={n_try})")
            continue
        s = S // ell**k
        ext = _extension_for(E, n_try, rng, extension)
        E_ext = E.base_change(ext)
        a, _ = E_ext.short_coefficients()
        for _ in range(OUTER_RETRIES):
            for _ in range(_DRAW_RETRIES):
                P1 = sylow_draw(E_ext, s, rng)
                Q1 = sylow_draw(E_ext, s, rng)
                ok = not (P1.is_infinity or Q1.is_infinity)
                if stats is not None:
                    stats.draws += 1
                    stats.draw_successes += ok
                if ok:
                    break
            else:
                continue
            P = _exact_order_ell(a, P1, ell, k)
            Q = _exact_order_ell(a, Q1, ell, k)
            if P is None or Q is None:
                continue
            P, Q = E_ext.from_short(P), E_ext.from_short(Q)
            dependent = bsgs_member(E_ext, P, Q, ell)
            if stats is not None:
                stats.independence_tests += 1
                stats.independence_failures += dependent
            if not dependent:
                if stats is not None:
                    stats.extension_degrees.append(n_try)
                return TorsionBasis(P=P, Q=Q, curve=E_ext, n=n_try, S=S, k=k, s=s)
        last_error = TorsionError("retry budget exhausted")
    raise last_error


def random_torsion_point(
    E: Curve,
    ell: int,
    trace: TraceData,
    rng: np.random.Generator,
    *,
    n: int | None = None,
    extension: FieldDescriptor | None = None,
):
    """One point of exact order l over the first workable extension (needs k >= 1)."""
    degrees = (n,) if n is not None else extension_degree_candidates(trace, ell)
    for n_try in degrees:
        S = point_count_ext(trace.q, trace.a, n_try)
        k = ell_valuation(S, ell)
        if k < 1:
            continue
        s = S // ell**k
        ext = _extension_for(E, n_try, rng, extension)
        E_ext = E.base_change(ext)
        a, _ = E_ext.short_coefficients()
        for _ in range(OUTER_RETRIES * _DRAW_RETRIES):
            P1 = sylow_draw(E_ext, s, rng)
            if not P1.is_infinity:
                P = _exact_order_ell(a, P1, ell, k)
                if P is not None:
                    return E_ext, E_ext.from_short(P)
        raise TorsionError("retry budget exhausted")
    raise TorsionError("l-valuation too small for every candidate degree")


__all__ = [
    "INFINITY",
    "TorsionBasis",
    "TorsionStats",
    "OUTER_RETRIES",
    "bsgs_member",
    "ell_valuation",
    "extension_degree_candidates",
    "random_torsion_point",
    "sylow_draw",
    "torsion_basis",
    "torsion_extension_degree",
]
