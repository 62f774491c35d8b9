"""phi_l(x, j) mod p from the l+1 quotient curves of a supersingular curve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Curve, CurvePoint, TraceData, brute_force_count, curve_from_j, supersingular_trace
from .errors import NotSupersingularError, PreconditionError, TripwireError
from .fields import (
    FieldElement,
    Fp2Element,
    QuadraticField,
    element_sort_key,
    format_element,
    parse_fp2,
)
from .torsion import (
    TorsionStats,
    extension_degree_candidates,
    random_torsion_point,
    torsion_basis,
)
from .velu import _descend, quotient_j_set, velu_isogeny

BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class LocalPoly:
    """Roots (sorted canonically) and monic coefficients (x^0 upward) of phi_l(x, j)."""

    j: Fp2Element
    ell: int
    roots: tuple
    coeffs: tuple
    n: int = 0

    def to_text(self) -> str:
        lines = [f"j {format_element(self.j)}"]
        lines += [f"c {k} {format_element(c)}" for k, c in enumerate(self.coeffs)]
        lines += [f"r {format_element(r)}" for r in self.roots]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "j": format_element(self.j),
            "ell": self.ell,
            "coeffs": [format_element(c) for c in self.coeffs],
            "roots": [format_element(r) for r in self.roots],
        }


def poly_from_roots(roots, F) -> list:
    """Coefficients (x^0 upward) of prod (x - r)."""
    out = [F.one]
    for r in roots:
        nxt = [F.zero] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - r * c
        out = nxt
    return out


def _as_fp2(j, p: int) -> Fp2Element:
    F = QuadraticField(p)
    if isinstance(j, FieldElement):
        return F(j)
    if isinstance(j, str):
        return parse_fp2(j, F)
    return F(j)


def _check_inputs(p: int, ell: int):
    if ell < 3 or ell % 2 == 0 or any(ell % r == 0 for r in range(3, int(ell**0.5) + 1, 2)):
        raise PreconditionError("l must be an odd prime")
    if ell == p:
        raise PreconditionError("l must differ from p")


def local_modular_poly(
    j,
    p: int,
    ell: int,
    rng: np.random.Generator,
    *,
    n: int | None = None,
    extensions: dict | None = None,
    stats: TorsionStats | None = None,
) -> LocalPoly:
    """phi_l(x, j) over F_{p^2} for a supersingular j.

    ``extensions`` is an optional cache {n: extension field} shared across
    calls so one irreducible polynomial per degree is reused.
    """
    _check_inputs(p, ell)
    j = _as_fp2(j, p)
    E = curve_from_j(j)
    trace = supersingular_trace(E, rng)
    if n is None:
        (n,) = extension_degree_candidates(trace, ell)[:1]
    ext = extensions.get(n) if extensions is not None else None
    basis = torsion_basis(E, ell, trace, rng, n=n, extension=ext, stats=stats)
    if extensions is not None and n not in extensions and basis.curve.field is not E.field:
        extensions[n] = basis.curve.field
    roots = quotient_j_set(E, basis, ell)
    for r in roots:
        if not isinstance(r, Fp2Element):
            raise TripwireError("quotient j-invariant outside F_p^2")
    roots = tuple(sorted(roots, key=element_sort_key))
    coeffs = tuple(poly_from_roots(roots, j.field))
    return LocalPoly(j=j, ell=ell, roots=roots, coeffs=coeffs, n=basis.n)


def _trace_for(E: Curve, group_order: int | None, rng) -> TraceData:
    F = E.field
    q, p = F.order, F.p
    if group_order is not None:
        return TraceData(q=q, a=q + 1 - group_order, p=p)
    try:
        return supersingular_trace(E, rng)
    except NotSupersingularError:
        if q >= BRUTE_FORCE_LIMIT:
            raise PreconditionError("group order required for ordinary curves over large fields")
        return TraceData(q=q, a=q + 1 - brute_force_count(E), p=p)


def random_l_torsion_point(
    E: Curve,
    ell: int,
    group_order: int | None = None,
    rng: np.random.Generator | None = None,
    *,
    extension=None,
) -> tuple[Curve, CurvePoint]:
    """A random point of exact order l, on the base change that contains it.

    Returns ``(E_ext, P)``.  For ordinary curves pass ``group_order`` (or let
    it be brute-forced on small fields).  Passing the same ``extension`` on
    repeated calls keeps the points comparable.
    """
    if rng is None:
        raise ValueError("rng is required")
    _check_inputs(E.field.p, ell)
    trace = _trace_for(E, group_order, rng)
    n = None
    if extension is not None:
        n = extension.degree // E.field.degree
    return random_torsion_point(E, ell, trace, rng, n=n, extension=extension)


def random_l_isogeny(
    E: Curve, ell: int, group_order: int | None = None, rng: np.random.Generator | None = None
):
    """(E', j') for a random l-isogeny out of E; j' lands in E's field when it can."""
    E_ext, P = random_l_torsion_point(E, ell, group_order, rng)
    E2, j2 = velu_isogeny(E_ext, P, ell)
    return E2, _descend(j2, E.field)
