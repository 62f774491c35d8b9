"""Quotient curves E/C for kernels C of odd prime order (Velu's formulas)."""

from __future__ import annotations

from dataclasses import dataclass

from .curves import Curve, CurvePoint, _jac_add_affine, batch_normalize
from .errors import KernelOrderError
from .fields import FieldElement, batch_inverse


@dataclass(frozen=True)
class VeluAccumulator:
    t: FieldElement
    w: FieldElement


def kernel_points(E: Curve, G: CurvePoint, ell: int, *, halves: bool = False) -> list[CurvePoint]:
    """Nonzero points of <G>, checked to have exact order l.

    With ``halves=True`` only G, 2G, ..., ((l-1)/2)G are returned: one
    representative of each pair {Q, -Q}.
    """
    if ell < 3 or ell % 2 == 0:
        raise KernelOrderError("Velu's formulas are implemented for odd prime l only")
    if G.is_infinity:
        raise KernelOrderError("kernel generator order mismatch")
    h = (ell - 1) // 2
    a, _ = E.short_coefficients()
    Gs = E.to_short(G)
    F = E.field
    jac = [(Gs.x, Gs.y, F.one)]
    for _ in range(h):
        jac.append(_jac_add_affine(jac[-1], Gs.x, Gs.y, a))
    aff = batch_normalize(jac)
    hG, h1G = aff[h - 1], aff[h]
    # l = 2h + 1, so l*G = O exactly when (h+1)G = -(hG).
    if hG.is_infinity or h1G.is_infinity or hG.x != h1G.x or not (hG.y + h1G.y).is_zero():
        raise KernelOrderError("kernel generator order mismatch")
    half = [E.from_short(P) for P in aff[:h]]
    if halves:
        return half
    return half + [E.neg(P) for P in half]


def velu_sums(E: Curve, points) -> VeluAccumulator:
    """t and w accumulated over the given kernel points."""
    a1, a2, a3, a4, _ = E.ainvs
    t = E.field.zero
    w = E.field.zero
    for Q in points:
        x, y = Q.x, Q.y
        gx = x * x * 3 + a2 * x * 2 + a4 - a1 * y
        gy = -(y * 2) - a1 * x - a3
        tQ = gx * 2 - a1 * gy
        uQ = gy * gy
        t = t + tQ
        w = w + uQ + x * tQ
    return VeluAccumulator(t, w)


def curve_from_sums(E: Curve, acc: VeluAccumulator) -> Curve:
    a1, a2, a3, a4, a6 = E.ainvs
    A4 = a4 - acc.t * 5
    A6 = a6 - (a1 * a1 + a2 * 4) * acc.t - acc.w * 7
    return Curve(a1, a2, a3, A4, A6)


def velu_from_kernel_points(E: Curve, representatives) -> Curve:
    """Codomain for a kernel given by one representative of each {Q, -Q}.

    An empty list is the trivial kernel and returns E itself.
    """
    return curve_from_sums(E, velu_sums(E, representatives))


def velu_isogeny(E: Curve, G: CurvePoint, ell: int) -> tuple[Curve, FieldElement]:
    """(E/<G>, j(E/<G>)) for G of exact odd prime order l."""
    E2 = velu_from_kernel_points(E, kernel_points(E, G, ell, halves=True))
    return E2, E2.j_invariant()


def _descend(j, base):
    if getattr(j.field, "level", None) == "extension" and j.field.base == base:
        down = j.descend()
        if down is not None:
            return down
    return j


def quotient_j_set(E: Curve, basis, ell: int) -> list:
    """j-invariants of E/G_i for G_1 = <Q>, G_{1+i} = <P + (i-1)Q>, i = 1..l.

    ``E`` is the curve over its definition field; the basis lives on the
    base change ``basis.curve``.  Values lying in E's field are returned as
    elements of that field, others stay in the extension.
    """
    Ex = basis.curve
    a, _ = Ex.short_coefficients()
    Ps, Qs = Ex.to_short(basis.P), Ex.to_short(basis.Q)
    jac = [(Ps.x, Ps.y, Ex.field.one)]
    for _ in range(ell - 1):
        jac.append(_jac_add_affine(jac[-1], Qs.x, Qs.y, a))
    gens = [basis.Q] + [Ex.from_short(G) for G in batch_normalize(jac)]
    quotients = [velu_from_kernel_points(Ex, kernel_points(Ex, G, ell, halves=True)) for G in gens]
    nums, dens = [], []
    for C in quotients:
        c4, _ = C.c_invariants()
        nums.append(c4 * c4 * c4)
        dens.append(C.discriminant())
    js = [n * d for n, d in zip(nums, batch_inverse(dens))]
    return [_descend(j, E.field) for j in js]
