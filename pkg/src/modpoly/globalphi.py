"""phi_l(x, y) mod p by walking the supersingular l-isogeny graph.

The walk collects l+1 distinct supersingular j-invariants together with
phi_l(x, j_i); each x^k coefficient p_k(y) is then recovered by Lagrange
interpolation through the points (j_i, v_ki) and descended to F_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bivariate import BivariatePoly
from .errors import DescentError, FrontierExhaustedError, PreconditionError, TripwireError
from .fields import QuadraticField
from .localphi import LocalPoly, _check_inputs, local_modular_poly
from .ssinit import supersingular_count, supersingular_j
from .torsion import TorsionStats


@dataclass
class WalkState:
    p: int
    ell: int
    visited: list = field(default_factory=list)
    locals: list = field(default_factory=list)
    frontier: list = field(default_factory=list)

    @property
    def nodes(self) -> list:
        return list(self.visited)


def check_walk_preconditions(p: int, ell: int):
    _check_inputs(p, ell)
    if supersingular_count(p) < ell + 1:
        raise PreconditionError(
            f"precondition S(p) ≥ ℓ+1 violated (S({p}) = {supersingular_count(p)}, ℓ+1 = {ell + 1})"
        )


def collect_j_invariants(
    p: int,
    ell: int,
    j0,
    rng: np.random.Generator,
    *,
    extensions: dict | None = None,
    stats: TorsionStats | None = None,
) -> WalkState:
    """Breadth-first walk from j0 until l+1 distinct nodes have local polynomials.

    The next node is always the earliest-discovered unvisited root; roots
    found at the same node are queued in canonical order.
    """
    check_walk_preconditions(p, ell)
    F = QuadraticField(p)
    j0 = F(j0)
    if extensions is None:
        extensions = {}
    state = WalkState(p=p, ell=ell, frontier=[j0])
    seen = {j0}
    while len(state.visited) < ell + 1:
        if not state.frontier:
            raise FrontierExhaustedError("frontier exhausted")
        j = state.frontier.pop(0)
        loc = local_modular_poly(j, p, ell, rng, extensions=extensions, stats=stats)
        state.visited.append(j)
        state.locals.append(loc)
        for r in loc.roots:  # already in canonical order
            if r not in seen:
                seen.add(r)
                state.frontier.append(r)
    return state


def _lagrange_columns(nodes, values_by_k, R, p):
    """For each k, the coefficients (low to high) of the degree <= len(nodes)-1 interpolant."""
    one = R.const((1, 0))
    master = one
    for y in nodes:
        master = R.trim(R.mul(master, R.asarray([[-y.a, 1], [-y.b, 0]])))
    size = len(nodes)
    # basis[i] = w_i * master / (y - y_i)
    basis = []
    for i, yi in enumerate(nodes):
        quotient, rem = R.divmod(master, R.asarray([[-yi.a, 1], [-yi.b, 0]]))
        if rem.shape[1]:
            raise TripwireError("interpolation node is not a root of the node polynomial")
        w = (1, 0)
        for m, ym in enumerate(nodes):
            if m != i:
                diff = yi - ym
                w = R.smul(w, (diff.a, diff.b))
        w = R.sinv(w)
        col = R.zeros(size)
        scaled = R.scale(quotient, w)
        col[:, : scaled.shape[1]] = scaled
        basis.append(col)
    basis = np.stack(basis)  # (size, 2, size)
    out = []
    for values in values_by_k:
        acc = R.zeros(size)
        for b, v in zip(basis, values):
            acc = (acc + R.scale(b, (v.a, v.b))) % p
        out.append(acc)
    return out


def interpolate_bivariate(walk: WalkState) -> BivariatePoly:
    """phi_l(x, y) over F_p from the walk's l+1 local polynomials."""
    p, ell = walk.p, walk.ell
    nodes = walk.visited
    if len(nodes) != ell + 1 or len(set(nodes)) != ell + 1:
        raise PreconditionError("interpolation needs l+1 distinct nodes")
    F = QuadraticField(p)
    R = F.ring()
    values_by_k = []
    for k in range(ell + 1):
        vals = [loc.coeffs[k] for loc in walk.locals]
        if k == 0:
            vals = [v - y ** (ell + 1) for v, y in zip(vals, nodes)]
        values_by_k.append(vals)
    columns = _lagrange_columns(nodes, values_by_k, R, p)
    size = ell + 2
    grid = [[0] * size for _ in range(size)]
    for k, col in enumerate(columns):
        if np.any(col[1] != 0):
            raise DescentError("descent failure: coefficient not in F_p")
        for m in range(ell + 1):
            grid[k][m] = int(col[0, m])
    grid[0][ell + 1] = 1
    grid[ell + 1][0] = 1
    return BivariatePoly.from_grid(ell, grid, p)


def modular_poly_mod_p(
    p: int,
    ell: int,
    rng: np.random.Generator,
    *,
    stats: TorsionStats | None = None,
    walk_out: list | None = None,
) -> BivariatePoly:
    """phi_l(x, y) mod p; needs at least l+1 supersingular j-invariants mod p.

    The result is checked for the expected shape and for x <-> y symmetry;
    a failure of either is an internal error.
    """
    check_walk_preconditions(p, ell)
    j0 = supersingular_j(p, rng)
    walk = collect_j_invariants(p, ell, j0, rng, stats=stats)
    if walk_out is not None:
        walk_out.append(walk)
    phi = interpolate_bivariate(walk)
    bad = phi.shape_violations()
    if bad:
        raise TripwireError("; ".join(bad))
    if not phi.is_symmetric():
        raise TripwireError("computed phi_l is not symmetric")
    return phi


__all__ = [
    "LocalPoly",
    "WalkState",
    "collect_j_invariants",
    "interpolate_bivariate",
    "modular_poly_mod_p",
]
