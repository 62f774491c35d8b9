"""Modular polynomials phi_l(x, y) modulo p from the supersingular l-isogeny graph."""

from .bivariate import BivariatePoly
from .classical import classical_phi, growth_report, j_qexp, jpow_coeffs
from .crtlift import CrtAccumulator, crt_lift
from .curves import Curve, CurvePoint, curve_from_j, point_count_ext, supersingular_trace
from .errors import ModpolyError, PreconditionError, TripwireError
from .fields import PrimeField, QuadraticField, make_extension, quadratic_character
from .globalphi import collect_j_invariants, interpolate_bivariate, modular_poly_mod_p
from .localphi import LocalPoly, local_modular_poly, random_l_isogeny, random_l_torsion_point
from .ssinit import find_discriminant, hilbert_class_poly, supersingular_count, supersingular_j
from .torsion import TorsionBasis, bsgs_member, torsion_basis, torsion_extension_degree
from .velu import quotient_j_set, velu_isogeny

__version__ = "0.1.0"

__all__ = [
    "BivariatePoly",
    "CrtAccumulator",
    "Curve",
    "CurvePoint",
    "LocalPoly",
    "ModpolyError",
    "PreconditionError",
    "PrimeField",
    "QuadraticField",
    "TorsionBasis",
    "TripwireError",
    "bsgs_member",
    "classical_phi",
    "collect_j_invariants",
    "crt_lift",
    "curve_from_j",
    "find_discriminant",
    "growth_report",
    "hilbert_class_poly",
    "interpolate_bivariate",
    "j_qexp",
    "jpow_coeffs",
    "local_modular_poly",
    "make_extension",
    "modular_poly_mod_p",
    "point_count_ext",
    "quadratic_character",
    "quotient_j_set",
    "random_l_isogeny",
    "random_l_torsion_point",
    "supersingular_count",
    "supersingular_j",
    "supersingular_trace",
    "torsion_basis",
    "torsion_extension_degree",
    "velu_isogeny",
]
