"""Exact computer algebra for formal ternary laws."""

from .rings import (EPS, GAMMA, GAMMA_INV, H, MUL, MUL_MINUS, MUL_PLUS, QEPS, QMUL, QQ, TAU, WITT,
                    ZEPS, ZZ, MulRingElem, NotInvertible, QEps, ZEps, ring_from_tag, specialize)
from .expr import parse_expr, serialize
from .series import (NDSeries, TruncSeries, compose1, revert, substitute, sym_to_elementary)
from .ftl import (FTL, StrictIso, additive_ftl, alternative_additive_ftl, base_change,
                  check_axioms, logarithm, multiplicative_ftl, specialize_ftl, transform,
                  transform_unit)
from .todd import BorelData, OrientationSeries, todd_of_bundle, todd_series
from .adams import omega, p_poly, psi_tau, q_poly
from .borel import (borel_character_rank2, borel_todd_M, borel_todd_W, chi_tilde, psi_factorial,
                    psi_form, witt_psi_factorial)
from .hrr import SurfaceModel, hrr_surface, k3_todd_class, quadratic_euler_char_k3

__all__ = [
    "EPS", "GAMMA", "GAMMA_INV", "H", "MUL", "MUL_MINUS", "MUL_PLUS", "QEPS", "QMUL", "QQ", "TAU",
    "WITT", "ZEPS", "ZZ", "MulRingElem", "NotInvertible", "QEps", "ZEps", "ring_from_tag",
    "specialize", "parse_expr", "serialize", "NDSeries", "TruncSeries", "compose1", "revert",
    "substitute", "sym_to_elementary", "FTL", "StrictIso", "additive_ftl",
    "alternative_additive_ftl", "base_change", "check_axioms", "logarithm", "multiplicative_ftl",
    "specialize_ftl", "transform", "transform_unit", "BorelData", "OrientationSeries",
    "todd_of_bundle", "todd_series", "omega", "p_poly", "psi_tau", "q_poly",
    "borel_character_rank2", "borel_todd_M", "borel_todd_W", "chi_tilde", "psi_factorial",
    "psi_form", "witt_psi_factorial", "SurfaceModel", "hrr_surface", "k3_todd_class",
    "quadratic_euler_char_k3",
]
