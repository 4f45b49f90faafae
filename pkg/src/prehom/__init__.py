"""Exact evaluation of an equivariant map on quadruples of alternating 5x5
matrices, plus normal-form difference cocycles and Gaussian zeta integrals."""

from .brackets import BracketTable, Quadruple, act, bracket, check_bracket_relations
from .cocycle import (
    GammaCocycle,
    ShiftFactor,
    check_cocycle_law,
    check_polynomial_regime,
    cocycle_eval,
    degree_vector,
    gamma_difference_residual,
    gamma_product_complex,
    gamma_product_real,
    normalize,
)
from .exact import InputError, MultiPoly, Rational, interpolate, parse_poly
from .gammafn import log_gamma
from .pfaffian import NotSkewError, SkewMatrix, beta, pfaffian4
from .phi import check_equivariance, phi, relative_invariant, rank_table
from .zeta import b_function_oracle, verify_closed_form, verify_difference_equation, zeta_numeric

__version__ = "0.1.0"

__all__ = [
    "BracketTable", "GammaCocycle", "InputError", "MultiPoly", "NotSkewError", "Quadruple",
    "Rational", "ShiftFactor", "SkewMatrix", "act", "b_function_oracle", "beta", "bracket",
    "check_bracket_relations", "check_cocycle_law", "check_equivariance", "check_polynomial_regime",
    "cocycle_eval", "degree_vector", "gamma_difference_residual", "gamma_product_complex",
    "gamma_product_real", "interpolate", "log_gamma", "normalize", "parse_poly", "pfaffian4", "phi",
    "rank_table", "relative_invariant", "verify_closed_form", "verify_difference_equation",
    "zeta_numeric",
]
