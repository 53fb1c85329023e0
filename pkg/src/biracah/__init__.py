"""Bannai-Ito polynomials, osp(1|2) Racah coefficients and their generating functions."""

from .bannai import BIParams, bi_eval, grid, h_norm, weight
from .genfun import GenfunFlags, monomial_coeff, verify_identity
from .numcore import get_prec, precision, set_prec
from .racah import param_map, racah_coeff, racah_matrix
from .spherewave import RacahContext, Y_eval, Z_eval

__version__ = "0.1.0"

__all__ = [
    "BIParams",
    "GenfunFlags",
    "RacahContext",
    "Y_eval",
    "Z_eval",
    "bi_eval",
    "get_prec",
    "grid",
    "h_norm",
    "monomial_coeff",
    "param_map",
    "precision",
    "racah_coeff",
    "racah_matrix",
    "set_prec",
    "verify_identity",
    "weight",
]
