"""Lattice point counts in norm balls on SL(n+1) and their exact error exponents."""

__version__ = "0.1.0"

from .bounds import BoundKind, decay_rate, residual_rate
from .engine import (
    ConeReport,
    ExponentReport,
    bound_exponent,
    cone_report,
    exponent_report,
    kappa0,
    verify_range,
    volume_exponent,
)
from .lattice import BACKEND, CountRecord, enumerate_ball, naive_enumerate, solve_last_row
from .reps import RepKind, RepSpec, chamber_norm, matrix_norm, matrix_norm_sq, parse_rep
from .volume import QuadratureSpec, ball_volume, fit_growth, fit_powerlaw, simplex_growth_check

__all__ = [
    "BACKEND",
    "BoundKind",
    "ConeReport",
    "CountRecord",
    "ExponentReport",
    "QuadratureSpec",
    "RepKind",
    "RepSpec",
    "__version__",
    "ball_volume",
    "bound_exponent",
    "chamber_norm",
    "cone_report",
    "decay_rate",
    "enumerate_ball",
    "exponent_report",
    "fit_growth",
    "fit_powerlaw",
    "kappa0",
    "matrix_norm",
    "matrix_norm_sq",
    "naive_enumerate",
    "parse_rep",
    "residual_rate",
    "simplex_growth_check",
    "solve_last_row",
    "verify_range",
    "volume_exponent",
]
