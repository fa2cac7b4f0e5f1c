"""Logarithmic capacity of two real intervals and its elementary bounds."""
from .bounds import BoundsReport, bounds_report, ke_bounds
from .capacity import (
    IntervalPair,
    ModulusParam,
    capacity,
    capacity_exact,
    intervals_from_param,
    normalize_intervals,
    param_from_intervals,
    robinson_arc_capacity,
)
from .elliptic import Modulus, complete_E, complete_K, jacobi_sncndn, jacobi_zn, theta_quad
from .errors import DegenerateIntervalError, DomainError
from .oracle import leja_capacity_estimate

__all__ = [
    "BoundsReport", "DegenerateIntervalError", "DomainError", "IntervalPair", "Modulus",
    "ModulusParam", "bounds_report", "capacity", "capacity_exact", "complete_E", "complete_K",
    "intervals_from_param", "jacobi_sncndn", "jacobi_zn", "ke_bounds", "leja_capacity_estimate",
    "normalize_intervals", "param_from_intervals", "robinson_arc_capacity", "theta_quad",
]
