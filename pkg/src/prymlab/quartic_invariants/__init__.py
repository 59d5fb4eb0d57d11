"""Enumerative invariants of smooth plane quartics: bitangents, flexes, duals."""

from .curve import (
    CurveError,
    PlaneCurve,
    SingularCurveError,
    coordinate_changes,
    fermat_quartic,
    hessian,
    hessian_curve,
    is_smooth,
    klein_quartic,
    random_smooth_quartic,
    smoothness_certificate,
)
from .dual import DegenerateEliminantError, dual_curve_eliminant, dual_eliminant
from .invariants import (
    ConfirmationError,
    LineCountReport,
    NonGenericError,
    PluckerData,
    count_bitangents,
    count_flexes,
    default_primes,
    plucker_data,
)
from .intersection import ProjectionError, intersect
from .lines import NonZeroDimensionalError, check_primes, count_special_lines

__all__ = [
    "ConfirmationError",
    "CurveError",
    "DegenerateEliminantError",
    "LineCountReport",
    "NonGenericError",
    "NonZeroDimensionalError",
    "PlaneCurve",
    "PluckerData",
    "ProjectionError",
    "SingularCurveError",
    "check_primes",
    "coordinate_changes",
    "count_bitangents",
    "count_flexes",
    "count_special_lines",
    "default_primes",
    "dual_curve_eliminant",
    "dual_eliminant",
    "fermat_quartic",
    "hessian",
    "hessian_curve",
    "intersect",
    "is_smooth",
    "klein_quartic",
    "plucker_data",
    "random_smooth_quartic",
    "smoothness_certificate",
]
