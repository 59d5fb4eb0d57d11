"""Gluing-data model of sheaves on the reducible members and the Prym fibers."""

from .fibers import (
    CASES,
    PrymFiberModel,
    Stratum,
    boundary_gluing_constants,
    case_v_fiber_condition,
    cross_ratio,
    kappa_fixed_torus,
    limit_factors,
    prym_fiber_model,
    reducible_member_model,
    symbolic_boundary_constants,
    theta_characteristics,
)
from .sheaf import (
    GluingSheaf,
    SheafError,
    apply_iota,
    apply_kappa,
    apply_tau,
    kappa_fixed,
    random_fixed_sheaf,
    random_node_coords,
    random_sheaf,
    tensor,
)
from .spaces import Atom, Copies, Extension, Finite, Product, Union_, chi
from .stability import (
    NOT_A_SHEAF,
    STABLE,
    STRICTLY_SEMISTABLE,
    UNSTABLE,
    IndeterminacyComponent,
    Polarization,
    classify_stability,
    indeterminacy_components,
    semistable_bidegrees,
    twist_shift,
)

__all__ = [
    "CASES",
    "NOT_A_SHEAF",
    "STABLE",
    "STRICTLY_SEMISTABLE",
    "UNSTABLE",
    "Atom",
    "Copies",
    "Extension",
    "Finite",
    "GluingSheaf",
    "IndeterminacyComponent",
    "Polarization",
    "Product",
    "PrymFiberModel",
    "SheafError",
    "Stratum",
    "Union_",
    "apply_iota",
    "apply_kappa",
    "apply_tau",
    "boundary_gluing_constants",
    "case_v_fiber_condition",
    "chi",
    "classify_stability",
    "cross_ratio",
    "indeterminacy_components",
    "kappa_fixed",
    "kappa_fixed_torus",
    "limit_factors",
    "prym_fiber_model",
    "random_fixed_sheaf",
    "random_node_coords",
    "random_sheaf",
    "reducible_member_model",
    "semistable_bidegrees",
    "symbolic_boundary_constants",
    "tensor",
    "theta_characteristics",
    "twist_shift",
]
