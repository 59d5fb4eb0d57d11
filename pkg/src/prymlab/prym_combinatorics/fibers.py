"""Stratified Prym fibers over the singular members, theta characteristics and
the gluing constants along the boundary of the open torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .sheaf import TAU, GluingSheaf, check_node_coords
from .spaces import ELLIPTIC, LINE, POINT, TORUS, Copies, Extension, Finite, Product, Space, chi, to_json, torus

CASES = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


@dataclass(frozen=True)
class Stratum:
    name: str
    space: Space

    @property
    def euler(self) -> int:
        return chi(self.space)


@dataclass(frozen=True)
class PrymFiberModel:
    case: str
    strata: tuple[Stratum, ...]
    adjacency_constants: dict = field(default_factory=dict)
    derivation: str = "descriptor"

    @property
    def euler(self) -> int:
        return sum(s.euler for s in self.strata)

    def as_dict(self) -> dict:
        return {
            "case": self.case,
            "strata": [
                {"name": s.name, "space": str(s.space), "descriptor": to_json(s.space), "euler": s.euler}
                for s in self.strata
            ],
            "euler": self.euler,
            "derivation": self.derivation,
            "adjacency_constants": {
                k: {"num": str(v.numerator), "den": str(v.denominator)} for k, v in self.adjacency_constants.items()
            },
        }


# -- the toric computation on the reducible member -------------------------------


def _tau_stable_split_sets() -> list[tuple[int, ...]]:
    out = []
    for mask in product((0, 1), repeat=4):
        split = tuple(i for i in range(4) if mask[i])
        if {TAU[i] for i in split} == set(split):
            out.append(split)
    return sorted(out, key=len)


def kappa_fixed_torus(glued: Sequence[int]) -> tuple[int, int]:
    """``(dimension, component count)`` of the fixed locus of ``kappa`` on the
    gluing torus ``(C*)^glued / C*`` of a tau-stable set of glued nodes.

    On cocharacters ``kappa`` acts by ``-P`` with ``P`` the node permutation;
    the fixed subgroup is the kernel of ``kappa - id``, whose dimension is its
    corank and whose component group is the torsion of its cokernel.
    """
    glued = list(glued)
    n = len(glued)
    if n <= 1:
        return 0, 1
    pos = {node: i for i, node in enumerate(glued)}
    # basis e_0..e_{n-2} of Z^n / Z(1,..,1); e_{n-1} = -(e_0 + ... + e_{n-2})
    def coords(vec: list[int]) -> list[int]:
        last = vec[n - 1]
        return [vec[i] - last for i in range(n - 1)]

    cols = []
    for b in range(n - 1):
        image = [0] * n
        image[pos[TAU[glued[b]]]] -= 1  # -P e_b
        image = coords(image)
        image[b] -= 1
        cols.append(image)
    M = sympy.Matrix(n - 1, n - 1, lambda i, j: cols[j][i])
    if M.is_zero_matrix:
        return n - 1, 1
    D = smith_normal_form(M, domain=sympy.ZZ)
    diag = [abs(int(D[i, i])) for i in range(n - 1)]
    nonzero = [x for x in diag if x]
    comps = 1
    for x in nonzero:
        comps *= x
    return (n - 1) - len(nonzero), comps


def reducible_member_model() -> PrymFiberModel:
    """Prym fiber over a reducible member, recomputed from the gluing torus.

    Only tau-stable sets of split nodes can carry fixed sheaves; each gives
    the fixed locus of ``kappa`` on the corresponding gluing torus.
    """
    by_split: dict[int, list[Space]] = {}
    for split in _tau_stable_split_sets():
        glued = [i for i in range(4) if i not in split]
        dim, comps = kappa_fixed_torus(glued)
        piece = torus(dim) if comps == 1 else Product((Finite(comps), torus(dim)))
        by_split.setdefault(len(split), []).append(piece)
    strata = []
    for level, (n_split, pieces) in enumerate(sorted(by_split.items())):
        space = pieces[0] if len(pieces) == 1 else Copies(len(pieces), pieces[0])
        if len(set(pieces)) != 1:
            raise AssertionError("unequal torus pieces within one stratum")
        strata.append(Stratum(f"P{level}", space))
    return PrymFiberModel("viii", tuple(strata), derivation="toric")


_DESCRIPTORS: dict[str, list[tuple[str, Space]]] = {
    "i": [("P0", Extension(ELLIPTIC, TORUS)), ("P1", ELLIPTIC)],
    "ii": [("P0", Extension(ELLIPTIC, LINE)), ("P1", ELLIPTIC)],
    "iii": [("P0", Extension(ELLIPTIC, TORUS)), ("P2", ELLIPTIC)],
    "iv": [("P0", Copies(4, Product((TORUS, TORUS)))), ("P1", Copies(8, TORUS)), ("P2", Finite(4))],
    "v": [("P0", Extension(ELLIPTIC, LINE)), ("P2", ELLIPTIC)],
    "vi": [("P0", Product((TORUS, TORUS))), ("P1", TORUS), ("P2", TORUS), ("P3", POINT)],
    "vii": [("P0", Extension(ELLIPTIC, Product((LINE, Finite(2))))), ("P2", ELLIPTIC)],
    "viii": [("P0", Product((TORUS, TORUS))), ("P1", Copies(2, TORUS)), ("P2", POINT)],
}


def prym_fiber_model(case: str) -> PrymFiberModel:
    """Stratification of the Prym fiber over a member of the given case."""
    case = str(case).strip().strip("()").lower()
    if case not in _DESCRIPTORS:
        raise ValueError(f"unknown fiber case {case!r}; expected one of {CASES}")
    strata = tuple(Stratum(n, s) for n, s in _DESCRIPTORS[case])
    if case == "viii":
        derived = reducible_member_model()
        if [s.space for s in derived.strata] != [s.space for s in strata]:
            raise AssertionError("toric recomputation disagrees with the stored strata")
        return PrymFiberModel(case, strata, derivation="toric")
    return PrymFiberModel(case, strata)


def case_v_fiber_condition(b1: Fraction, b2: Fraction) -> bool:
    """Membership condition of the additive fiber in case (v): ``b1 + b2 = 0``."""
    return Fraction(b1) + Fraction(b2) == 0


# -- theta characteristics -------------------------------------------------------


def theta_characteristics(node_coords: Sequence, include_anti_invariant: bool = False) -> list[GluingSheaf]:
    """Tau-invariant square roots of the dualizing sheaf of bidegree ``(1, 1)``.

    In the standard trivializations the dualizing sheaf is glued by
    ``(1, 1, 1, 1)``, so a square root has ``lambda_i^2`` proportional to one,
    i.e. every ``lambda_i = +-1`` after normalization.  Tau-invariance asks
    ``tau(lambda) = c * lambda``; ``c = 1`` is the invariant descent, while
    ``c = -1`` sheaves are returned only on request.
    """
    z = check_node_coords(node_coords)
    out = []
    for signs in product((1, -1), repeat=3):
        lam = (Fraction(1),) + tuple(Fraction(s) for s in signs)
        if any(x * x != lam[0] * lam[0] for x in lam):
            continue
        permuted = tuple(lam[TAU[i]] for i in range(4))
        c = permuted[0] / lam[0]
        if any(permuted[i] != c * lam[i] for i in range(4)):
            continue
        if c == 1 or include_anti_invariant:
            out.append(GluingSheaf(z, (1, 1), lam, 1))
    return out


# -- boundary gluing constants ----------------------------------------------------


def cross_ratio(z1, z2, z3, z4):
    """``[z1, z2; z3, z4] = ((z3 - z1)(z4 - z2)) / ((z3 - z2)(z4 - z1))``."""
    return ((z3 - z1) * (z4 - z2)) / ((z3 - z2) * (z4 - z1))


def limit_factors(z: Sequence, vanishing: int, exploding: int, others: Sequence[int]) -> list:
    """Rescaling of the surviving gluings when ``lambda_vanishing -> 0``.

    The limit sheaf is the gluing of ``O(-z_vanishing)`` and
    ``O(-z_exploding)`` with the constant sections; passing to the standard
    sections multiplies the gluing at ``z_j`` by
    ``(z_j - z_exploding) / (z_j - z_vanishing)``.
    """
    return [(z[j] - z[exploding]) / (z[j] - z[vanishing]) for j in others]


def _transition(z: Sequence, a: int, b: int, c: int, d: int):
    """Constant ``k`` with ``(0, y) ~ (inf, k y)`` for the boundary coordinate
    ``y = lambda_d / lambda_c`` when ``lambda_a`` goes to ``0`` or ``inf``.
    """
    # lambda_a -> 0: surviving gluings scale by r_j; lambda_a -> inf: by 1/r_j
    r_c, r_d = limit_factors(z, a, b, (c, d))
    # both limits are the same split sheaf iff r_d/r_c * y == (r_c/r_d) * y'
    at_zero = r_d / r_c
    at_inf = r_c / r_d
    return at_zero / at_inf


def boundary_gluing_constants(node_coords: Sequence) -> dict:
    """Transition constants along the two boundary pairs of the open torus.

    ``horizontal``: ``lambda_1 -> 0`` against ``lambda_1 -> inf`` in the
    coordinate ``lambda_4 / lambda_3``; ``vertical``: ``lambda_3 -> 0`` against
    ``lambda_3 -> inf`` in the coordinate ``lambda_2 / lambda_1``.  Both are
    read from the zero section to the infinity section.
    """
    z = check_node_coords(node_coords)
    return {
        "horizontal": _transition(z, 0, 1, 2, 3),
        "vertical": _transition(z, 2, 3, 0, 1),
    }


def symbolic_boundary_constants() -> dict:
    """The same composition over ``Q(z1, z2, z3, z4)`` as sympy expressions."""
    z = sympy.symbols("z1:5")
    return {
        "horizontal": sympy.factor(_transition(z, 0, 1, 2, 3)),
        "vertical": sympy.factor(_transition(z, 2, 3, 0, 1)),
        "cross_ratio": cross_ratio(*z),
        "symbols": z,
    }
