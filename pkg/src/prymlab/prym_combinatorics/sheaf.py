"""Rank-one sheaves on two rational components meeting in four nodes.

A sheaf is recorded by its component degrees ``(d_plus, d_minus)``, the
twist ``m`` of the ambient moduli space and, at each node, either a nonzero
gluing scalar or ``None`` when the node is split.  Gluing data are taken
modulo one overall scale; the canonical representative has its first glued
scalar equal to one, which makes equality and hashing exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

Gluing = tuple  # four entries, Fraction or None

TAU = (1, 0, 3, 2)  # node permutation z1<->z2, z3<->z4


class SheafError(ValueError):
    """Invalid gluing data."""


def _normalize(gluing: Sequence) -> Gluing:
    glued = [x for x in gluing if x is not None]
    if not glued:
        return tuple(gluing)
    c = glued[0]
    return tuple(None if x is None else x / c for x in gluing)


def check_node_coords(z: Sequence) -> tuple[Fraction, ...]:
    z = tuple(Fraction(x) for x in z)
    if len(z) != 4:
        raise SheafError("four node coordinates are required")
    if len(set(z)) != 4:
        raise SheafError("node coordinates must be distinct")
    if z[1] != -z[0] or z[3] != -z[2]:
        raise SheafError("node coordinates must satisfy z2 = -z1 and z4 = -z3")
    return z


@dataclass(frozen=True)
class GluingSheaf:
    node_coords: tuple
    comp_degrees: tuple[int, int]
    gluing: Gluing
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "node_coords", check_node_coords(self.node_coords))
        if len(self.gluing) != 4:
            raise SheafError("four node states are required")
        vals = []
        for x in self.gluing:
            if x is None:
                vals.append(None)
                continue
            x = Fraction(x)
            if x == 0:
                raise SheafError("gluing scalars must be nonzero")
            vals.append(x)
        object.__setattr__(self, "gluing", _normalize(vals))
        d = tuple(int(x) for x in self.comp_degrees)
        if len(d) != 2:
            raise SheafError("two component degrees are required")
        object.__setattr__(self, "comp_degrees", d)

    @property
    def s(self) -> int:
        """Number of glued nodes."""
        return sum(x is not None for x in self.gluing)

    @property
    def chi(self) -> int:
        return self.comp_degrees[0] + self.comp_degrees[1] - self.s + 2

    @property
    def split_nodes(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.gluing) if x is None)

    def as_dict(self) -> dict:
        return {
            "node_coords": [str(z) for z in self.node_coords],
            "comp_degrees": list(self.comp_degrees),
            "gluing": [None if x is None else str(x) for x in self.gluing],
            "m": self.m,
            "s": self.s,
            "chi": self.chi,
        }


def apply_tau(F: GluingSheaf) -> GluingSheaf:
    """Pull back along the cover involution: node states permuted by (12)(34)."""
    return replace(F, gluing=tuple(F.gluing[TAU[i]] for i in range(4)))


def apply_iota(F: GluingSheaf) -> GluingSheaf:
    """Duality: invert every gluing scalar and reflect the bidegree.

    The reflection ``d -> 2m + s - 4 - d`` on each component fixes the
    self-dual bidegree of the ambient space.
    """
    shift = 2 * F.m + F.s - 4
    d_plus, d_minus = F.comp_degrees
    return replace(
        F,
        comp_degrees=(shift - d_plus, shift - d_minus),
        gluing=tuple(None if x is None else 1 / x for x in F.gluing),
    )


def apply_kappa(F: GluingSheaf) -> GluingSheaf:
    return apply_iota(apply_tau(F))


def kappa_fixed(F: GluingSheaf) -> bool:
    """True iff ``F`` is fixed by the composite involution up to overall scale."""
    return apply_kappa(F) == F


def tensor(F: GluingSheaf, G: GluingSheaf) -> GluingSheaf:
    """Tensor product of two sheaves that are glued at every node."""
    if F.node_coords != G.node_coords:
        raise SheafError("sheaves live on different curves")
    if F.s != 4 or G.s != 4:
        raise SheafError("tensor product is only modelled for invertible sheaves")
    return GluingSheaf(
        F.node_coords,
        (F.comp_degrees[0] + G.comp_degrees[0], F.comp_degrees[1] + G.comp_degrees[1]),
        tuple(a * b for a, b in zip(F.gluing, G.gluing)),
        F.m + G.m,
    )


def random_scalar(rng: random.Random, bound: int = 50) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.randint(1, bound))


def random_node_coords(rng: random.Random, bound: int = 50) -> tuple[Fraction, ...]:
    while True:
        a, b = random_scalar(rng, bound), random_scalar(rng, bound)
        if a != b and a != -b:
            return (a, -a, b, -b)


def random_sheaf(
    rng: random.Random,
    split: Sequence[int] = (),
    m: int = 0,
    degrees: tuple[int, int] | None = None,
    node_coords: Sequence | None = None,
) -> GluingSheaf:
    """Random sheaf with the given split nodes (0-based) and degree pattern."""
    z = tuple(node_coords) if node_coords else random_node_coords(rng)
    gluing = tuple(None if i in split else random_scalar(rng) for i in range(4))
    if degrees is None:
        degrees = (rng.randint(-6, 6), rng.randint(-6, 6))
    return GluingSheaf(z, degrees, gluing, m)


def random_fixed_sheaf(rng: random.Random, node_coords: Sequence | None = None) -> GluingSheaf:
    """Random invertible ``m = 0`` sheaf on the locus ``l1*l2 = l3*l4``."""
    z = tuple(node_coords) if node_coords else random_node_coords(rng)
    l1, l2, l3 = random_scalar(rng), random_scalar(rng), random_scalar(rng)
    return GluingSheaf(z, (0, 0), (l1, l2, l3, l1 * l2 / l3), 0)
