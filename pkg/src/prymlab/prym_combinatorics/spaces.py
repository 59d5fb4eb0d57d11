"""Expression trees for the stratum spaces and their Euler characteristics.

``chi`` is the compactly supported Euler characteristic; for the spaces built
here (tori, affine lines, elliptic curves, finite sets and fibrations with
such fibers) it agrees with the ordinary one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

ATOM_CHI = {"point": 1, "C": 1, "C*": 0, "E": 0, "P1": 2}


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if self.name not in ATOM_CHI:
            raise ValueError(f"unknown atom {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Finite:
    n: int

    def __str__(self) -> str:
        return f"finite({self.n})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self) -> str:
        return "x".join(_wrap(f) for f in self.factors)


@dataclass(frozen=True)
class Copies:
    """Disjoint union of ``k`` copies of one space."""

    k: int
    space: "Space"

    def __str__(self) -> str:
        return f"{self.k}x({self.space})" if not isinstance(self.space, Atom) else f"{self.k}x{self.space}"


@dataclass(frozen=True)
class Union_:
    parts: tuple

    def __str__(self) -> str:
        return " + ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Extension:
    """A fibration over ``base`` with fiber ``fiber``."""

    base: "Space"
    fiber: "Space"

    def __str__(self) -> str:
        return f"ext({self.base} by {self.fiber})"


Space = Union[Atom, Finite, Product, Copies, Union_, Extension]


def _wrap(s: Space) -> str:
    return f"({s})" if isinstance(s, (Union_, Copies)) else str(s)


def chi(space: Space) -> int:
    """Euler characteristic by multiplicativity and additivity."""
    if isinstance(space, Atom):
        return ATOM_CHI[space.name]
    if isinstance(space, Finite):
        if space.n < 0:
            raise ValueError("finite sets have nonnegative size")
        return space.n
    if isinstance(space, Product):
        out = 1
        for f in space.factors:
            out *= chi(f)
        return out
    if isinstance(space, Copies):
        return space.k * chi(space.space)
    if isinstance(space, Union_):
        return sum(chi(p) for p in space.parts)
    if isinstance(space, Extension):
        return chi(space.base) * chi(space.fiber)
    raise ValueError(f"unknown space descriptor {space!r}")


POINT = Atom("point")
LINE = Atom("C")
TORUS = Atom("C*")
ELLIPTIC = Atom("E")
P1 = Atom("P1")


def torus(dim: int) -> Space:
    if dim == 0:
        return POINT
    if dim == 1:
        return TORUS
    return Product(tuple([TORUS] * dim))


def to_json(space: Space) -> dict:
    if isinstance(space, Atom):
        return {"atom": space.name}
    if isinstance(space, Finite):
        return {"finite": space.n}
    if isinstance(space, Product):
        return {"product": [to_json(f) for f in space.factors]}
    if isinstance(space, Copies):
        return {"copies": space.k, "of": to_json(space.space)}
    if isinstance(space, Union_):
        return {"union": [to_json(p) for p in space.parts]}
    return {"extension": {"base": to_json(space.base), "fiber": to_json(space.fiber)}}
