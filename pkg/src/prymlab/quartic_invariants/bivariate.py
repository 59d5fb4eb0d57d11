"""Zero-dimensional intersection of two bivariate eliminants over a prime field."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact_algebra import Matrix, PrimeField
from ..exact_algebra import dense
from ..exact_algebra.elimination import principal_minor_rows
from .dual import Bivariate, nodes_avoiding


class PositionError(Exception):
    """Projection to the ``a``-axis is not generic for this pair."""


@dataclass(frozen=True)
class PlaneIntersection:
    resultant_degree: int
    distinct: int
    partition: dict[int, int]


def _eval_b(F, P: Bivariate, alpha, length: int) -> list:
    vals = [dense.evaluate(F, c, alpha) for c in P]
    return vals + [F.zero] * (length - len(vals))


def intersect_bivariate(F: PrimeField, P: Bivariate, Q: Bivariate) -> PlaneIntersection:
    """Intersection multiplicities of ``P = Q = 0`` in the ``(a, b)`` plane.

    Requires constant leading coefficients in ``b`` (no solutions escape to
    infinity vertically) and distinct ``a``-coordinates for distinct
    solutions, certified by the first subresultant.
    """
    if not P or not Q:
        raise ValueError("zero eliminant")
    if len(P[-1]) != 1 or len(Q[-1]) != 1:
        raise PositionError("leading b-coefficient is not constant")
    n0, n1 = len(P) - 1, len(Q) - 1
    m0 = max(len(c) - 1 for c in P)
    m1 = max(len(c) - 1 for c in Q)
    bound = n1 * m0 + n0 * m1
    nodes = nodes_avoiding(F, bound + 1, start=5)
    rv, sv = [], []
    for alpha in nodes:
        e0, e1 = _eval_b(F, P, alpha, n0 + 1), _eval_b(F, Q, alpha, n1 + 1)
        rv.append(dense.resultant(F, e0, e1, n0, n1))
        sv.append(Matrix(principal_minor_rows(e0, e1, 0, 1), F, raw=True).det())
    R = dense.interpolate(F, nodes, rv)
    if not R:
        raise ValueError("eliminants share a component")
    S = dense.interpolate(F, nodes, sv)
    r = dense.squarefree_part(F, R)
    if len(dense.gcd(F, r, S)) != 1:
        raise PositionError("two solutions share an a-coordinate")
    return PlaneIntersection(len(R) - 1, len(r) - 1, dense.multiplicity_partition(F, R))
