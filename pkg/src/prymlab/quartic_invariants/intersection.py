"""Intersection of two plane curves by projection from ``(0 : 1 : 0)``."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact_algebra import Domain, Matrix, MultiPoly
from ..exact_algebra import dense
from ..exact_algebra.elimination import principal_minor_rows


class ProjectionError(Exception):
    """The projection centre is not in general position for this pair."""


@dataclass(frozen=True)
class Intersection:
    eliminant: list  # dense in X, lowest degree first
    squarefree: list
    partition: dict[int, int]  # multiplicity -> number of points

    @property
    def total(self) -> int:
        return len(self.eliminant) - 1

    @property
    def distinct(self) -> int:
        return len(self.squarefree) - 1


def _y_coefficients(f: MultiPoly) -> list[MultiPoly]:
    one = MultiPoly.constant(1, f.variables, f.domain)
    return f.substitute({"Z": one}).coefficients_in("Y")


def _at(F: Domain, coeffs: list[MultiPoly], x) -> list:
    return [c.evaluate((x, 0, 0)) for c in coeffs]


def affine_eliminant(f: MultiPoly, g: MultiPoly, with_subresultant: bool = False) -> tuple[list, list | None]:
    """``Res_Y(f, g)`` in the chart ``Z = 1`` as a dense polynomial in ``X``.

    Both forms must have a nonzero constant leading coefficient in ``Y`` (the
    point ``(0:1:0)`` lies on neither curve).  Computed by evaluation at
    ``deg f * deg g + 1`` nodes and interpolation, which is exact because the
    resultant has degree at most the Bezout number.
    """
    F = f.domain
    fc, gc = _y_coefficients(f), _y_coefficients(g)
    n, m = len(fc) - 1, len(gc) - 1
    if n < 1 or m < 1:
        raise ProjectionError("a curve does not involve Y")
    if not (fc[-1].is_constant() and gc[-1].is_constant()):
        raise ProjectionError("(0:1:0) lies on one of the curves")
    bound = f.total_degree() * g.total_degree()
    nodes = [F.convert(i) for i in range(bound + 1)]
    vals, svals = [], []
    for x in nodes:
        a, b = _at(F, fc, x), _at(F, gc, x)
        vals.append(dense.resultant(F, b, a, m, n))
        if with_subresultant:
            svals.append(Matrix(principal_minor_rows(a, b, F.zero, 1), F, raw=True).det())
    R = dense.interpolate(F, nodes, vals)
    S = None
    if with_subresultant:
        # subresultant degree is bounded by the same Bezout-type argument
        s_nodes = [F.convert(i) for i in range(bound + 1, bound + 1 + (n + m) * max(f.total_degree(), g.total_degree()))]
        for x in s_nodes:
            a, b = _at(F, fc, x), _at(F, gc, x)
            svals.append(Matrix(principal_minor_rows(a, b, F.zero, 1), F, raw=True).det())
        S = dense.interpolate(F, nodes + s_nodes, svals)
    return R, S


def intersect(f: MultiPoly, g: MultiPoly) -> Intersection:
    """Intersection numbers of ``f`` and ``g`` from a generic projection.

    Raises :class:`ProjectionError` when points at infinity meet, the centre
    lies on a curve, or two intersection points share an ``X``-coordinate.
    """
    F = f.domain
    if f.domain != g.domain:
        raise ValueError("curves over different domains")
    R, S = affine_eliminant(f, g, with_subresultant=True)
    if not R:
        raise ProjectionError("curves share a component")
    if len(R) - 1 != f.total_degree() * g.total_degree():
        raise ProjectionError("intersection points on the line Z = 0")
    r = dense.squarefree_part(F, R)
    if len(dense.gcd(F, r, S or [])) != 1:
        raise ProjectionError("two intersection points on one vertical line")
    partition = dense.multiplicity_partition(F, R)
    return Intersection(R, r, partition)
