"""Tangency eliminants in the chart of lines ``y = a x + b``.

``chart_subresultants`` returns, for each requested ``j``, the ``j``-th
principal subresultant of ``(p, p')`` divided by the leading coefficient
``f(1, a, 0)`` of ``p(t) = f(t, a t + b, 1)``, as a bivariate polynomial in
``(a, b)``.  For ``j = 0`` this is the discriminant of ``p``, whose zero set is
the dual curve in this chart.
"""

from __future__ import annotations

from typing import Sequence

from ..exact_algebra import Domain, Matrix, MultiPoly
from ..exact_algebra import dense
from ..exact_algebra.elimination import principal_minor_rows
from .curve import PlaneCurve

Bivariate = list  # [b-degree] -> dense polynomial in a


class DegenerateEliminantError(ValueError):
    """The elimination produced an identically zero form."""


def restriction_coefficients(g: MultiPoly) -> list[MultiPoly]:
    """Coefficients in ``t`` of ``g(t, a t + b, 1)`` in the ring ``(t, a, b)``."""
    ring = ("t", "a", "b")
    F = g.domain
    t, a, b = MultiPoly.gens(ring, F)
    one = MultiPoly.constant(1, ring, F)
    X, Y, Z = g.variables
    p = g.substitute({X: t, Y: a * t + b, Z: one}, ring)
    n = g.total_degree()
    cs = p.coefficients_in("t")
    return cs + [MultiPoly.zero(ring, F)] * (n + 1 - len(cs))


def dense_in(p: MultiPoly, index: int) -> list:
    """Dense coefficients of ``p`` in the variable at ``index`` (others absent)."""
    F = p.domain
    out = [F.zero] * (max((m[index] for m in p.terms), default=-1) + 1)
    for m, c in p.terms.items():
        out[m[index]] = c
    return dense.strip(out)


def formal_derivative(F: Domain, c: Sequence) -> list:
    return [F.mul(F.convert(i), c[i]) for i in range(1, len(c))]


def nodes_avoiding(F: Domain, count: int, bad: Sequence | None = None, start: int = 1) -> list:
    out = []
    x = start
    while len(out) < count:
        v = F.convert(x)
        if not bad or dense.evaluate(F, bad, v) != 0:
            out.append(v)
        x += 1
    return out


def interpolate_grid(F: Domain, xs: list, ys: list, values: list[list]) -> Bivariate:
    """``values[i][j] = P(xs[i], ys[j])`` -> ``P`` as ``[b-degree][dense in a]``."""
    per_a = [dense.interpolate(F, ys, row) for row in values]
    nb = max((len(r) for r in per_a), default=0)
    out = []
    for j in range(nb):
        col = [r[j] if j < len(r) else F.zero for r in per_a]
        out.append(dense.interpolate(F, xs, col))
    while out and not out[-1]:
        out.pop()
    return out


def chart_subresultants(g: MultiPoly, js: Sequence[int] = (0,)) -> tuple[dict[int, Bivariate], list, list[MultiPoly]]:
    """Bivariate eliminants ``S_j / f(1, a, 0)`` for ``j in js``.

    Returns ``(eliminants, leading_coefficient_dense_in_a, t_coefficients)``.
    """
    F = g.domain
    n = g.total_degree()
    cs = restriction_coefficients(g)
    lead = dense_in(cs[n], 1)
    if not lead:
        raise DegenerateEliminantError("the line Z = 0 is a component of the curve")
    a_deg = [c.degree_in("a") for c in cs]
    b_deg = [c.degree_in("b") for c in cs]
    # Sylvester row bounds: n rows from p', n - 1 rows from p
    bound_a = n * max(a_deg[1:]) + (n - 1) * max(a_deg)
    bound_b = n * max(b_deg[1:]) + (n - 1) * max(b_deg)
    xs = nodes_avoiding(F, bound_a + 1, lead)
    ys = nodes_avoiding(F, bound_b + 1, start=7)
    values: dict[int, list[list]] = {j: [] for j in js}
    for alpha in xs:
        inv_lead = F.inv(dense.evaluate(F, lead, alpha))
        a_img = MultiPoly.constant(alpha, cs[0].variables, F)
        part = [dense_in(c.substitute({"a": a_img}), 2) for c in cs]
        rows: dict[int, list] = {j: [] for j in js}
        for beta in ys:
            pc = [dense.evaluate(F, c, beta) for c in part]
            dc = formal_derivative(F, pc)
            for j in js:
                if j == 0:
                    v = dense.resultant(F, dc, pc, n - 1, n)
                else:
                    v = Matrix(principal_minor_rows(pc, dc, F.zero, j), F, raw=True).det()
                rows[j].append(F.mul(v, inv_lead))
        for j in js:
            values[j].append(rows[j])
    return {j: interpolate_grid(F, xs, ys, values[j]) for j in js}, lead, cs


def bivariate_to_poly(P: Bivariate, F: Domain, variables: tuple[str, str] = ("a", "b")) -> MultiPoly:
    terms = {}
    for j, col in enumerate(P):
        for i, c in enumerate(col):
            if c != 0:
                terms[(i, j)] = c
    return MultiPoly(variables, terms, F, raw=True)


def dual_eliminant(c: PlaneCurve) -> MultiPoly:
    """Dual form in line coordinates ``(U, V, W)`` of ``U X + V Y + W Z = 0``.

    In the chart the line ``y = a x + b`` has coordinates ``(a, -1, b)``; the
    chart discriminant ``D(a, b)`` is homogenized by ``a = -U/V, b = -W/V``.
    """
    F = c.domain
    elim, _, _ = chart_subresultants(c.form, (0,))
    D = elim[0]
    if not D:
        raise DegenerateEliminantError("discriminant vanishes identically")
    deg = max(i + j for j, col in enumerate(D) for i, x in enumerate(col) if x != 0)
    ring = ("U", "V", "W")
    terms = {}
    for j, col in enumerate(D):
        for i, x in enumerate(col):
            if x != 0:
                sign = -1 if (i + j) % 2 else 1
                terms[(i, deg - i - j, j)] = x if sign > 0 else F.neg(x)
    G = MultiPoly(ring, terms, F, raw=True)
    return G.monic()


def dual_curve_eliminant(c: PlaneCurve) -> PlaneCurve:
    """The dual curve as a plane curve in the coordinates ``(U, V, W)``."""
    return PlaneCurve(dual_eliminant(c))
