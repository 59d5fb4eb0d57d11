"""Resultants, subresultants and related elimination tools.

Sign convention: ``resultant(p, q, v)`` is the determinant of the Sylvester
matrix whose first block of rows holds the shifted coefficients of ``q``, so
that ``resultant(x - a, x - b, x) == b - a`` and ``resultant(f, x - c, x) ==
f(c)`` for monic ``f``.  Principal subresultant coefficients use the same row
order.
"""

from __future__ import annotations

from typing import Any, Sequence

from . import dense
from .domain import Domain, Scalar
from .poly import MultiPoly


def _coeffs_in(p: MultiPoly, v: str) -> list[MultiPoly]:
    if v not in p.variables:
        raise ValueError(f"unknown variable {v!r}")
    if p.is_zero():
        raise ValueError("zero polynomial input")
    cs = p.coefficients_in(v)
    if len(cs) < 2:
        raise ValueError(f"polynomial has degree 0 in {v}")
    return cs


def sylvester_rows(pc: Sequence, qc: Sequence, zero: Any, j: int = 0) -> list[list]:
    """Rows of the ``j``-th Sylvester-Habicht matrix (all columns), ``q`` first.

    ``pc``/``qc`` are coefficient lists, lowest degree first.  The result has
    ``n + m - 2j`` rows and ``n + m - j`` columns ordered from degree
    ``n + m - j - 1`` down to ``0``.
    """
    n, m = len(pc) - 1, len(qc) - 1
    width = n + m - j
    rows = []
    for src, count in ((qc, n - j), (pc, m - j)):
        for shift in range(count - 1, -1, -1):
            row = [zero] * width
            for e, c in enumerate(src):
                row[width - 1 - (e + shift)] = c
            rows.append(row)
    return rows


def principal_minor_rows(pc: Sequence, qc: Sequence, zero: Any, j: int, column_degree: int | None = None) -> list[list]:
    """Square matrix whose determinant is a subresultant coefficient.

    With ``column_degree=None`` this is the principal coefficient ``S_j``:
    the columns for degrees ``n+m-j-1`` down to ``j``.  Otherwise the last
    column is replaced by the column of degree ``column_degree`` (< j), giving
    the coefficient of ``v^column_degree`` in the ``j``-th subresultant.
    """
    rows = sylvester_rows(pc, qc, zero, j)
    width = len(rows[0]) if rows else 0
    keep = list(range(0, width - j))  # degrees n+m-j-1 .. j
    if column_degree is not None:
        keep[-1] = width - 1 - column_degree
    return [[r[c] for c in keep] for r in rows]


def bareiss_det(rows: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    a = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return a[0][0] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for jj in range(k + 1, n):
                num = a[i][jj] * a[k][k] - a[i][k] * a[k][jj]
                a[i][jj] = num if prev is None else num.divexact(prev)
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def _det_poly(rows: list[list[MultiPoly]]) -> MultiPoly:
    if not rows:
        raise ValueError("empty matrix")
    return bareiss_det(rows)


def resultant(p: MultiPoly, q: MultiPoly, v: str) -> MultiPoly:
    """``Res_v(p, q)`` as a polynomial in the remaining variables (same ring)."""
    if p.domain != q.domain or p.variables != q.variables:
        raise ValueError("resultant operands must share a ring")
    pc, qc = _coeffs_in(p, v), _coeffs_in(q, v)
    if all(c.is_constant() for c in pc + qc):
        F = p.domain
        val = dense.resultant(F, [c.constant_value() for c in qc], [c.constant_value() for c in pc])
        return MultiPoly.constant(val, p.variables, F) if val != 0 else MultiPoly.zero(p.variables, F)
    zero = p * 0
    return _det_poly(principal_minor_rows(pc, qc, zero, 0))


def subresultant_coeffs(p: MultiPoly, q: MultiPoly, v: str) -> list[MultiPoly]:
    """Principal subresultant coefficients ``[S_0, ..., S_{min(n,m)-1}]``.

    ``gcd_v(p, q)`` has degree ``>= k`` at a parameter point exactly when
    ``S_0, ..., S_{k-1}`` all vanish there (given the leading coefficients do
    not both vanish).
    """
    if p.domain != q.domain or p.variables != q.variables:
        raise ValueError("subresultant operands must share a ring")
    pc, qc = _coeffs_in(p, v), _coeffs_in(q, v)
    zero = p * 0
    n, m = len(pc) - 1, len(qc) - 1
    out = []
    for j in range(min(n, m)):
        out.append(_det_poly(principal_minor_rows(pc, qc, zero, j)))
    return out


def subresultant_polynomial(p: MultiPoly, q: MultiPoly, v: str, j: int) -> list[MultiPoly]:
    """Coefficients (lowest first) in ``v`` of the ``j``-th subresultant."""
    pc, qc = _coeffs_in(p, v), _coeffs_in(q, v)
    zero = p * 0
    out = [_det_poly(principal_minor_rows(pc, qc, zero, j, i)) for i in range(j)]
    out.append(_det_poly(principal_minor_rows(pc, qc, zero, j)))
    return out


def numeric_subresultants(F: Domain, pc: Sequence, qc: Sequence, count: int) -> list:
    """Raw principal subresultant coefficients ``S_0 .. S_{count-1}`` for raw inputs."""
    from .matrix import Matrix

    out = []
    for j in range(count):
        rows = principal_minor_rows(pc, qc, F.zero, j)
        out.append(Matrix(rows, F, raw=True).det() if rows else F.one)
    return out


def univariate_variable(p: MultiPoly) -> str | None:
    used = [v for i, v in enumerate(p.variables) if any(m[i] for m in p.terms)]
    if len(used) > 1:
        raise ValueError(f"polynomial is not univariate (uses {used})")
    return used[0] if used else None


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Monic ``p / gcd(p, p')`` for a univariate polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial input")
    v = univariate_variable(p)
    F = p.domain
    if v is None:
        return MultiPoly.constant(1, p.variables, F)
    sq = dense.squarefree_part(F, p.to_dense(v))
    return MultiPoly.from_dense(sq, v, p.variables, F)


def squarefree_decomposition(p: MultiPoly) -> dict[int, MultiPoly]:
    """``{multiplicity: monic factor}`` for a univariate polynomial (Yun)."""
    if p.is_zero():
        raise ValueError("zero polynomial input")
    v = univariate_variable(p)
    F = p.domain
    if v is None:
        return {}
    return {
        k: MultiPoly.from_dense(f, v, p.variables, F)
        for k, f in dense.squarefree_decomposition(F, p.to_dense(v)).items()
    }


def discriminant(p: MultiPoly, v: str) -> MultiPoly:
    """Classical discriminant ``(-1)^(n(n-1)/2) Res(p, p') / lc(p)``."""
    pc = _coeffs_in(p, v)
    n = len(pc) - 1
    r = resultant(p.derivative(v), p, v)  # = Res_classical(p, p')
    r = r.divexact(pc[-1])
    return -r if (n * (n - 1) // 2) % 2 else r


def restrict_to_line(f: Any, a: Any, b: Any, chart: int = 0, var: str = "t") -> MultiPoly:
    """Pull back a ternary form along an affine line, as a polynomial in ``var``.

    Chart 0 is the line ``y = a x + b`` parametrized by ``x = t``; chart 1 is
    ``x = a y + b`` parametrized by ``y = t``.  Both use ``Z = 1``.
    """
    form: MultiPoly = getattr(f, "form", f)
    if not isinstance(form, MultiPoly) or len(form.variables) != 3:
        raise ValueError("expected a ternary form")
    if not form.is_homogeneous():
        raise ValueError("form is not homogeneous")
    F = form.domain
    a_raw = a.value if isinstance(a, Scalar) else F.convert(a)
    b_raw = b.value if isinstance(b, Scalar) else F.convert(b)
    ring = (var,)
    t = MultiPoly.var(var, ring, F)
    line = t.scale(a_raw) + MultiPoly(ring, {(0,): b_raw}, F, raw=True)
    one = MultiPoly.constant(1, ring, F)
    X, Y, Z = form.variables
    if chart == 0:
        images = {X: t, Y: line, Z: one}
    elif chart == 1:
        images = {X: line, Y: t, Z: one}
    else:
        raise ValueError("chart must be 0 or 1")
    return form.substitute(images, ring)
