"""Modular enumeration of bitangent and flex lines of a plane curve.

Lines are split into three families:

* ``y = a x + b`` (the affine chart), with points ``(t, a t + b, 1)``;
* ``x = b`` (vertical lines), with points ``(b, t, 1)``;
* the line at infinity ``Z = 0``.

For the chart family the restriction ``p(t) = f(t, a t + b, 1)`` has formal
degree ``n`` with leading coefficient ``f(1, a, 0)``.  The first two principal
subresultants of ``(p, p')``, divided by that leading coefficient, cut out
the lines along which ``gcd(p, p')`` has degree at least two: bitangents and
flex lines.  The two-equation system is solved by a resultant in ``b``
followed by a generic-position check, and every condition is then counted on
the whole solution set at once in ``Fp[a]/(r)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..exact_algebra import MultiPoly, PrimeField
from ..exact_algebra import dense
from ..exact_algebra.elimination import principal_minor_rows
from ..exact_algebra.matrix import Matrix
from ..exact_algebra.quotient import QuotientRing, det_division_free
from .curve import PlaneCurve, coordinate_changes
from .dual import DegenerateEliminantError, chart_subresultants, nodes_avoiding


class GenericityFailure(Exception):
    """The current coordinate system is not generic enough; try another."""


class NonZeroDimensionalError(ValueError):
    """The bitangent system has a positive-dimensional solution set."""


@dataclass
class ChartCount:
    lines: int = 0
    flex_lines: int = 0
    hyperflex_lines: int = 0

    @property
    def ordinary_bitangents(self) -> int:
        return self.lines - self.flex_lines

    def as_dict(self) -> dict:
        return {
            "special_lines": self.lines,
            "ordinary_bitangents": self.ordinary_bitangents,
            "flex_lines": self.flex_lines,
            "hyperflex_lines": self.hyperflex_lines,
        }


@dataclass
class ModularLineCount:
    prime: int
    transform: list
    attempts: int
    chart: ChartCount
    vertical: ChartCount
    infinity: ChartCount
    eliminant_degrees: dict = field(default_factory=dict)
    residual_checks: int = 0

    def _sum(self, attr: str) -> int:
        return sum(getattr(c, attr) for c in (self.chart, self.vertical, self.infinity))

    @property
    def ordinary_bitangents(self) -> int:
        return self._sum("ordinary_bitangents")

    @property
    def flex_lines(self) -> int:
        return self._sum("flex_lines")

    @property
    def hyperflex_lines(self) -> int:
        return self._sum("hyperflex_lines")

    @property
    def bitangents(self) -> int:
        """Bitangent lines, a hyperflex line counting once."""
        return self.ordinary_bitangents + self.hyperflex_lines

    def signature(self) -> tuple[int, int, int]:
        return (self.ordinary_bitangents, self.flex_lines, self.hyperflex_lines)


# -- numeric helpers ---------------------------------------------------------


def _pad(coeffs: list, length: int) -> list:
    return list(coeffs) + [0] * (length - len(coeffs))


def _deriv_formal(F: PrimeField, c: list) -> list:
    return [F.mul(i % F.p, c[i]) for i in range(1, len(c))]


def _principal(F: PrimeField, pc: list, qc: list, j: int):
    rows = principal_minor_rows(pc, qc, 0, j)
    return Matrix(rows, F, raw=True).det()


def _eval_in_b(F: PrimeField, P: list[list], alpha: int) -> list:
    return dense.strip([dense.evaluate(F, c, alpha) for c in P])


def _max_adeg(P: list[list]) -> int:
    return max((len(c) - 1 for c in P), default=-1)


# -- conditions on a restricted polynomial over a ring -----------------------


class _Ring:
    """Adapter so the same determinant code runs on numbers or ring classes."""

    def __init__(self, Q: QuotientRing):
        self.Q = Q

    def det(self, rows):
        Q = self.Q
        return Q.reduce(det_division_free(rows, Q.mul, Q.add, Q.sub, []))


def _ring_conditions(Q: QuotientRing, coeffs: list[list]) -> dict[str, list]:
    """Class representatives of the tangency conditions for ``sum coeffs[e] t^e``.

    Returns ``flex`` (``p'`` has a repeated root), ``hyperflex``
    (``gcd(p, p')`` has degree three) plus the gcd-degree-two residuals.
    """
    R = _Ring(Q)
    F = Q.F
    n = len(coeffs) - 1
    d1 = [dense.scale(F, coeffs[i], i % F.p) for i in range(1, n + 1)]
    d2 = [dense.scale(F, d1[i], i % F.p) for i in range(1, n)]
    out = {}
    for j in range(3):
        out[f"S{j}"] = R.det(principal_minor_rows(coeffs, d1, [], j))
    out["flex"] = R.det(principal_minor_rows(d1, d2, [], 0))
    out["hyperflex"] = out["S2"]
    return out


# -- the three line families -------------------------------------------------


def _chart_count(g: MultiPoly, F: PrimeField) -> tuple[ChartCount, dict, int]:
    n = g.total_degree()
    try:
        elim, lead_dense, cs = chart_subresultants(g, (0, 1))
    except DegenerateEliminantError as exc:
        raise GenericityFailure(str(exc)) from exc
    P0, P1 = elim[0], elim[1]
    if not P0 or not P1:
        raise NonZeroDimensionalError("a tangency eliminant vanishes identically")
    n0, n1 = len(P0) - 1, len(P1) - 1
    if len(P0[-1]) != 1:
        raise GenericityFailure("leading b-coefficient of the dual eliminant is not constant")
    if n0 == 0 or n1 == 0:
        raise GenericityFailure("an eliminant does not involve b")
    degrees = {"dual_chart_degree_b": n0, "S1_degree_b": n1}

    # R(a) = Res_b(P0, P1); its squarefree part carries one root per solution
    m0, m1 = _max_adeg(P0), _max_adeg(P1)
    r_bound = n1 * m0 + n0 * m1
    nodes = nodes_avoiding(F, r_bound + 1, start=3)
    evaluated = []
    Rv = []
    for alpha in nodes:
        e0 = _pad(_eval_in_b(F, P0, alpha), n0 + 1)
        e1 = _pad(_eval_in_b(F, P1, alpha), n1 + 1)
        evaluated.append((e0, e1))
        Rv.append(dense.resultant(F, e0, e1, n0, n1))
    R = dense.interpolate(F, nodes, Rv)
    if not R:
        raise NonZeroDimensionalError("bitangent eliminant vanishes identically")
    degrees["resultant_degree"] = len(R) - 1
    r = dense.squarefree_part(F, R)
    degrees["squarefree_degree"] = len(r) - 1
    degrees["spurious_at_infinity"] = 0
    total = ChartCount()
    residuals = 0
    # Split the roots of r by the degree k of gcd_b(P0, P1) above them.  Above
    # a root with a single solution that gcd is (b - b0)^k, read off from the
    # k-th subresultant.
    remaining = r
    k = 0
    while len(remaining) > 1:
        k += 1
        if k > min(n0, n1):
            raise GenericityFailure("eliminants share a factor above some a")
        sres = []
        for i in range(k + 1):
            col = None if i == k else i
            vals = [Matrix(principal_minor_rows(e0, e1, 0, k, col), F, raw=True).det() for e0, e1 in evaluated]
            sres.append(dense.interpolate(F, nodes, vals))
        lead_k = sres[k]
        g = dense.gcd(F, remaining, lead_k)
        part = dense.divmod_(F, remaining, g)[0]
        remaining = g
        if len(part) <= 1:
            continue
        Q = QuotientRing(F, part)
        inv = Q.inv(Q.reduce(lead_k))
        b0 = Q.neg(Q.mul(Q.reduce(sres[k - 1]), Q.mul(inv, Q.inv(Q.const(k)))))
        # perfect-power check: sres_k == lead * (b - b0)^k
        for i in range(k):
            expect = Q.mul(Q.reduce(lead_k), Q.mul(Q.const(_binom(k, i)), Q.power(Q.neg(b0), k - i)))
            if Q.sub(Q.reduce(sres[i]), expect):
                raise GenericityFailure("two solutions share an a-coordinate")
        degrees[f"gcd_degree_{k}"] = Q.rank
        sub, spurious, checks = _count_part(F, Q, b0, cs, P0, P1, lead_dense, n)
        total.lines += sub.lines
        total.flex_lines += sub.flex_lines
        total.hyperflex_lines += sub.hyperflex_lines
        degrees["spurious_at_infinity"] += spurious
        residuals += checks
    return total, degrees, residuals


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _count_part(F, Q: QuotientRing, b_of_a: list, cs, P0, P1, lead_dense, n) -> tuple[ChartCount, int, int]:
    a_class = Q.reduce([0, 1])
    # residuals: the solution set satisfies both eliminants
    residuals = 0
    for P in (P0, P1):
        acc: list = []
        for j in range(len(P) - 1, -1, -1):
            acc = Q.add(Q.mul(acc, b_of_a), Q.reduce(P[j]))
        if acc:
            raise ArithmeticError("eliminant residual is nonzero on the solution set")
        residuals += 1

    coeffs = [Q.evaluate(c, {"a": a_class, "b": b_of_a}) for c in cs]

    # points on a root of the leading coefficient are artefacts of the formal degree
    h = dense.gcd(F, Q.modulus, lead_dense)
    if len(h) > 1:
        H = QuotientRing(F, h)
        hc = [H.reduce(c) for c in coeffs]
        if hc[n - 1]:
            raise GenericityFailure("solution through a point at infinity with simple contact")
        low = hc[: n - 1]
        # genuine iff the remaining quadratic still has a repeated root or the
        # contact at infinity exceeds two
        if n == 4:
            quad_disc = H.sub(H.mul(low[1], low[1]), H.mul(H.const(4), H.mul(low[0], low[2])))
            genuine = H.vanishing_count(H.mul(quad_disc, low[2]))
        else:
            genuine = H.rank
        if genuine:
            raise GenericityFailure("a special line passes through a point at infinity")
        Q = QuotientRing(F, dense.divmod_(F, Q.modulus, h)[0])
        coeffs = [Q.reduce(c) for c in coeffs]
        if Q.rank == 0:
            return ChartCount(), len(h) - 1, residuals

    cond = _ring_conditions(Q, coeffs)
    for key in ("S0", "S1"):
        if cond[key]:
            raise ArithmeticError(f"subresultant {key} does not vanish on the solution set")
    count = ChartCount(
        lines=Q.rank,
        flex_lines=Q.vanishing_count(cond["flex"]),
        hyperflex_lines=Q.vanishing_count(cond["hyperflex"]),
    )
    return count, len(h) - 1, residuals + 2


def _univariate_family_count(cs: list[list], F: PrimeField) -> ChartCount:
    """Special lines in a one-parameter family with constant leading coefficient.

    ``cs[e]`` is the dense polynomial (in the family parameter) multiplying ``t^e``.
    """
    n = len(cs) - 1
    # row-degree bound for the Sylvester-type determinants
    deg_p = max(len(c) - 1 for c in cs)
    deg_d = max(len(c) - 1 for c in cs[1:])
    nodes = list(range(1, n * deg_d + (n - 1) * deg_p + 2))
    v0, v1 = [], []
    for beta in nodes:
        pc = [dense.evaluate(F, c, beta) for c in cs]
        dc = _deriv_formal(F, pc)
        v0.append(dense.resultant(F, dc, pc, n - 1, n))
        v1.append(_principal(F, pc, dc, 1))
    P0 = dense.interpolate(F, nodes, v0)
    P1 = dense.interpolate(F, nodes, v1)
    if not P0 and not P1:
        raise NonZeroDimensionalError("every line of the family is special")
    g = dense.gcd(F, P0, P1)
    if len(g) <= 1:
        return ChartCount()
    r = dense.squarefree_part(F, g)
    Q = QuotientRing(F, r)
    coeffs = [Q.reduce(c) for c in cs]
    cond = _ring_conditions(Q, coeffs)
    return ChartCount(
        lines=Q.rank,
        flex_lines=Q.vanishing_count(cond["flex"]),
        hyperflex_lines=Q.vanishing_count(cond["hyperflex"]),
    )


def _vertical_count(g: MultiPoly, F: PrimeField) -> ChartCount:
    n = g.total_degree()
    ring = ("t", "b")
    t, b = MultiPoly.gens(ring, F)
    one = MultiPoly.constant(1, ring, F)
    p = g.substitute({"X": b, "Y": t, "Z": one}, ring)
    cs = p.coefficients_in("t")
    cs += [MultiPoly.zero(ring, F)] * (n + 1 - len(cs))
    if not cs[n].is_constant() or cs[n].is_zero():
        raise GenericityFailure("(0:1:0) lies on the curve")
    dense_cs = []
    for c in cs:
        dd = [0] * (max(c.degree_in("b"), 0) + 1)
        for m, v in c.terms.items():
            dd[m[1]] = v
        dense_cs.append(dense.strip(dd))
    return _univariate_family_count(dense_cs, F)


def _infinity_count(g: MultiPoly, F: PrimeField) -> ChartCount:
    """Classify ``Z = 0`` from the root multiplicities of ``f(X, Y, 0)``."""
    n = g.total_degree()
    h = [0] * (n + 1)
    for m, c in g.terms.items():
        if m[2] == 0:
            h[m[0]] = c  # f(X, 1, 0)
    h = dense.strip(h)
    if not h:
        raise NonZeroDimensionalError("the line at infinity is a component")
    mults = []
    if len(h) - 1 < n:
        mults.append(n - (len(h) - 1))
    for k, fac in dense.squarefree_decomposition(F, h).items():
        mults += [k] * (len(fac) - 1)
    big = sorted((k for k in mults if k >= 2), reverse=True)
    count = ChartCount()
    if sum(big) - len(big) >= 2:
        count.lines = 1
        if big[0] >= 3:
            count.flex_lines = 1
        if big[0] >= 4:
            count.hyperflex_lines = 1
    return count


def count_special_lines(
    curve: PlaneCurve,
    prime: int,
    seed: int = 0,
    max_attempts: int = 12,
) -> ModularLineCount:
    """Count bitangent, flex and hyperflex lines modulo ``prime``.

    Coordinates are changed (identity first, then a seeded stream of integer
    matrices) until every genericity requirement of the elimination holds.
    """
    F = PrimeField(prime) if not isinstance(prime, PrimeField) else prime
    form = curve.form.change_domain(F)
    if form.total_degree() < 2:
        raise ValueError("need a curve of degree at least two")
    reasons: list[str] = []
    changes = coordinate_changes(seed)
    for attempt in range(1, max_attempts + 1):
        M = next(changes)
        g = PlaneCurve(form).transform(M).form
        try:
            chart, degrees, residuals = _chart_count(g, F)
            vertical = _vertical_count(g, F)
            infinity = _infinity_count(g, F)
        except GenericityFailure as exc:
            reasons.append(str(exc))
            continue
        return ModularLineCount(
            prime=F.p,
            transform=M,
            attempts=attempt,
            chart=chart,
            vertical=vertical,
            infinity=infinity,
            eliminant_degrees=degrees,
            residual_checks=residuals,
        )
    raise NonZeroDimensionalError(
        f"no generic coordinate system found after {max_attempts} attempts: {reasons[-3:]}"
    )


def check_primes(seed: int, count: int = 2, bits: int = 31) -> list[int]:
    """Deterministic pseudo-random primes in ``[2^(bits-1), 2^bits)``."""
    from sympy import nextprime

    rng = random.Random(f"check-primes:{seed}")
    out: list[int] = []
    while len(out) < count:
        p = int(nextprime(rng.randrange(2 ** (bits - 1), 2**bits - 2**20)))
        if p not in out:
            out.append(p)
    return out


__all__: Sequence[str] = [
    "ChartCount",
    "GenericityFailure",
    "ModularLineCount",
    "NonZeroDimensionalError",
    "check_primes",
    "count_special_lines",
]
