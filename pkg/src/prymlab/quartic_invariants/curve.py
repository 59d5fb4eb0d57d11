"""Plane curves, Hessians, coordinate changes and smoothness certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from ..exact_algebra import QQ, Domain, Matrix, MultiPoly, parse_poly
from ..exact_algebra import dense
from ..exact_algebra.elimination import resultant

XYZ = ("X", "Y", "Z")


class CurveError(ValueError):
    """Raised on malformed or degenerate curve input."""


class SingularCurveError(CurveError):
    """Raised when a curve fails the smoothness certificate."""


@dataclass(frozen=True)
class PlaneCurve:
    """A homogeneous ternary form together with its degree."""

    form: MultiPoly
    degree: int = field(default=-1)

    def __post_init__(self):
        if len(self.form.variables) != 3:
            raise CurveError(f"plane curves need three variables, got {self.form.variables}")
        if self.form.is_zero():
            raise CurveError("the zero form does not define a curve")
        if not self.form.is_homogeneous():
            raise CurveError("form is not homogeneous")
        d = self.form.total_degree()
        if self.degree == -1:
            object.__setattr__(self, "degree", d)
        elif self.degree != d:
            raise CurveError(f"declared degree {self.degree} but form has degree {d}")

    @classmethod
    def parse(cls, text: str, domain: Domain = QQ) -> "PlaneCurve":
        return cls(parse_poly(text, XYZ, domain))

    @property
    def domain(self) -> Domain:
        return self.form.domain

    def __str__(self) -> str:
        return str(self.form)

    def change_domain(self, domain: Domain) -> "PlaneCurve":
        return PlaneCurve(self.form.change_domain(domain))

    def transform(self, M: Sequence[Sequence[int]]) -> "PlaneCurve":
        """Pull back along ``(X, Y, Z) -> M (X, Y, Z)``."""
        return PlaneCurve(apply_linear(self.form, M))

    def partials(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return tuple(self.form.derivative(v) for v in self.form.variables)  # type: ignore[return-value]

    def value_at(self, point: Sequence) -> object:
        return self.form.evaluate(point)


def apply_linear(form: MultiPoly, M: Sequence[Sequence[int]]) -> MultiPoly:
    F = form.domain
    gens = MultiPoly.gens(form.variables, F)
    images = {}
    for i, v in enumerate(form.variables):
        img = MultiPoly.zero(form.variables, F)
        for j, g in enumerate(gens):
            if M[i][j]:
                img = img + g.scale(M[i][j])
        images[v] = img
    return form.substitute(images)


def fermat_quartic(domain: Domain = QQ) -> PlaneCurve:
    return PlaneCurve.parse("X^4 + Y^4 + Z^4", domain)


def klein_quartic(domain: Domain = QQ) -> PlaneCurve:
    return PlaneCurve.parse("X^3*Y + Y^3*Z + Z^3*X", domain)


def monomials(degree: int, nvars: int = 3) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, grlex descending."""
    out = [m for m in product(range(degree + 1), repeat=nvars) if sum(m) == degree]
    return sorted(out, reverse=True)


def random_form(rng: random.Random, degree: int, bound: int = 10) -> PlaneCurve:
    while True:
        terms = {m: rng.randint(-bound, bound) for m in monomials(degree)}
        form = MultiPoly(XYZ, terms, QQ)
        if form.total_degree() == degree:
            return PlaneCurve(form)


def coordinate_changes(seed: int = 0, entry_bound: int = 3) -> Iterator[list[list[int]]]:
    """Deterministic stream of invertible integer matrices, identity first."""
    yield [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    rng = random.Random(f"coordinate-change:{seed}")
    while True:
        M = [[rng.randint(-entry_bound, entry_bound) for _ in range(3)] for _ in range(3)]
        if Matrix(M).det() != 0:
            yield M


def hessian(c: PlaneCurve) -> MultiPoly:
    """Determinant of the matrix of second partials (degree ``3(d - 2)``)."""
    if c.degree < 2:
        raise CurveError("the Hessian needs degree at least 2")
    names = c.form.variables
    second = [[c.form.derivative(u).derivative(v) for v in names] for u in names]
    a = second
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def hessian_curve(c: PlaneCurve) -> PlaneCurve:
    H = hessian(c)
    if H.is_zero():
        raise CurveError("Hessian vanishes identically")
    return PlaneCurve(H)


def _dehomogenize(p: MultiPoly, var: str) -> MultiPoly:
    return p.substitute({var: MultiPoly.constant(1, p.variables, p.domain)})


def _binary_gcd_at_infinity(parts: Sequence[MultiPoly]) -> bool:
    """True iff the restrictions of ``parts`` to ``Z = 0`` share a projective zero."""
    F = parts[0].domain
    zero = MultiPoly.zero(XYZ, F)
    restricted = [p.substitute({"Z": zero}) for p in parts]
    # (0:1:0) is the one point of Z = 0 outside the chart (1 : Y : 0)
    if all(r.evaluate((0, 1, 0)) == 0 for r in restricted):
        return True
    g: list = []
    for r in restricted:
        u = _dehomogenize(r, "X")  # polynomial in Y only, point (1 : Y : 0)
        dense_u = [F.zero] * (u.degree_in("Y") + 1)
        for m, c in u.terms.items():
            dense_u[m[1]] = c
        g = dense.gcd(F, g, dense.strip(dense_u))
    return len(g) > 1 or (not g)


def smoothness_certificate(c: PlaneCurve, seed: int = 0, attempts: int = 5) -> dict:
    """Try to certify that the partials have no common projective zero.

    In affine coordinates ``Z = 1`` a common zero of the partials has an
    ``X``-coordinate that is a root of both ``Res_Y(f_X, f_Y)`` and
    ``Res_Y(f_X, f_Z)``; coprimality of the two resultants, together with a
    separate check on the line ``Z = 0``, rules out singular points.  When the
    certificate is inconclusive a new coordinate change is tried.
    """
    if c.degree < 1:
        raise CurveError("constant forms are not curves")
    changes = coordinate_changes(seed)
    base = PlaneCurve(c.form.rename(XYZ))
    reason = "no certificate found"
    for attempt in range(attempts):
        M = next(changes)
        g = base.transform(M)
        fx, fy, fz = (_dehomogenize(p, "Z") for p in g.partials())
        if any(p.is_zero() for p in (fx, fy, fz)) and c.degree > 1:
            return {"smooth": False, "reason": "a partial derivative vanishes identically", "attempts": attempt + 1}
        if _binary_gcd_at_infinity(g.partials()):
            reason = "the partials share a zero on the line Z = 0"
            continue
        try:
            r1 = resultant(fx, fy, "Y")
            r2 = resultant(fx, fz, "Y")
        except ValueError:
            reason = "a partial derivative does not involve Y"
            continue
        if r1.is_zero() or r2.is_zero():
            return {"smooth": False, "reason": "partials share a common component", "attempts": attempt + 1}
        F = c.domain
        d1, d2 = r1.to_dense("X"), r2.to_dense("X")
        if len(dense.gcd(F, d1, d2)) == 1:
            return {"smooth": True, "transform": M, "attempts": attempt + 1}
        reason = "the partial-derivative eliminants share a root"
    return {"smooth": False, "reason": reason, "attempts": attempts}


def is_smooth(c: PlaneCurve, seed: int = 0) -> bool:
    return bool(smoothness_certificate(c, seed)["smooth"])


def require_smooth(c: PlaneCurve, seed: int = 0) -> dict:
    cert = smoothness_certificate(c, seed)
    if not cert["smooth"]:
        raise SingularCurveError(f"curve is not smooth: {cert['reason']}")
    return cert


def random_smooth_quartic(seed: int, bound: int = 10) -> tuple[PlaneCurve, int]:
    """Seeded random integer quartic, rejection-resampled until smooth.

    Returns the curve and the number of rejected draws.
    """
    rng = random.Random(f"quartic:{seed}")
    rejected = 0
    while True:
        c = random_form(rng, 4, bound)
        if is_smooth(c, seed):
            return c, rejected
        rejected += 1


def fraction_pair(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}
