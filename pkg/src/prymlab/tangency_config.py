"""Totally tangent quartic pairs and the stratification of the dual plane.

A configuration is a smooth quartic ``f4`` and a smooth conic ``q`` with
``g4 = q^2 - f4`` smooth; the pencil spanned by ``f4`` and ``g4`` contains
``q^2``, so the two quartics meet in eight points of multiplicity two, all
on ``q = 0``.  Lines of the dual plane are sorted by how they meet the two
quartics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .exact_algebra import Domain, Matrix, MultiPoly, PrimeField
from .exact_algebra import dense
from .quartic_invariants import (
    PlaneCurve,
    SingularCurveError,
    coordinate_changes,
    count_bitangents,
    count_flexes,
    default_primes,
    is_smooth,
    plucker_data,
)
from .quartic_invariants.bivariate import PositionError, intersect_bivariate
from .quartic_invariants.curve import hessian, random_form
from .quartic_invariants.dual import chart_subresultants
from .quartic_invariants.intersection import ProjectionError, intersect


class ConfigError(ValueError):
    """The pair does not form a valid totally tangent configuration."""


FIBER_CASES = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


@dataclass(frozen=True)
class TangencyConfig:
    f4: PlaneCurve
    q: PlaneCurve
    g4: PlaneCurve
    pencil_witness: tuple[int, int] = (1, 1)
    tangency_points: int = 8
    transform: tuple = ()
    resamples: int = 0

    def as_dict(self) -> dict:
        return {
            "f4": str(self.f4),
            "q": str(self.q),
            "g4": str(self.g4),
            "pencil_witness": list(self.pencil_witness),
            "tangency_points": self.tangency_points,
            "resamples": self.resamples,
        }


@dataclass(frozen=True)
class StratumRecord:
    label: str
    description: str
    dimension: int
    cardinality: int | str  # exact for points, "n/a" for curves and the open part
    fiber_case: str
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "description": self.description,
            "dimension": self.dimension,
            "cardinality": self.cardinality,
            "fiber_case": self.fiber_case,
            "witness": self.witness,
        }


def conic_is_smooth(q: PlaneCurve) -> bool:
    return q.degree == 2 and hessian(q).constant_value() != 0


def _proportional(a: MultiPoly, b: MultiPoly) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.monic() == b.monic()


def build_config(f4: PlaneCurve, q: PlaneCurve, seed: int = 0) -> TangencyConfig:
    """Validate ``(f4, q)`` and form ``g4 = q^2 - f4`` with all invariants checked."""
    if f4.degree != 4 or q.degree != 2:
        raise ConfigError("need a quartic and a conic")
    q2 = q.form**2
    if _proportional(q2, f4.form):
        raise ConfigError("pencil degenerate: f4 is a multiple of q^2")
    if not conic_is_smooth(q):
        raise ConfigError("conic is singular")
    if not is_smooth(f4, seed):
        raise SingularCurveError("f4 is not smooth")
    g4_form = q2 - f4.form
    g4 = PlaneCurve(g4_form)
    if not is_smooth(g4, seed):
        raise SingularCurveError("g4 = q^2 - f4 is singular; regenerate")
    if not (q2 - (f4.form + g4.form)).is_zero():
        raise ConfigError("pencil witness fails")
    # intersection structure: f4 . g4 is twice f4 . q
    last = ""
    for _, M in zip(range(12), coordinate_changes(seed)):
        F_ = f4.transform(M).form
        G_ = g4.transform(M).form
        Q_ = q.transform(M).form
        try:
            fg = intersect(F_, G_)
            fq = intersect(F_, Q_)
        except ProjectionError as exc:
            last = str(exc)
            continue
        if fg.total != 16:
            raise ConfigError(f"intersection total {fg.total} != 16")
        if fg.partition != {2: 8}:
            raise ConfigError(f"intersection structure {fg.partition} is not 8 double points")
        if dense.monic(f4.domain, fg.squarefree) != dense.monic(f4.domain, fq.squarefree):
            raise ConfigError("tangency points are not supported on q = 0")
        return TangencyConfig(f4, q, g4, (1, 1), fq.distinct, tuple(map(tuple, M)))
    raise ConfigError(f"no generic projection for the pair: {last}")


def random_config(seed: int, bound: int = 10) -> TangencyConfig:
    """Seeded random configuration, resampling on any genericity failure."""
    rng = random.Random(f"tangency-config:{seed}")
    resamples = 0
    while True:
        f4 = random_form(rng, 4, bound)
        q = random_form(rng, 2, bound)
        try:
            cfg = build_config(f4, q, seed)
        except (ConfigError, SingularCurveError):
            resamples += 1
            continue
        return TangencyConfig(cfg.f4, cfg.q, cfg.g4, cfg.pencil_witness, cfg.tangency_points, cfg.transform, resamples)


def dual_intersection(cfg: TangencyConfig, prime: int, seed: int = 0, attempts: int = 12):
    """Intersection multiplicities of the two dual curves, counted mod ``prime``."""
    F = PrimeField(prime)
    f = cfg.f4.change_domain(F)
    g = cfg.g4.change_domain(F)
    last = ""
    for _, M in zip(range(attempts), coordinate_changes(seed)):
        try:
            Df = chart_subresultants(f.transform(M).form, (0,))[0][0]
            Dg = chart_subresultants(g.transform(M).form, (0,))[0][0]
            return intersect_bivariate(F, Df, Dg)
        except (PositionError, ValueError) as exc:
            last = str(exc)
    raise ConfigError(f"dual intersection not in general position: {last}")


def enumerate_strata(
    cfg: TangencyConfig,
    primes: Sequence[int] | None = None,
    seed: int = 0,
    with_dual_intersection: bool = True,
) -> list[StratumRecord]:
    """The nine strata of the dual plane with cardinalities computed from ``cfg``."""
    primes = list(primes) if primes else default_primes()
    fb, gb = count_bitangents(cfg.f4, primes, seed), count_bitangents(cfg.g4, primes, seed)
    ff, gf = count_flexes(cfg.f4, primes, seed), count_flexes(cfg.g4, primes, seed)
    pf = plucker_data(cfg.f4, primes, seed, flexes=ff, bitangents=fb)
    pg = plucker_data(cfg.g4, primes, seed, flexes=gf, bitangents=gb)
    for label, rep in (("f4", fb), ("g4", gb), ("f4 flexes", ff), ("g4 flexes", gf)):
        if not rep.generic:
            raise ConfigError(f"non-generic configuration: {label} has multiplicities {rep.multiplicities}")
    tangencies = cfg.tangency_points
    transversal = pf.dual_degree * pg.dual_degree - 2 * tangencies
    witness6: dict = {"identity": f"{pf.dual_degree}*{pg.dual_degree} - 2*{tangencies} = {transversal}"}
    if with_dual_intersection:
        inter = dual_intersection(cfg, primes[0], seed)
        witness6.update(
            {
                "prime": primes[0],
                "resultant_degree": inter.resultant_degree,
                "distinct": inter.distinct,
                "partition": {str(k): v for k, v in sorted(inter.partition.items())},
            }
        )
        if inter.resultant_degree != pf.dual_degree * pg.dual_degree:
            raise ConfigError("dual intersection escapes the chart")
        if inter.partition.get(1, 0) != transversal or inter.partition.get(2, 0) != tangencies:
            raise ConfigError(f"dual intersection partition {inter.partition} is not generic")
    return [
        StratumRecord("Pi0", "open complement of both dual curves", 2, "n/a", "smooth"),
        StratumRecord("Pi1", "smooth points of the dual of g4 off the other strata", 1, "n/a", "i"),
        StratumRecord("Pi2", "cusps of the dual of g4 (flex lines of g4)", 0, gf.distinct, "ii",
                      {"confirmed_by_primes": gf.confirmed_by_primes}),
        StratumRecord("Pi3", "smooth points of the dual of f4 off the other strata", 1, "n/a", "iii"),
        StratumRecord("Pi4", "nodes of the dual of g4 (bitangents of g4)", 0, gb.distinct, "iv",
                      {"confirmed_by_primes": gb.confirmed_by_primes}),
        StratumRecord("Pi5", "cusps of the dual of f4 (flex lines of f4)", 0, ff.distinct, "v",
                      {"confirmed_by_primes": ff.confirmed_by_primes}),
        StratumRecord("Pi6", "transversal intersections of the two dual curves", 0, transversal, "vi", witness6),
        StratumRecord("Pi7", "tangencies of the two dual curves (common tangent lines)", 0, tangencies, "vii",
                      {"tangency_points_on_q": tangencies}),
        StratumRecord("Pi8", "nodes of the dual of f4 (bitangents of f4)", 0, fb.distinct, "viii",
                      {"confirmed_by_primes": fb.confirmed_by_primes}),
    ]


def lift_line_profile(
    line_form: str, q_line: str, curve: str = "f4", seed: int = 0, bound: int = 5, tries: int = 200
) -> TangencyConfig:
    """Configuration whose restriction to the line ``Y = 0`` is prescribed.

    ``line_form`` is the binary quartic in ``X, Z`` cut out on ``Y = 0`` by
    ``curve`` (``"f4"`` or ``"g4"``), and ``q_line`` that of the conic.  Both
    are completed by random multiples of ``Y`` until every invariant of a
    configuration holds.  Used to build members of a chosen fiber case.
    """
    q0 = PlaneCurve.parse(q_line)
    h0 = PlaneCurve.parse(line_form)
    if curve == "g4":
        f0 = PlaneCurve(q0.form**2 - h0.form)
    elif curve == "f4":
        f0 = h0
    else:
        raise ValueError("curve must be 'f4' or 'g4'")
    rng = random.Random(f"line-profile:{seed}")
    Y = MultiPoly.var("Y", f0.form.variables, f0.domain)
    for _ in range(tries):
        f = f0.form + Y * random_form(rng, 3, bound).form
        q = q0.form + Y * random_form(rng, 1, bound).form
        try:
            return build_config(PlaneCurve(f), PlaneCurve(q), seed)
        except (ConfigError, SingularCurveError):
            continue
    raise ConfigError("no valid configuration with this line profile")


# -- classification of a single line -----------------------------------------


def _line_points(domain: Domain, t: Sequence) -> tuple[list, list]:
    basis = Matrix([list(t)], domain).kernel_basis()
    if len(basis) != 2:
        raise ValueError("line coordinates must be a nonzero vector")
    return basis[0], basis[1]


def _binary_restriction(form: MultiPoly, P1: list, P2: list) -> tuple[list, int]:
    """``h(s) = form(s*P1 + P2)`` dense in ``s`` with its formal degree."""
    F = form.domain
    ring = ("s",)
    s = MultiPoly.var("s", ring, F)
    images = {
        v: s.scale(P1[i]) + MultiPoly(ring, {(0,): P2[i]}, F, raw=True) for i, v in enumerate(form.variables)
    }
    h = form.substitute(images, ring)
    return h.to_dense("s") if not h.is_zero() else [], form.total_degree()


def _contact(form: MultiPoly, P1: list, P2: list) -> tuple[list[int], list, bool]:
    """Root multiplicities on the line, the multiple-root polynomial, infinite multiple root."""
    F = form.domain
    h, n = _binary_restriction(form, P1, P2)
    if not h:
        raise ValueError("line is a component of the curve")
    mults: list[int] = []
    at_inf = n - (len(h) - 1)
    if at_inf:
        mults.append(at_inf)
    multiple = [F.one]
    for k, fac in dense.squarefree_decomposition(F, h).items():
        mults += [k] * (len(fac) - 1)
        if k >= 2:
            multiple = dense.mul(F, multiple, fac)
    return sorted(mults, reverse=True), multiple, at_inf >= 2


def _kind(mults: list[int]) -> str:
    big = [k for k in mults if k >= 2]
    if not big:
        return "transversal"
    if big == [2]:
        return "simple"
    if big == [3]:
        return "flex"
    if big == [2, 2]:
        return "bitangent"
    return "degenerate"


def classify_member(cfg: TangencyConfig, t: Sequence) -> str:
    """Fiber case of the member over the line ``t = (U, V, W)``.

    Returns one of ``"smooth"``, ``"i"`` .. ``"viii"`` or ``"unclassifiable"``.
    """
    F = cfg.f4.domain
    coords = [F.convert(x) for x in t]
    if all(c == 0 for c in coords):
        raise ValueError("line coordinates must not all vanish")
    P1, P2 = _line_points(F, coords)
    try:
        mf, rf, inf_f = _contact(cfg.f4.form, P1, P2)
        mg, rg, inf_g = _contact(cfg.g4.form, P1, P2)
    except ValueError:
        return "unclassifiable"
    kf, kg = _kind(mf), _kind(mg)
    if kf == "degenerate" or kg == "degenerate":
        return "unclassifiable"
    if kf == "transversal" and kg == "transversal":
        return "smooth"
    if kf == "transversal":
        return {"simple": "i", "flex": "ii", "bitangent": "iv"}[kg]
    if kg == "transversal":
        return {"simple": "iii", "flex": "v", "bitangent": "viii"}[kf]
    if kf == "simple" and kg == "simple":
        shared = len(dense.gcd(F, rf, rg)) > 1 or (inf_f and inf_g)
        return "vii" if shared else "vi"
    return "unclassifiable"
