"""Bitangent, flex and Plücker counts with modular confirmation."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Sequence

from ..exact_algebra import QQ, PrimeField
from .curve import (
    CurveError,
    PlaneCurve,
    coordinate_changes,
    hessian,
    require_smooth,
)
from .dual import dual_eliminant
from .intersection import Intersection, ProjectionError, intersect
from .lines import ModularLineCount, NonZeroDimensionalError, check_primes, count_special_lines

DEFAULT_PRIME_SEED = 2024


class NonGenericError(ValueError):
    """A strict-mode count hit a non-generic configuration (e.g. hyperflexes)."""


class ConfirmationError(RuntimeError):
    """Independent primes disagree on a count."""


def default_primes() -> list[int]:
    """Check primes: ``PRYMLAB_PRIMES`` (comma separated) or two seeded 31-bit primes."""
    env = os.environ.get("PRYMLAB_PRIMES", "").strip()
    if env:
        primes = [int(x) for x in env.replace(";", ",").split(",") if x.strip()]
        for p in primes:
            PrimeField(p)  # validates primality
        return primes
    return check_primes(DEFAULT_PRIME_SEED, 2)


@dataclass
class LineCountReport:
    total_with_multiplicity: int
    distinct: int
    per_chart: dict
    eliminant_degrees: dict
    confirmed_by_primes: list[int]
    multiplicities: dict = field(default_factory=dict)
    generic: bool = True
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "total_with_multiplicity": self.total_with_multiplicity,
            "distinct": self.distinct,
            "per_chart": self.per_chart,
            "eliminant_degrees": self.eliminant_degrees,
            "confirmed_by_primes": list(self.confirmed_by_primes),
            "multiplicities": {str(k): v for k, v in self.multiplicities.items()},
            "generic": self.generic,
        }


@dataclass
class PluckerData:
    dual_degree: int
    dual_nodes: int
    dual_cusps: int
    genus_check: int
    generic: bool = True
    cusp_multiplicities: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "dual_degree": self.dual_degree,
            "dual_nodes": self.dual_nodes,
            "dual_cusps": self.dual_cusps,
            "genus_check": self.genus_check,
            "generic": self.generic,
            "cusp_multiplicities": {str(k): v for k, v in self.cusp_multiplicities.items()},
        }


def _confirm(results: Sequence, key) -> None:
    values = {key(r) for r in results}
    if len(values) != 1:
        raise ConfirmationError(f"check primes disagree: {sorted(values)}")


def modular_line_counts(c: PlaneCurve, primes: Sequence[int] | None = None, seed: int = 0) -> list[ModularLineCount]:
    primes = list(primes) if primes else default_primes()
    if len(primes) < 2:
        raise ValueError("confirmation needs at least two primes")
    return [count_special_lines(c, p, seed) for p in primes]


def count_bitangents(
    c: PlaneCurve,
    primes: Sequence[int] | None = None,
    seed: int = 0,
    strict: bool = False,
    counts: Sequence[ModularLineCount] | None = None,
) -> LineCountReport:
    """Count the bitangent lines of a smooth plane quartic.

    A hyperflex line is counted once; in ``strict`` mode its presence raises
    :class:`NonGenericError` instead of being reported in ``multiplicities``.
    """
    start = time.perf_counter()
    if c.degree != 4:
        raise CurveError("bitangent counting expects a quartic")
    require_smooth(c, seed)
    results = list(counts) if counts else modular_line_counts(c, primes, seed)
    _confirm(results, lambda r: r.signature())
    first = results[0]
    if strict and first.hyperflex_lines:
        raise NonGenericError(f"{first.hyperflex_lines} hyperflex lines present")
    multiplicities = {"ordinary": first.ordinary_bitangents}
    if first.hyperflex_lines:
        multiplicities["hyperflex"] = first.hyperflex_lines
    return LineCountReport(
        total_with_multiplicity=first.bitangents,
        distinct=first.bitangents,
        per_chart={
            "affine": first.chart.as_dict(),
            "vertical": first.vertical.as_dict(),
            "infinity": first.infinity.as_dict(),
            "transform": first.transform,
        },
        eliminant_degrees=dict(first.eliminant_degrees),
        confirmed_by_primes=[r.prime for r in results],
        multiplicities=multiplicities,
        generic=first.hyperflex_lines == 0,
        seconds=time.perf_counter() - start,
    )


def _flex_intersection(c: PlaneCurve, seed: int, attempts: int = 12) -> tuple[Intersection, list]:
    changes = coordinate_changes(seed)
    last = ""
    for _ in range(attempts):
        M = next(changes)
        g = c.transform(M)
        try:
            return intersect(g.form, hessian(g)), M
        except ProjectionError as exc:
            last = str(exc)
    raise NonZeroDimensionalError(f"no generic projection found: {last}")


def count_flexes(
    c: PlaneCurve,
    primes: Sequence[int] | None = None,
    seed: int = 0,
    strict: bool = False,
) -> LineCountReport:
    """Flexes as the intersection of the curve with its Hessian.

    The count over Q is exact; the same computation modulo each check prime
    must return the same multiplicity partition.
    """
    start = time.perf_counter()
    if c.degree < 3:
        raise CurveError("flex counting needs degree at least three")
    require_smooth(c, seed)
    cq = c.change_domain(QQ) if c.domain != QQ else c
    exact, M = _flex_intersection(cq, seed)
    primes = list(primes) if primes else default_primes()
    confirmed = []
    for p in primes:
        mod, _ = _flex_intersection(cq.change_domain(PrimeField(p)), seed)
        if mod.partition != exact.partition:
            raise ConfirmationError(f"flex partition mod {p} is {mod.partition}, over Q {exact.partition}")
        confirmed.append(p)
    if strict and exact.distinct != exact.total:
        raise NonGenericError(f"flex multiplicities {exact.partition}")
    return LineCountReport(
        total_with_multiplicity=exact.total,
        distinct=exact.distinct,
        per_chart={"projection": "from (0:1:0)", "transform": M},
        eliminant_degrees={"resultant_degree": exact.total, "squarefree_degree": exact.distinct},
        confirmed_by_primes=confirmed,
        multiplicities=dict(sorted(exact.partition.items())),
        generic=exact.distinct == exact.total,
        seconds=time.perf_counter() - start,
    )


def plucker_data(
    c: PlaneCurve,
    primes: Sequence[int] | None = None,
    seed: int = 0,
    flexes: LineCountReport | None = None,
    bitangents: LineCountReport | None = None,
) -> PluckerData:
    """Degree, nodes and cusps of the dual curve with the genus identity."""
    flexes = flexes or count_flexes(c, primes, seed)
    bitangents = bitangents or count_bitangents(c, primes, seed)
    primes = list(primes) if primes else default_primes()
    dual_degree = dual_eliminant(c.change_domain(PrimeField(primes[0]))).total_degree()
    nodes = bitangents.total_with_multiplicity
    cusps = flexes.total_with_multiplicity
    genus = (dual_degree - 1) * (dual_degree - 2) // 2 - nodes - cusps
    return PluckerData(
        dual_degree=dual_degree,
        dual_nodes=nodes,
        dual_cusps=cusps,
        genus_check=genus,
        generic=flexes.generic and bitangents.generic,
        cusp_multiplicities=dict(flexes.multiplicities),
    )
