"""Stratified Euler characteristics of the Prym fibration.

The total is the sum over strata of the dual plane of
``chi(base stratum) * chi(fiber over it)``; the base strata come from a
tangency configuration and the fibers from the gluing models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .prym_combinatorics import PrymFiberModel, prym_fiber_model
from .prym_combinatorics.spaces import chi  # noqa: F401  (re-exported)
from .tangency_config import StratumRecord

# Hodge numbers of the Fujiki examples, taken as external input
FUJIKI_HODGE = (14, 0, 162)


class MissingFiberError(KeyError):
    """A stratum has no fiber model attached."""


@dataclass(frozen=True)
class Contribution:
    label: str
    base_chi: int | None
    fiber_chi: int
    product: int

    def as_dict(self) -> dict:
        return {"label": self.label, "base_chi": self.base_chi, "fiber_chi": self.fiber_chi, "product": self.product}


@dataclass
class EulerReport:
    contributions: list[Contribution]
    total: int
    comparison: dict = field(default_factory=dict)

    @property
    def nonzero(self) -> list[Contribution]:
        return [c for c in self.contributions if c.product != 0]

    def as_dict(self) -> dict:
        return {
            "contributions": [c.as_dict() for c in self.contributions],
            "total": self.total,
            "nonzero": [c.label for c in self.nonzero],
            "comparison": self.comparison,
        }


def fujiki_euler(h11: int, h12: int, h22: int) -> int:
    """Euler number ``8 + 4 h11 + h22 - 4 h12`` of a fourfold with these Hodge numbers."""
    if min(h11, h12, h22) < 0:
        raise ValueError("Hodge numbers are nonnegative")
    return 8 + 4 * h11 + h22 - 4 * h12


def total_euler(
    strata: Sequence[StratumRecord],
    fibers: Mapping[str, PrymFiberModel] | None = None,
) -> EulerReport:
    """Sum of ``chi(stratum) * chi(fiber)`` over the strata.

    A point stratum has ``chi`` equal to its cardinality.  Strata of positive
    dimension never contribute as long as their fibers have ``chi = 0``;
    otherwise the total is undefined here and an error is raised, since the
    Euler numbers of the open curve strata are not computed.
    """
    if fibers is None:
        fibers = {s.fiber_case: prym_fiber_model(s.fiber_case) for s in strata if s.fiber_case != "smooth"}
    contributions = []
    for s in strata:
        if s.fiber_case == "smooth":
            # fibers over the open part are abelian surfaces
            fiber_chi = 0
        elif s.fiber_case in fibers:
            fiber_chi = fibers[s.fiber_case].euler
        else:
            raise MissingFiberError(f"no fiber model for stratum {s.label} (case {s.fiber_case})")
        if s.dimension == 0:
            if not isinstance(s.cardinality, int):
                raise ValueError(f"point stratum {s.label} lacks an exact cardinality")
            base = s.cardinality
            contributions.append(Contribution(s.label, base, fiber_chi, base * fiber_chi))
        else:
            if fiber_chi != 0:
                raise ValueError(f"stratum {s.label} of dimension {s.dimension} has fiber chi {fiber_chi}")
            contributions.append(Contribution(s.label, None, 0, 0))
    total = sum(c.product for c in contributions)
    fujiki = fujiki_euler(*FUJIKI_HODGE)
    comparison = {
        "fujiki": fujiki,
        "hodge": list(FUJIKI_HODGE),
        "distinct_from_fujiki_examples": total != fujiki,
    }
    return EulerReport(contributions, total, comparison)
