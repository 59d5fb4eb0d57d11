"""Stability of sheaves on the reducible members ``C + C'`` and the twist maps.

A sheaf of bidegree ``(d, d')`` locally free at ``s`` of the four nodes is
an extension of ``L'`` (degree ``d'``) by ``L(-s)`` (degree ``d - s``) where
both components are rational, so ``chi = d + d' - s + 2``.  Semistability
compares the Euler characteristics of the sub and quotient sheaves weighted
by the polarization degrees of the components: for ``H`` both weights
agree, and for ``H_eps`` they are ``1 - 3 eps`` on ``C`` and ``1 + 3 eps``
on ``C'`` with ``eps`` a positive infinitesimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"
NOT_A_SHEAF = "not-a-sheaf"


class Polarization(Enum):
    H = "H"
    H_EPS = "H_eps"
    H_EPS_SWAPPED = "H_eps_swapped"  # the perturbation with the components exchanged

    @classmethod
    def parse(cls, name: str | "Polarization") -> "Polarization":
        if isinstance(name, cls):
            return name
        for p in cls:
            if p.value.lower() == str(name).lower():
                return p
        raise ValueError(f"unknown polarization {name!r}")

    def weights(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Weights of ``C`` and ``C'`` as ``(constant, eps coefficient)``."""
        if self is Polarization.H:
            return (1, 0), (1, 0)
        if self is Polarization.H_EPS:
            return (1, -3), (1, 3)
        return (1, 3), (1, -3)


def _mul(a: int, w: tuple[int, int]) -> tuple[int, int]:
    return (a * w[0], a * w[1])


def _compare(lhs: tuple[int, int], rhs: tuple[int, int]) -> int:
    """Sign of ``rhs - lhs`` for an infinitesimal ``eps > 0``: 1, 0 or -1."""
    diff = (rhs[0] - lhs[0], rhs[1] - lhs[1])
    if diff == (0, 0):
        return 0
    return 1 if diff > (0, 0) else -1


def chi_of(d: int, d_prime: int, s: int) -> int:
    return d + d_prime - s + 2


def classify_stability(d: int, d_prime: int, s: int, k: int, polarization: str | Polarization = "H") -> str:
    """Verdict for bidegree ``(d, d')`` with ``s`` glued nodes and ``chi = k - 2``."""
    pol = Polarization.parse(polarization)
    if not 0 <= s <= 4 or chi_of(d, d_prime, s) != k - 2:
        return NOT_A_SHEAF
    w, w_prime = pol.weights()
    # sub L(-s) on C against quotient L' on C', and the mirror extension
    first = _compare(_mul(d - s + 1, w_prime), _mul(d_prime + 1, w))
    second = _compare(_mul(d_prime - s + 1, w), _mul(d + 1, w_prime))
    if first < 0 or second < 0:
        return UNSTABLE
    if first == 0 or second == 0:
        return STRICTLY_SEMISTABLE
    return STABLE


def semistable_bidegrees(
    k: int, s: int, polarization: str | Polarization = "H", window: int = 6, center: int | None = None
) -> list[tuple[int, int, str]]:
    """All ``(d, d', verdict)`` with a semistable verdict, ``|d - c|, |d' - c| <= window``."""
    c = k // 2 if center is None else center
    out = []
    for d in range(c - window, c + window + 1):
        for dp in range(c - window, c + window + 1):
            v = classify_stability(d, dp, s, k, polarization)
            if v in (STABLE, STRICTLY_SEMISTABLE):
                out.append((d, dp, v))
    return out


# -- twisting by a component ---------------------------------------------------


def twist_shift(d: int, d_prime: int, same_curve: bool, conic: str = "C") -> tuple[int, int]:
    """Bidegree after tensoring by the component ``C_i`` (or ``C'_i``) of ``Gamma_i``.

    On ``Gamma_i`` itself the self-intersection ``-2`` and the four nodes give
    ``(d - 2, d' + 4)``; on ``Gamma_j`` with ``j != i`` the twist has degree 2 on
    the component of the same class and 0 on the other.
    """
    if conic == "C":
        return (d - 2, d_prime + 4) if same_curve else (d + 2, d_prime)
    if conic == "C'":
        return (d + 4, d_prime - 2) if same_curve else (d, d_prime + 2)
    raise ValueError("conic must be 'C' or \"C'\"")


@dataclass(frozen=True)
class IndeterminacyComponent:
    support: str  # "Gamma_i" or "Gamma_j"
    bidegree: tuple[int, int] | None  # None: the whole fiber over Gamma_i
    copies: int

    @property
    def label(self) -> str:
        if self.bidegree is None:
            return "f^-1(Gamma_i)"
        d, dp = self.bidegree
        where = "Gamma_i" if self.support == "Gamma_i" else "Gamma_j, j != i"
        return f"Jbar^{{{d},{dp}}}({where})"

    def as_dict(self) -> dict:
        return {
            "support": self.support,
            "bidegree": None if self.bidegree is None else list(self.bidegree),
            "copies": self.copies,
            "label": self.label,
        }


def indeterminacy_components(k: int, conic: str = "C", reducible_members: int = 28) -> list[IndeterminacyComponent]:
    """Components where tensoring by ``O(q)`` fails to preserve stability.

    The three-dimensional components ``Jbar^{d,d'}`` come from locally free
    extensions (``s = 4``) of stable bidegree; one is indeterminate when its
    shifted bidegree is no longer stable at ``k + 2``.  When every component
    over ``Gamma_i`` is indeterminate the whole fiber is reported.
    """
    out: list[IndeterminacyComponent] = []
    for same, support, copies in ((True, "Gamma_i", 1), (False, "Gamma_j", reducible_members - 1)):
        stable = [(d, dp) for d, dp, v in semistable_bidegrees(k, 4, "H", window=8) if v == STABLE]
        bad = [
            (d, dp)
            for d, dp in stable
            if classify_stability(*twist_shift(d, dp, same, conic), 4, k + 2, "H") != STABLE
        ]
        if same and bad and len(bad) == len(stable):
            out.append(IndeterminacyComponent(support, None, copies))
        else:
            out.extend(IndeterminacyComponent(support, b, copies) for b in sorted(bad))
    return out
