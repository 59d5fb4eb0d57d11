from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymlab.invariants_calculus import FUJIKI_HODGE, MissingFiberError, fujiki_euler, total_euler
from prymlab.prym_combinatorics import CASES, PrymFiberModel, Stratum, prym_fiber_model
from prymlab.prym_combinatorics.spaces import ELLIPTIC, TORUS, Finite, Product
from prymlab.tangency_config import StratumRecord

ZERO_CHI_CASES = [c for c in CASES if prym_fiber_model(c).euler == 0]


def synthetic_strata() -> list[StratumRecord]:
    """Records with the generic cardinalities, independent of any curve."""
    rows = [
        ("Pi0", 2, "n/a", "smooth"),
        ("Pi1", 1, "n/a", "i"),
        ("Pi2", 0, 24, "ii"),
        ("Pi3", 1, "n/a", "iii"),
        ("Pi4", 0, 28, "iv"),
        ("Pi5", 0, 24, "v"),
        ("Pi6", 0, 128, "vi"),
        ("Pi7", 0, 8, "vii"),
        ("Pi8", 0, 28, "viii"),
    ]
    return [StratumRecord(label, label, dim, card, case) for label, dim, card, case in rows]


def test_fujiki_euler():
    assert fujiki_euler(*FUJIKI_HODGE) == 226
    assert fujiki_euler(0, 0, 0) == 8
    with pytest.raises(ValueError):
        fujiki_euler(-1, 0, 0)


def test_synthetic_total():
    rep = total_euler(synthetic_strata())
    assert rep.total == 268
    assert [(c.label, c.base_chi, c.fiber_chi) for c in rep.nonzero] == [("Pi4", 28, 4), ("Pi6", 128, 1), ("Pi8", 28, 1)]
    assert rep.comparison["distinct_from_fujiki_examples"]


def test_pipeline_total_comes_from_computed_strata(strata):
    rep = total_euler(strata)
    assert rep.total == 268
    assert {c.label: c.base_chi for c in rep.nonzero} == {"Pi4": 28, "Pi6": 128, "Pi8": 28}


@settings(max_examples=50, deadline=None)
@given(st.permutations(synthetic_strata()))
def test_total_invariant_under_permutation(perm):
    assert total_euler(perm).total == 268


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.sampled_from(ZERO_CHI_CASES), st.sampled_from(ZERO_CHI_CASES)))
def test_zero_chi_descriptors_are_interchangeable(swaps):
    fibers = {c: prym_fiber_model(c) for c in CASES}
    for target, source in swaps.items():
        fibers[target] = prym_fiber_model(source)
    assert total_euler(synthetic_strata(), fibers).total == 268


def test_contributions_scale_with_fibers():
    fibers = {c: prym_fiber_model(c) for c in CASES}
    zero = PrymFiberModel("zero", (Stratum("P0", Product((TORUS, TORUS))),))
    assert total_euler(synthetic_strata(), {c: zero for c in CASES}).total == 0
    only_iv = {c: (fibers[c] if c == "iv" else zero) for c in CASES}
    assert total_euler(synthetic_strata(), only_iv).total == 112


def test_errors():
    with pytest.raises(MissingFiberError):
        total_euler(synthetic_strata(), {})
    bad = PrymFiberModel("bad", (Stratum("P0", Finite(1)),))
    fibers = {c: prym_fiber_model(c) for c in CASES}
    fibers["i"] = bad
    with pytest.raises(ValueError):
        total_euler(synthetic_strata(), fibers)
    broken = synthetic_strata()
    broken[4] = StratumRecord("Pi4", "", 0, "n/a", "iv")
    with pytest.raises(ValueError):
        total_euler(broken)


def test_elliptic_fiber_is_zero():
    model = PrymFiberModel("e", (Stratum("P0", ELLIPTIC),))
    assert model.euler == 0
