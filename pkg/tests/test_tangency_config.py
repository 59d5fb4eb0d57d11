from __future__ import annotations

import pytest

from prymlab.quartic_invariants import PlaneCurve, SingularCurveError, random_smooth_quartic
from prymlab.tangency_config import (
    ConfigError,
    build_config,
    classify_member,
    conic_is_smooth,
    dual_intersection,
    lift_line_profile,
    random_config,
)

LINE = (0, 1, 0)  # the line Y = 0 carries the prescribed restrictions

PROFILES = [
    ("f4", "-2*X^4 + 4*X^3*Z + 7*X^2*Z^2", "X^2 + X*Z + Z^2", "vi"),
    ("f4", "X^2*(X-Z)*(X+2*Z)", "X*(X-3*Z)", "vii"),
    ("f4", "(X^2+3*X*Z-Z^2)^2", "X^2+5*Z^2", "viii"),
    ("f4", "X^3*Z", "X^2+X*Z-3*Z^2", "v"),
    ("f4", "X^2*(X-Z)*(X+2*Z)", "X^2+5*Z^2", "iii"),
    ("g4", "X^2*(X-Z)*(X+2*Z)", "X^2+5*Z^2", "i"),
    ("g4", "X^3*Z", "X^2+X*Z-3*Z^2", "ii"),
    ("g4", "(X^2+3*X*Z-Z^2)^2", "X^2+5*Z^2", "iv"),
]


def test_config_invariants(config):
    assert config.pencil_witness == (1, 1)
    assert config.tangency_points == 8
    assert config.g4.form == config.q.form * config.q.form - config.f4.form
    assert conic_is_smooth(config.q)
    assert random_config(1).as_dict() == config.as_dict()


def test_degenerate_pencil_rejected():
    q = PlaneCurve.parse("X^2 + Y^2 + Z^2")
    f = PlaneCurve(q.form * q.form)
    with pytest.raises(ConfigError, match="pencil"):
        build_config(f, q)


def test_singular_conic_rejected():
    f, _ = random_smooth_quartic(3)
    with pytest.raises(ConfigError):
        build_config(f, PlaneCurve.parse("X^2 - Y^2"))


def test_degree_errors():
    f, _ = random_smooth_quartic(3)
    with pytest.raises(ConfigError):
        build_config(PlaneCurve.parse("X^3 + Y^3 + Z^3"), PlaneCurve.parse("X^2 + Y^2 + Z^2"))
    with pytest.raises(ConfigError):
        build_config(f, f)


def test_reducible_quartic_rejected():
    q = PlaneCurve.parse("X^2 + Y^2 + Z^2")
    # q^2 - X^4 = (Y^2 + Z^2)(2 X^2 + Y^2 + Z^2)
    f_bad = PlaneCurve(q.form * q.form - PlaneCurve.parse("X^4").form)
    with pytest.raises((ConfigError, SingularCurveError)):
        build_config(f_bad, q)


def test_stratum_cardinalities(strata):
    card = {s.label: s.cardinality for s in strata}
    assert [card[k] for k in ("Pi2", "Pi4", "Pi5", "Pi6", "Pi7", "Pi8")] == [24, 28, 24, 128, 8, 28]
    assert card["Pi0"] == card["Pi1"] == card["Pi3"] == "n/a"
    assert 12 * 12 - 2 * 8 == card["Pi6"]


def test_strata_structure(strata):
    assert [s.label for s in strata] == [f"Pi{i}" for i in range(9)]
    for s in strata:
        assert (s.dimension == 0) == isinstance(s.cardinality, int)
    zero_dim = sum(s.cardinality for s in strata if s.dimension == 0)
    assert zero_dim == 2 * 28 + 2 * 24 + 128 + 8


def test_dual_intersection_count(config):
    inter = dual_intersection(config, 1_000_003)
    assert inter.resultant_degree == 144
    assert inter.partition == {1: 128, 2: 8}


@pytest.mark.parametrize("curve,form,q_line,case", PROFILES, ids=[p[3] for p in PROFILES])
def test_classify_member_constructions(curve, form, q_line, case):
    cfg = lift_line_profile(form, q_line, curve=curve, seed=0)
    assert classify_member(cfg, LINE) == case


def test_generic_line_is_smooth(config):
    assert classify_member(config, (1, 2, 3)) == "smooth"
