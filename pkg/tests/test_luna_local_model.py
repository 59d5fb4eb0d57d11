from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymlab.exact_algebra import MultiPoly
from prymlab.luna_local_model import (
    ISOLATED_FIXED_POINTS,
    STATED_FIXED_HYPERPLANES,
    U_VARS,
    XY_VARS,
    MukaiVector,
    WeightAction,
    derived_fixed_hyperplanes,
    flag_ideal,
    hyperplane_sets_match,
    incidence_oracle,
    induced_u_action,
    interpolate_hilbert_polynomial,
    invariant_generation_check,
    kappa_action_report,
    kappa_fixed_ideal,
    moduli_dimension,
    mukai_pairing,
    quadric_cone_model,
    segre_minors,
    trace_form,
    variety_degree,
    verify_kappa_fixed,
    veronese_oracle,
)

vectors = st.builds(MukaiVector, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))


def _in_xy(p: MultiPoly) -> MultiPoly:
    g = dict(zip(XY_VARS, MultiPoly.gens(XY_VARS)))
    images = {f"u{i}{j}": g[f"x{i}"] * g[f"y{j}"] for i in range(1, 5) for j in range(1, 5)}
    return p.substitute(images, XY_VARS)


def test_weights():
    w = WeightAction.standard()
    assert not w.is_invariant(MultiPoly.parse("x1^2*y1", XY_VARS))
    assert w.is_invariant(MultiPoly.parse("x1*y2 - x3*y4", XY_VARS))


def test_segre_generators_are_weight_zero_relations():
    minors = segre_minors()
    assert len(minors) == 36
    w = WeightAction.standard()
    for g in minors:
        assert _in_xy(g).is_zero()
    assert w.is_invariant(_in_xy(trace_form()))


def test_invariant_generation():
    assert invariant_generation_check(max_degree=4)


def test_flag_ideal_matches_parametrization():
    I = flag_ideal()
    for d in range(4):
        assert I.hilbert(d) == incidence_oracle(d)
    assert [I.hilbert(d) for d in range(4)] == [1, 15, 84, 300]


def test_kappa_action():
    assert kappa_action_report() == {"involution": True, "preserves_quadric": True, "inverts_weights": True}
    act = induced_u_action()
    assert all(act[act[v]] == v for v in U_VARS)


def test_fixed_hyperplanes_derived():
    derived = derived_fixed_hyperplanes()
    assert len(derived) == 6
    assert hyperplane_sets_match()
    assert {frozenset(p) for p in derived} == {frozenset(p) for p in STATED_FIXED_HYPERPLANES}


def test_kappa_fixed_cone_is_a_veronese_cone():
    rep = verify_kappa_fixed(4)
    assert rep["hilbert"] == {d: comb(2 * d + 3, 3) for d in range(5)}
    assert rep["degree"] == 8 and rep["variables"] == 10
    for d in range(4):
        assert veronese_oracle(d) == comb(2 * d + 3, 3)


def test_trace_cuts_the_cone_by_a_quadric():
    table = kappa_fixed_ideal(include_trace=True).hilbert_table(4)
    assert table == {0: 1, 1: 9, 2: 25, 3: 49, 4: 81}


def test_hilbert_interpolation():
    values = {d: comb(2 * d + 3, 3) for d in range(1, 5)}
    poly = interpolate_hilbert_polynomial(values)
    assert poly[3] * 6 == 8
    assert variety_degree(values, 3) == 8
    assert variety_degree({d: (d + 1) ** 2 for d in range(1, 4)}, 2) == 2


def test_quadric_cone():
    q = quadric_cone_model()
    assert q["rank"] == 8 and q["cone_dimension"] == 7 and q["quotient_dimension"] == 6 and q["weight_zero"]


def test_isolated_points_constant():
    assert ISOLATED_FIXED_POINTS == 64


@given(vectors, vectors)
def test_mukai_pairing_symmetric(v, w):
    assert mukai_pairing(v, w) == mukai_pairing(w, v)


@given(vectors, vectors, vectors, st.integers(-5, 5))
def test_mukai_pairing_bilinear(v, w, x, c):
    vw = MukaiVector(v.v0 + c * w.v0, v.v1 + c * w.v1, v.v2 + c * w.v2)
    assert mukai_pairing(vw, x) == mukai_pairing(v, x) + c * mukai_pairing(w, x)


@pytest.mark.parametrize("k", range(-10, 11))
def test_moduli_dimension_six(k):
    assert moduli_dimension(MukaiVector(0, 1, k - 2)) == 6
