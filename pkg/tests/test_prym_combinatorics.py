from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prymlab.prym_combinatorics import (
    CASES,
    NOT_A_SHEAF,
    STABLE,
    STRICTLY_SEMISTABLE,
    UNSTABLE,
    Copies,
    Extension,
    Finite,
    GluingSheaf,
    Product,
    SheafError,
    apply_iota,
    apply_kappa,
    apply_tau,
    boundary_gluing_constants,
    case_v_fiber_condition,
    chi,
    classify_stability,
    cross_ratio,
    indeterminacy_components,
    kappa_fixed,
    kappa_fixed_torus,
    limit_factors,
    prym_fiber_model,
    random_fixed_sheaf,
    random_sheaf,
    reducible_member_model,
    semistable_bidegrees,
    symbolic_boundary_constants,
    tensor,
    theta_characteristics,
    twist_shift,
)
from prymlab.prym_combinatorics.spaces import ELLIPTIC, LINE, POINT, TORUS, P1

nonzero = st.fractions(min_value=-50, max_value=50, max_denominator=20).filter(lambda x: x != 0)
split_sets = st.sets(st.integers(0, 3), max_size=4).map(lambda s: tuple(sorted(s)))


@st.composite
def node_configs(draw):
    a = draw(nonzero)
    b = draw(nonzero.filter(lambda x: x != a and x != -a))
    return (a, -a, b, -b)


@st.composite
def sheaves(draw):
    z = draw(node_configs())
    split = draw(split_sets)
    gluing = tuple(None if i in split else draw(nonzero) for i in range(4))
    degrees = (draw(st.integers(-8, 8)), draw(st.integers(-8, 8)))
    return GluingSheaf(z, degrees, gluing, draw(st.integers(-4, 4)))


# -- the gluing model ---------------------------------------------------------


def test_sheaf_validation():
    with pytest.raises(SheafError):
        GluingSheaf((1, 2, 3, 4), (0, 0), (1, 1, 1, 1))
    with pytest.raises(SheafError):
        GluingSheaf((1, -1, 2, -2), (0, 0), (1, 0, 1, 1))
    F = GluingSheaf((1, -1, 2, -2), (1, 2), (3, None, 6, 9))
    assert F.gluing == (1, None, 2, 3) and F.s == 3 and F.chi == 2


@settings(max_examples=200, deadline=None)
@given(sheaves())
def test_involutions_square_to_identity(F):
    assert apply_tau(apply_tau(F)) == F
    assert apply_iota(apply_iota(F)) == F
    assert apply_kappa(apply_kappa(F)) == F


@settings(max_examples=200, deadline=None)
@given(sheaves())
def test_tau_and_iota_commute(F):
    assert apply_tau(apply_iota(F)) == apply_iota(apply_tau(F))


@settings(max_examples=100, deadline=None)
@given(sheaves())
def test_tau_moves_split_markers(F):
    assert apply_tau(F).split_nodes == frozenset((1, 0, 3, 2)[i] for i in F.split_nodes)
    assert apply_iota(F).split_nodes == F.split_nodes


@pytest.mark.parametrize("split", [(), (0,), (0, 1), (2, 3), (0, 2), (0, 1, 2, 3)])
def test_randomized_involution_suite(split):
    rng = random.Random(f"suite:{split}")
    for _ in range(100):
        F = random_sheaf(rng, split, m=rng.randint(-3, 3))
        assert apply_tau(apply_tau(F)) == F == apply_iota(apply_iota(F)) == apply_kappa(apply_kappa(F))
        assert apply_tau(apply_iota(F)) == apply_iota(apply_tau(F))


def test_fixed_locus_matches_membership_test():
    rng = random.Random(3)
    hits = 0
    for i in range(1000):
        F = random_fixed_sheaf(rng) if i % 2 else random_sheaf(rng, (), m=0, degrees=(0, 0))
        l1, l2, l3, l4 = F.gluing
        member = l1 * l2 == l3 * l4
        assert kappa_fixed(F) == member
        hits += member
    assert hits >= 500


def test_tensor_of_glued_sheaves():
    z = (1, -1, 2, -2)
    A = GluingSheaf(z, (1, 0), (1, 2, 3, 4))
    B = GluingSheaf(z, (0, 1), (1, 5, 7, 11))
    T = tensor(A, B)
    assert T.comp_degrees == (1, 1) and T.gluing == (1, 10, 21, 44)
    with pytest.raises(SheafError):
        tensor(A, GluingSheaf(z, (0, 0), (1, None, 1, 1)))


def test_theta_characteristics():
    thetas = theta_characteristics((1, -1, 2, -2))
    assert sorted(t.gluing for t in thetas) == [(1, 1, -1, -1), (1, 1, 1, 1)]
    for t in thetas:
        assert t.comp_degrees == (1, 1) and t.m == 1
        assert apply_tau(t) == t
        square = tensor(t, t)
        assert square.gluing == (1, 1, 1, 1)
    both = theta_characteristics((1, -1, 2, -2), include_anti_invariant=True)
    assert len(both) == 4


# -- stability ------------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(0, 4), st.integers(-6, 8))
def test_stability_symmetric_under_component_swap(d, dp, s, k):
    assert classify_stability(d, dp, s, k, "H") == classify_stability(dp, d, s, k, "H")
    assert classify_stability(d, dp, s, k, "H_eps") == classify_stability(dp, d, s, k, "H_eps_swapped")


@settings(max_examples=200, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(0, 4), st.integers(-6, 8))
def test_perturbation_refines_h(d, dp, s, k):
    h = classify_stability(d, dp, s, k, "H")
    e = classify_stability(d, dp, s, k, "H_eps")
    if h == STABLE:
        assert e == STABLE
    if h == UNSTABLE:
        assert e == UNSTABLE
    if h == NOT_A_SHEAF:
        assert e == NOT_A_SHEAF


def test_wrong_chi_is_not_a_sheaf():
    assert classify_stability(2, 2, 4, 5) == NOT_A_SHEAF
    assert classify_stability(2, 2, 5, 4) == NOT_A_SHEAF


def test_odd_k_locally_free_bidegrees():
    assert [(d, dp) for d, dp, v in semistable_bidegrees(3, 4)] == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert all(v == STABLE for *_, v in semistable_bidegrees(5, 4))


def test_even_k_locally_free_bidegrees():
    for k in (2, 4, 6, 8):
        rows = semistable_bidegrees(k, 4)
        offsets = [(d - k // 2, dp - k // 2) for d, dp, _ in rows]
        assert offsets == [(-2, 2), (-1, 1), (0, 0), (1, -1), (2, -2)]
        verdicts = [v for *_, v in rows]
        assert verdicts == [STRICTLY_SEMISTABLE, STABLE, STABLE, STABLE, STRICTLY_SEMISTABLE]


def test_balanced_split_sheaf_under_perturbation():
    for n in range(0, 5):
        k = 2 * n + 4
        assert classify_stability(n, n, 0, k, "H") == STRICTLY_SEMISTABLE
        assert classify_stability(n, n, 0, k, "H_eps") == UNSTABLE
    # with chi = 0 both slopes vanish and the perturbation cannot decide
    assert classify_stability(-1, -1, 0, 2, "H_eps") == STRICTLY_SEMISTABLE


def test_twist_shift_preserves_chi_step():
    for same in (True, False):
        for conic in ("C", "C'"):
            d, dp = twist_shift(1, 2, same, conic)
            assert d + dp == 3 + 2


def test_indeterminacy_components():
    for k in (4, 6, 8):
        even = [c.label for c in indeterminacy_components(k)]
        assert even == ["f^-1(Gamma_i)", f"Jbar^{{{(k + 2) // 2},{(k - 2) // 2}}}(Gamma_j, j != i)"]
    odd = indeterminacy_components(3)
    assert [c.bidegree for c in odd if c.support == "Gamma_i"] == [(0, 3), (1, 2), (2, 1)]
    assert [(c.bidegree, c.copies) for c in odd if c.support == "Gamma_j"] == [((3, 0), 27)]


# -- fiber models ----------------------------------------------------------------


def test_space_euler_characteristics():
    assert chi(POINT) == chi(LINE) == 1 and chi(TORUS) == chi(ELLIPTIC) == 0 and chi(P1) == 2
    assert chi(Product((P1, P1))) == 4
    assert chi(Copies(3, Finite(2))) == 6
    assert chi(Extension(LINE, Finite(2))) == 2


def test_fiber_models_euler():
    euler = {c: prym_fiber_model(c).euler for c in CASES}
    assert {c: e for c, e in euler.items() if e} == {"iv": 4, "vi": 1, "viii": 1}
    for c in CASES:
        m = prym_fiber_model(c)
        assert m.euler == sum(s.euler for s in m.strata)
    assert prym_fiber_model("(VI)").case == "vi"
    with pytest.raises(ValueError):
        prym_fiber_model("ix")


def test_reducible_member_from_torus():
    assert kappa_fixed_torus([0, 1, 2, 3]) == (2, 1)
    assert kappa_fixed_torus([2, 3]) == (1, 1)
    assert kappa_fixed_torus([]) == (0, 1)
    derived = reducible_member_model()
    assert [s.space for s in derived.strata] == [s.space for s in prym_fiber_model("viii").strata]
    assert derived.euler == 1


def test_case_v_condition():
    assert case_v_fiber_condition(Fraction(2, 3), Fraction(-2, 3))
    assert not case_v_fiber_condition(1, 1)


# -- boundary constants ----------------------------------------------------------


def test_boundary_constants_reference_configuration():
    c = boundary_gluing_constants((1, -1, 2, -2))
    assert c["horizontal"] == Fraction(1, 81)
    assert cross_ratio(*map(Fraction, (1, -1, 2, -2))) == Fraction(1, 9)


def test_boundary_oracle_is_the_squared_cross_ratio():
    sym = symbolic_boundary_constants()
    z = sym["symbols"]
    assert sympy.simplify(sym["horizontal"] - sym["cross_ratio"] ** 2) == 0
    cr_swapped = cross_ratio(z[2], z[3], z[0], z[1])
    assert sympy.simplify(sym["vertical"] - cr_swapped**2) == 0


@settings(max_examples=50, deadline=None)
@given(node_configs())
def test_boundary_constants_agree_with_cross_ratio(z):
    c = boundary_gluing_constants(z)
    cr = cross_ratio(*z)
    assert c["horizontal"] == cr**2
    # the double transposition (13)(24) leaves the cross ratio unchanged
    assert c["vertical"] == c["horizontal"]
    assert c["horizontal"] / c["vertical"] == 1


def test_limit_factors():
    z = [Fraction(x) for x in (1, -1, 2, -2)]
    assert limit_factors(z, 0, 1, (2, 3)) == [Fraction(3, 1), Fraction(1, 3)]
