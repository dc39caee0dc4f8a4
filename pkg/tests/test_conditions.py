import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import coupledfp as cf
from coupledfp.conditions import _banded_conclusion
from coupledfp.spaces import PairPoint

from conftest import antichain_reals

EIGHTH = lambda e: e / 8


# --- delta_from_k ----------------------------------------------------------

def test_delta_from_k_values():
    assert cf.delta_from_k(4 / 5, 1.0) == pytest.approx(0.25, rel=1e-12)
    assert cf.delta_from_k(0.5, 2.0) == pytest.approx(2.0, rel=1e-12)


def test_delta_from_k_zero_is_unbounded():
    assert cf.delta_from_k(0.0, 1.0) == math.inf


@pytest.mark.parametrize("k", [-0.1, 1.0, 1.5])
def test_delta_from_k_domain(k):
    with pytest.raises(cf.InputError):
        cf.delta_from_k(k, 1.0)


@given(k=st.floats(min_value=0.05, max_value=0.95),
       eps=st.floats(min_value=1e-3, max_value=1e3),
       c=st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=100)
def test_delta_from_k_scales_linearly(k, eps, c):
    assert cf.delta_from_k(k, c * eps) == pytest.approx(c * cf.delta_from_k(k, eps), rel=1e-9)


# --- banach_k --------------------------------------------------------------

def test_banach_spec_quadruple_arithmetic():
    # x = u = 0, y = 0, v = 1: image distance 3/5, bound k/2 * 1
    f = lambda x, y: (x - 3 * y) / 5
    lhs = abs(f(0.0, 0.0) - f(0.0, 1.0))
    assert lhs == pytest.approx(0.6, abs=1e-15)
    assert lhs > 0.5 * 0.5 * 1.0  # k = 1/2 bound is violated


def test_banach_half_fails_on_flagship(samet):
    rep = cf.check_banach_k(samet.operator, 0.5, samples=4000, seed=0)
    assert rep.verdict == "fails"
    assert cf.reverify_witness(samet.operator, rep)["violated"]


@pytest.mark.parametrize("k", [0.25, 0.5, 0.8, 1.0 - 2.0 ** -20])
def test_banach_fails_for_every_k_below_one_on_flagship(samet, k):
    # the image distance reaches 6/5 of the half-sum on the x == u slice, so
    # no constant below one can work
    rep = cf.check_banach_k(samet.operator, k, samples=4000, seed=1)
    assert rep.verdict == "fails"
    w = rep.witness
    assert w.measured["lhs"] > w.measured["rhs"]


def test_banach_tight_constant_is_two_max_over_c():
    # for (a, b, c) = (1, 2, 8): 2*max(a,b)/c = 1/2 works ...
    prob = cf.builtin("linear(1,2,8)")
    rep = cf.check_banach_k(prob.operator, 0.5, samples=4000, seed=2)
    assert rep.verdict == "holds_on_samples"
    # ... while (a+b)/c = 3/8 is below the tight constant and fails
    rep = cf.check_banach_k(prob.operator, 3 / 8, samples=4000, seed=2)
    assert rep.verdict == "fails"
    assert cf.reverify_witness(prob.operator, rep)["violated"]


def test_banach_constant_operator_any_k():
    prob = cf.builtin("linear(0,0,1)")
    for k in (0.0, 0.5):
        rep = cf.check_banach_k(prob.operator, k, samples=500, seed=0)
        assert rep.verdict == "holds_on_samples"


def test_banach_inconclusive_without_comparable_quadruples():
    space = antichain_reals()
    op = cf.CoupledOperator(apply=lambda x, y: x / 2, space=space)
    rep = cf.check_banach_k(op, 0.9, samples=200, seed=0)
    assert rep.verdict == "inconclusive"


def test_banach_k_domain(samet):
    with pytest.raises(cf.InputError):
        cf.check_banach_k(samet.operator, 1.0)


# --- samet_mk (asymmetric banded) -----------------------------------------

def brute_max_ratio_samet(a, b, c, grid=30):
    """Brute-force the worst image-distance / half-sum ratio over a grid of
    offsets, including the degenerate slices."""
    worst = 0.0
    for i in range(grid + 1):
        for j in range(grid + 1):
            p, q = i / 5.0, j / 5.0
            if p + q == 0:
                continue
            lhs = abs((a * p + b * q) / c)
            worst = max(worst, lhs / ((p + q) / 2))
    return worst


def test_flagship_samet_ratio_exceeds_one():
    # independent grid search: ratio reaches 6/5 on the p = 0 slice
    assert brute_max_ratio_samet(1, 3, 5) == pytest.approx(1.2, rel=1e-12)


@pytest.mark.parametrize("delta_rule", [EIGHTH, lambda e: e, lambda e: 10 * e])
def test_samet_fails_on_flagship_for_any_delta(samet, delta_rule):
    rep = cf.check_samet(samet.operator, [1.0], delta_rule, samples=2000, seed=0)
    assert rep.verdict == "fails"
    w = rep.witness
    assert w.kind == "x_equals_u"
    assert w.x == w.u
    assert w.measured["lhs"] >= 1.0
    assert cf.reverify_witness(samet.operator, rep)["violated"]


def test_samet_holds_for_quarter_map():
    # F(x, y) = (x - y)/4 admits the constant 1/2, so delta(eps) = eps works
    prob = cf.builtin("linear(1,1,4)")
    rep = cf.check_samet(prob.operator, [0.1, 1.0, 10.0], lambda e: e,
                         samples=3000, seed=0)
    assert rep.verdict == "holds_on_samples"
    assert all(hits > 0 for _, hits in rep.band_hits)


def test_samet_constant_operator_holds():
    prob = cf.builtin("linear(0,0,1)")
    rep = cf.check_samet(prob.operator, [1.0], lambda e: e, samples=500, seed=0)
    assert rep.verdict == "holds_on_samples"


def test_samet_inconclusive_when_no_band_hits():
    space = antichain_reals()
    op = cf.CoupledOperator(apply=lambda x, y: x / 2, space=space)
    rep = cf.check_samet(op, [1.0], lambda e: e, samples=300, seed=0)
    assert rep.verdict == "inconclusive"


def test_samet_rejects_bad_grid(samet):
    with pytest.raises(cf.InputError):
        cf.check_samet(samet.operator, [], EIGHTH)
    with pytest.raises(cf.InputError):
        cf.check_samet(samet.operator, [0.0], EIGHTH)
    with pytest.raises(cf.InputError):
        cf.check_samet(samet.operator, [1.0], lambda e: 0.0)


# --- symmetric_mk ----------------------------------------------------------

def brute_symmetric_ratio(a, b, c, grid=30):
    worst = 0.0
    for i in range(grid + 1):
        for j in range(grid + 1):
            p, q = i / 5.0, j / 5.0
            if p + q == 0:
                continue
            lhs = (abs(a * p + b * q) + abs(b * p + a * q)) / (2 * c)
            worst = max(worst, lhs / ((p + q) / 2))
    return worst


def test_flagship_symmetric_ratio_is_four_fifths():
    assert brute_symmetric_ratio(1, 3, 5) == pytest.approx(0.8, rel=1e-12)


def test_symmetric_holds_on_flagship_with_eighth(samet):
    rep = cf.check_symmetric_mk(samet.operator, [0.1, 1.0, 10.0], EIGHTH,
                                samples=3000, seed=0)
    assert rep.verdict == "holds_on_samples"
    assert [eps for eps, _ in rep.band_hits] == [0.1, 1.0, 10.0]
    assert all(hits >= 2500 for _, hits in rep.band_hits)
    assert rep.epsilon_grid == [(0.1, 0.1 / 8), (1.0, 1.0 / 8), (10.0, 10.0 / 8)]


def test_symmetric_fails_on_flagship_with_half(samet):
    # ratio is exactly 4/5, so half-sums at or above 1.25*eps inside the band
    # [eps, 1.5*eps) violate the conclusion
    rep = cf.check_symmetric_mk(samet.operator, [1.0], lambda e: e / 2,
                                samples=3000, seed=0)
    assert rep.verdict == "fails"
    w = rep.witness
    assert w.measured["half_sum"] >= 1.25 * (1 - 1e-12)
    assert cf.reverify_witness(samet.operator, rep)["violated"]


def test_symmetric_constant_operator_holds():
    prob = cf.builtin("linear(0,0,1)")
    rep = cf.check_symmetric_mk(prob.operator, [1.0], lambda e: e, samples=500, seed=0)
    assert rep.verdict == "holds_on_samples"


def test_banded_conclusion_routes_agree_generic():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: (x - 3 * y) / 5, space=space,
                            description="flagship formula, generic lane")
    pts = space.sampler(40, 3)
    for t in range(10):
        x, y, u, v = pts[4 * t: 4 * t + 4]
        coord = _banded_conclusion(op, x, y, u, v, True)
        via_pairs = cf.d2(cf.product_T(op, PairPoint(x, y)),
                          cf.product_T(op, PairPoint(u, v)), space)
        assert coord == via_pairs


def test_symmetric_generic_lane_agrees_with_kernel_verdicts(samet):
    # same formula without the linear tag goes through the generic banded
    # search and must reach the same verdicts
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: (x - 3 * y) / 5, space=space)
    rep = cf.check_symmetric_mk(op, [1.0], EIGHTH, samples=1500, seed=0)
    assert rep.verdict == "holds_on_samples"
    rep = cf.check_samet(op, [1.0], EIGHTH, samples=1500, seed=0)
    assert rep.verdict == "fails"
    assert rep.witness.x == rep.witness.u
    assert cf.reverify_witness(op, rep)["violated"]


# --- strict contraction ----------------------------------------------------

def test_strict_holds_on_flagship(samet):
    rep = cf.check_strict_contraction(samet.operator, samples=3000, seed=0)
    assert rep.verdict == "holds_on_samples"


def test_strict_fails_for_projection():
    # F(x, y) = x makes T the identity: distances never shrink
    prob = cf.builtin("linear(1,0,1)")
    rep = cf.check_strict_contraction(prob.operator, samples=2000, seed=0)
    assert rep.verdict == "fails"
    w = rep.witness
    assert w.measured["d2_after"] >= w.measured["d2_before"] * (1 - 1e-12)
    assert cf.reverify_witness(prob.operator, rep)["violated"]


def test_strict_spec_pair_arithmetic():
    f = lambda x, y: x
    Y, V = (1.0, 0.0), (0.0, 0.0)
    before = (abs(Y[0] - V[0]) + abs(Y[1] - V[1])) / 2
    after = (abs(f(*Y) - f(*V)) + abs(f(Y[1], Y[0]) - f(V[1], V[0]))) / 2
    assert before == 0.5 and after == 0.5  # not a strict decrease


def test_strict_constant_operator_holds():
    prob = cf.builtin("linear(0,0,1)")
    rep = cf.check_strict_contraction(prob.operator, samples=500, seed=0)
    assert rep.verdict == "holds_on_samples"


def test_strict_inconclusive_on_antichain():
    space = antichain_reals()
    op = cf.CoupledOperator(apply=lambda x, y: x / 2, space=space)
    rep = cf.check_strict_contraction(op, samples=300, seed=0)
    assert rep.verdict == "inconclusive"


# --- implication chain -----------------------------------------------------

CHAIN_TRIPLES = [
    (1.0, 1.0, 4.0),
    (2.0, 2.0, 5.0),
    (1.0, 2.0, 8.0),
    (3.0, 1.0, 10.0),
    (0.5, 2.0, 6.0),
    (0.0, 1.0, 3.0),
]


@pytest.mark.parametrize("a,b,c", CHAIN_TRIPLES)
def test_implication_chain_with_tight_constant(a, b, c):
    # the coordinatewise bound gives k = 2*max(a,b)/c < 1; the chain
    # banach -> samet -> symmetric must then hold with delta from k
    k = 2 * max(a, b) / c
    assert k < 1
    prob = cf.builtin(f"linear({a},{b},{c})")
    op = prob.operator
    delta = lambda e: cf.delta_from_k(k, e)
    assert cf.check_banach_k(op, k, samples=2000, seed=5).verdict == "holds_on_samples"
    assert cf.check_samet(op, [0.5, 2.0], delta, samples=2000, seed=5).verdict == "holds_on_samples"
    assert cf.check_symmetric_mk(op, [0.5, 2.0], delta, samples=2000, seed=5).verdict == "holds_on_samples"


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_chain_never_inverts(idx):
    # randomized triples: whenever banach holds at k, the banded checks with
    # delta from k may not fail
    import random as _r

    rng = _r.Random(idx)
    a = rng.uniform(0, 3)
    b = rng.uniform(0, 3)
    c = rng.uniform(0.5, 10)
    k = 2 * max(a, b) / c
    if not 0 < k < 1:
        return
    op = cf.make_linear(a, b, c).operator
    delta = lambda e: cf.delta_from_k(k, e)
    if cf.check_banach_k(op, k, samples=600, seed=idx).verdict == "holds_on_samples":
        assert cf.check_samet(op, [1.0], delta, samples=600, seed=idx).verdict != "fails"
        assert cf.check_symmetric_mk(op, [1.0], delta, samples=600, seed=idx).verdict != "fails"


# --- delta curve -----------------------------------------------------------

def test_delta_curve_flagship(samet):
    curve = cf.estimate_delta_curve(samet.operator, [1.0], samples=2000, seed=0)
    (eps, dmax), = curve
    assert eps == 1.0
    # analytic supremum is eps/4: (4/5)(eps + delta) < eps iff delta < eps/4
    assert 0.25 <= dmax <= 0.26


def test_delta_curve_scales_with_eps(samet):
    curve = cf.estimate_delta_curve(samet.operator, [0.1, 10.0], samples=1500, seed=0)
    for eps, dmax in curve:
        assert 0.25 * eps <= dmax <= 0.26 * eps


def test_delta_curve_zero_for_expansion():
    prob = cf.builtin("linear(2,0,1)")
    curve = cf.estimate_delta_curve(prob.operator, [1.0], samples=800, seed=0)
    assert curve == [(1.0, 0.0)]


def test_delta_curve_reaches_banach_bound():
    # constant 1/2 guarantees delta(eps) >= eps; the symmetric supremum for
    # this map is exactly eps
    prob = cf.builtin("linear(1,1,4)")
    curve = cf.estimate_delta_curve(prob.operator, [1.0], samples=2000, seed=0)
    (eps, dmax), = curve
    assert dmax >= 0.999 * cf.delta_from_k(0.5, eps)
    assert dmax <= 1.05


def test_delta_curve_caps_for_constant_map():
    prob = cf.builtin("linear(0,0,1)")
    curve = cf.estimate_delta_curve(prob.operator, [1.0], samples=400, seed=0)
    assert curve == [(1.0, 10.0)]
