import random

import pytest

import coupledfp as cf
from coupledfp.spaces import PairPoint

from conftest import antichain_reals


def test_product_T_flagship_step(samet):
    out = cf.product_T(samet.operator, PairPoint(-3.0, 3.0))
    assert out == PairPoint(-2.4, 2.4)


def test_product_T_fixed_point(samet):
    assert cf.product_T(samet.operator, PairPoint(0.0, 0.0)) == PairPoint(0.0, 0.0)


def test_product_T_diagonal_preserved():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: (x + y) / 2, space=space,
                            description="midpoint")
    for c in (-4.0, 0.0, 7.5):
        assert cf.product_T(op, PairPoint(c, c)) == PairPoint(c, c)


def test_product_T_matches_closed_form(samet):
    rng = random.Random(11)
    op = samet.operator
    for _ in range(200):
        x, y = rng.uniform(-10, 10), rng.uniform(-10, 10)
        out = cf.product_T(op, PairPoint(x, y))
        assert out.first == (x - 3 * y) / 5
        assert out.second == (y - 3 * x) / 5


def test_mixed_monotone_flagship_holds(samet):
    rep = cf.check_mixed_monotone(samet.operator, samples=2000, seed=0)
    assert rep.verdict == "holds_on_samples"
    assert rep.comparable_pairs_used >= 10


def test_mixed_monotone_product_fails():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: x * y, space=space,
                            description="product (sign flips)")
    rep = cf.check_mixed_monotone(op, samples=2000, seed=0)
    assert rep.verdict == "fails"
    assert rep.witness is not None
    assert cf.reverify_witness(op, rep)["violated"]


def test_mixed_monotone_spec_quadruple_violates():
    # x1 = -1 <= x2 = 1 with y = -1: F(x1,y) = 1 > F(x2,y) = -1
    f = lambda x, y: x * y
    assert f(-1.0, -1.0) > f(1.0, -1.0)


def test_mixed_monotone_constant_holds():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: 3.0, space=space, description="constant")
    rep = cf.check_mixed_monotone(op, samples=500, seed=0)
    assert rep.verdict == "holds_on_samples"


def test_mixed_monotone_inconclusive_without_comparable_pairs():
    space = antichain_reals()
    op = cf.CoupledOperator(apply=lambda x, y: x, space=space)
    rep = cf.check_mixed_monotone(op, samples=500, seed=0)
    assert rep.verdict == "inconclusive"
    assert rep.comparable_pairs_used < 10


def test_audit_lipschitz_flagship(samet):
    ok, worst, witness = cf.audit_lipschitz(samet.operator, samples=1000, seed=0)
    assert ok
    assert worst <= 1e-12
    assert witness is None


def test_audit_lipschitz_understated_bound_fails():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: (x - 3 * y) / 5, space=space,
                            lipschitz_data=(0.1, 0.5))
    ok, worst, witness = cf.audit_lipschitz(op, samples=1000, seed=0)
    assert not ok
    assert worst > 0
    assert witness is not None


def test_audit_lipschitz_requires_data():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: x, space=space)
    with pytest.raises(cf.InputError):
        cf.audit_lipschitz(op)


@pytest.mark.parametrize("name", ["chain3_monotone.json", "twocomp4.json",
                                  "diamond5.json"])
def test_pair_map_monotone_when_mixed_monotone_exhaustive(name):
    # once the two clauses hold on all comparable pairs, the pair map
    # preserves the product order
    from conftest import fixture_path

    prob = cf.load_finite(fixture_path(name))
    op = prob.operator
    assert cf.check_mixed_monotone(op).verdict == "holds_on_samples"
    els = prob.space.finite.elements
    pairs = [PairPoint(a, b) for a in els for b in els]
    for V in pairs:
        for Y in pairs:
            if cf.product_leq(V, Y, prob.space) is True:
                TV = cf.product_T(op, V)
                TY = cf.product_T(op, Y)
                assert cf.product_leq(TV, TY, prob.space) is True
