import pytest

import coupledfp as cf
from coupledfp.spaces import PairPoint

from conftest import fixture_path, load_doc


def test_probe_real_lattice_rate_one(real_space):
    from coupledfp.problems import _real_lattice_bound

    rate = cf.probe_comparability(real_space, samples=400, seed=0,
                                  bound_search=_real_lattice_bound)
    assert rate == 1.0


def test_probe_antichain_rate_zero():
    doc = load_doc("antichain3.json")
    space = cf.finite_space(doc["elements"], doc["distance"], doc["leq"])
    assert cf.probe_comparability(space, samples=100, seed=0) == 0.0


def test_probe_finite_lattice_matches_enumeration():
    doc = load_doc("diamond5.json")
    space = cf.finite_space(doc["elements"], doc["distance"], doc["leq"])
    els = doc["elements"]
    leq = doc["leq"]
    idx = {e: i for i, e in enumerate(els)}

    def comparable(a, b):
        return bool(leq[idx[a]][idx[b]] or leq[idx[b]][idx[a]])

    def pair_comp(Y, V):
        lower = leq[idx[Y[0]]][idx[V[0]]] and leq[idx[V[1]]][idx[Y[1]]]
        upper = leq[idx[V[0]]][idx[Y[0]]] and leq[idx[Y[1]]][idx[V[1]]]
        return bool(lower or upper)

    # independent enumeration over all distinct pair-of-pairs
    pairs = [(a, b) for a in els for b in els]
    good = total = 0
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            total += 1
            if pair_comp(pairs[i], pairs[j]):
                good += 1
    expected = good / total
    assert cf.probe_comparability(space, samples=10, seed=0) == expected

    # with the join/meet bound every pair-of-pairs is covered
    def bound(Y, V):
        return PairPoint("top", "bot")

    assert cf.probe_comparability(space, samples=10, seed=0, bound_search=bound) == 1.0


def test_multi_start_flagship_endpoints_coincide(samet):
    starts = [PairPoint(-3.0, 3.0), PairPoint(-1.0, 1.0), PairPoint(-5.0, 4.0)]
    for z in starts:
        assert cf.check_start(samet.operator, z).admissible
    rep = cf.multi_start_uniqueness(samet.operator, starts, tol=1e-10,
                                    bound_search=samet.bound_search)
    assert rep.all_converged
    assert len(rep.endpoints) == 3
    assert rep.max_pairwise_d2 <= 2e-10
    assert rep.comparability_rate == 1.0
    assert all(g <= 2e-10 for g in rep.diagonal_gaps)


def test_multi_start_single_start(samet):
    rep = cf.multi_start_uniqueness(samet.operator, [PairPoint(-3.0, 3.0)], tol=1e-10)
    assert rep.max_pairwise_d2 == 0


def test_multi_start_exposes_two_fixed_points():
    prob = cf.load_finite(fixture_path("twocomp4.json"))
    starts = [PairPoint("a1", "a0"), PairPoint("b1", "b0")]
    rep = cf.multi_start_uniqueness(prob.operator, starts, tol=1e-10)
    assert rep.all_converged
    assert rep.endpoints == [PairPoint("a0", "a0"), PairPoint("b0", "b0")]
    assert rep.max_pairwise_d2 == 2  # distinct coupled fixed points
    assert rep.comparability_rate < 1.0


def test_multi_start_flags_nonconverged():
    space = cf.real_line()
    op = cf.CoupledOperator(apply=lambda x, y: x + 1.0, space=space)
    rep = cf.multi_start_uniqueness(op, [PairPoint(0.0, 0.0)], tol=1e-10,
                                    max_iter=200)
    assert not rep.all_converged
    assert rep.endpoints == []
    assert rep.failed[0][1] == "stalled"


def test_multi_start_requires_starts(samet):
    with pytest.raises(cf.InputError):
        cf.multi_start_uniqueness(samet.operator, [], tol=1e-10)


def test_check_diagonal_flagship(samet):
    tr = cf.solve(samet.operator, PairPoint(-3.0, 3.0), tol=1e-10)
    chk = cf.check_diagonal(samet.operator, tr.final, tol=1e-10)
    assert chk.within
    assert chk.gap <= 2e-10
    assert chk.diagonal_residual <= 1e-10


def test_check_diagonal_exact_fixed_point(samet):
    chk = cf.check_diagonal(samet.operator, PairPoint(0.0, 0.0), tol=1e-10)
    assert chk.within and chk.gap == 0.0 and chk.diagonal_residual == 0.0


def test_check_diagonal_comparable_start_instance():
    # start coordinates are comparable (a total order), so the limit sits on
    # the diagonal
    prob = cf.builtin("linear(1,1,4)")
    tr = cf.solve(prob.operator, PairPoint(-2.0, 2.0), tol=1e-10)
    chk = cf.check_diagonal(prob.operator, tr.final, tol=1e-10)
    assert chk.within


def test_check_diagonal_rejects_bad_endpoint(samet):
    with pytest.raises(cf.InputError):
        cf.check_diagonal(samet.operator, PairPoint(5.0, 5.0), tol=1e-10)


def test_diagonal_gap_zero_for_diagonal_map():
    prob = cf.builtin("linear(1,0,1)")  # F(x, y) = x fixes every diagonal pair
    chk = cf.check_diagonal(prob.operator, PairPoint(2.0, 2.0), tol=1e-10)
    assert chk.within and chk.gap == 0.0


@pytest.mark.parametrize("name", ["samet_example", "linear(1,1,4)", "linear(2,1,8)"])
def test_diagonal_residual_bounded_by_lipschitz_slack(name):
    # d(F(x,x), x) <= lb * gap + 2 * residual for declared coordinatewise
    # Lipschitz data: F(x,x) differs from F(x,y) by at most lb*d(x,y), and
    # d(F(x,y), x) is at most twice the product-space residual
    prob = cf.builtin(name)
    op = prob.operator
    la, lb = op.lipschitz_data
    tr = cf.solve(op, prob.default_start, tol=1e-10)
    chk = cf.check_diagonal(op, tr.final, tol=1e-10)
    bound = lb * chk.gap + 2 * cf.residual(op, tr.final)
    assert chk.diagonal_residual <= bound + 1e-15
