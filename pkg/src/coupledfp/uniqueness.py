"""Empirical uniqueness and diagonal probes.

Uniqueness of the coupled fixed point hinges on a comparability property of
the product space (every two pairs admit a pair comparable to both). Sampling
cannot prove that property, so these probes either refute uniqueness outright
(two converged runs ending at distinct points) or report consistency: all
endpoints within 2*tol of each other. The diagonal check covers the stronger
conclusion that both coordinates of the fixed point coincide, which holds
when the base space has enough upper/lower bounds or the start pair is
comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import InputError
from .operators import CoupledOperator
from .reports import jsonable
from .solver import TERM_CONVERGED, solve, residual
from .spaces import INCOMPARABLE, PairPoint, SpaceModel, d2, product_leq


@dataclass
class UniquenessReport:
    starts: list
    endpoints: list
    max_pairwise_d2: object
    comparability_rate: float
    diagonal_gaps: list
    failed: list = field(default_factory=list)  # (start, termination) for non-converged runs

    @property
    def all_converged(self):
        return not self.failed

    def to_jsonable(self):
        return {
            "starts": [z.to_jsonable() for z in self.starts],
            "endpoints": [z.to_jsonable() for z in self.endpoints],
            "max_pairwise_d2": jsonable(self.max_pairwise_d2),
            "comparability_rate": self.comparability_rate,
            "diagonal_gaps": jsonable(self.diagonal_gaps),
            "failed": [
                {"start": z.to_jsonable(), "termination": t} for z, t in self.failed
            ],
        }


@dataclass
class DiagonalCheck:
    gap: object
    within: bool
    diagonal_residual: object  # d(F(x,x), x) at the endpoint's first coordinate

    def to_jsonable(self):
        return {
            "gap": jsonable(self.gap),
            "within": self.within,
            "diagonal_residual": jsonable(self.diagonal_residual),
        }


def _comparable_to(Z, Y, space) -> bool:
    return product_leq(Z, Y, space) is not INCOMPARABLE


def _pair_of_pairs_ok(Y, V, space, bound_search) -> bool:
    if bound_search is not None:
        Z = bound_search(Y, V)
        return Z is not None and _comparable_to(Z, Y, space) and _comparable_to(Z, V, space)
    return _comparable_to(Y, V, space)


def probe_comparability(space: SpaceModel, samples: int = 1000, seed: int = 0,
                        bound_search: Optional[Callable] = None) -> float:
    """Fraction of distinct pair-of-pairs (Y, V) admitting a pair comparable
    to both. bound_search(Y, V) supplies the candidate (coordinatewise
    extremes on lattices); without it only direct comparability of Y and V
    counts.

    Y == V trials are vacuous and excluded from the denominator. Small finite
    spaces are enumerated exhaustively; otherwise the rate is estimated from
    seeded samples. A space with no distinct pairs reports 0.0.
    """
    if samples < 1:
        raise InputError("samples must be positive")
    fd = space.finite
    if fd is not None and len(fd.elements) ** 4 <= 500_000:
        els = fd.elements
        all_pairs = [PairPoint(a, b) for a in els for b in els]
        good = 0
        trials = 0
        for i in range(len(all_pairs)):
            for j in range(i + 1, len(all_pairs)):
                trials += 1
                if _pair_of_pairs_ok(all_pairs[i], all_pairs[j], space, bound_search):
                    good += 1
        return good / trials if trials else 0.0
    pool = space.sampler(4 * samples, seed ^ 0xC0BA)
    trials = 0
    good = 0
    for t in range(len(pool) // 4):
        Y = PairPoint(pool[4 * t], pool[4 * t + 1])
        V = PairPoint(pool[4 * t + 2], pool[4 * t + 3])
        if Y == V:
            continue
        trials += 1
        if _pair_of_pairs_ok(Y, V, space, bound_search):
            good += 1
    if trials == 0:
        return 0.0
    return good / trials


def multi_start_uniqueness(op: CoupledOperator, starts, tol: float = 1e-10,
                           max_iter: int = 10000,
                           bound_search: Optional[Callable] = None,
                           comparability_samples: int = 500,
                           seed: int = 0) -> UniquenessReport:
    """Solve from every start and compare the converged endpoints.

    max_pairwise_d2 <= 2*tol is consistent with a unique coupled fixed point;
    anything larger is a refutation certificate (two reproducible runs landed
    at distinct fixed points). Non-converged runs are excluded and flagged.
    """
    starts = list(starts)
    if not starts:
        raise InputError("at least one start is required")
    endpoints = []
    kept_starts = []
    failed = []
    for Z0 in starts:
        trace = solve(op, Z0, tol=tol, max_iter=max_iter, require_admissible=False)
        if trace.termination == TERM_CONVERGED:
            kept_starts.append(Z0)
            endpoints.append(trace.final)
        else:
            failed.append((Z0, trace.termination))
    space = op.space
    worst = 0
    for i in range(len(endpoints)):
        for j in range(i + 1, len(endpoints)):
            dd = d2(endpoints[i], endpoints[j], space)
            if dd > worst:
                worst = dd
    gaps = [space.distance(z.first, z.second) for z in endpoints]
    rate = probe_comparability(space, comparability_samples, seed, bound_search)
    return UniquenessReport(
        starts=kept_starts,
        endpoints=endpoints,
        max_pairwise_d2=worst,
        comparability_rate=rate,
        diagonal_gaps=gaps,
        failed=failed,
    )


def check_diagonal(op: CoupledOperator, endpoint: PairPoint, tol: float = 1e-10) -> DiagonalCheck:
    """Measure how far an (approximate) coupled fixed point sits from the
    diagonal, and the defect of its first coordinate as a plain fixed point:
    d(F(x, x), x). Requires the endpoint's residual to be within tol.
    """
    if residual(op, endpoint) > tol:
        raise InputError("endpoint residual exceeds tol; not an approximate fixed point")
    space = op.space
    gap = space.distance(endpoint.first, endpoint.second)
    x = endpoint.first
    diag_res = space.distance(op.apply(x, x), x)
    return DiagonalCheck(gap=gap, within=gap <= 2 * tol, diagonal_residual=diag_res)
