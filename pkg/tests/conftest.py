import json
import pathlib

import pytest

import coupledfp as cf
from coupledfp.spaces import INCOMPARABLE, SpaceModel

DATA = pathlib.Path(__file__).parent / "data"

FINITE_FIXTURES = [
    "one.json",
    "chain2_const.json",
    "chain3_monotone.json",
    "antichain3.json",
    "twocomp4.json",
    "diamond5.json",
]


def load_doc(name):
    return json.loads((DATA / name).read_text())


def fixture_path(name):
    return str(DATA / name)


@pytest.fixture
def samet():
    return cf.builtin("samet_example")


@pytest.fixture
def real_space():
    return cf.real_line()


def antichain_reals(radius=10.0):
    """A continuous space whose order relates nothing but equal points;
    forces the inconclusive paths of the sampled checkers."""
    base = cf.real_line(radius)

    def leq(x, y):
        return True if x == y else INCOMPARABLE

    return SpaceModel(
        distance=base.distance,
        leq=leq,
        sampler=base.sampler,
        description="reals with the trivial order",
        kind="custom",
        sample_radius=radius,
    )
