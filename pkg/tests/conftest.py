import pytest

from sqft.surface import SquareComplex
from sqft.sutures import CurveSystem


@pytest.fixture
def square():
    return SquareComplex.build(1)


@pytest.fixture
def hexagon():
    return SquareComplex.build(2, [((0, 0), (1, 1))])


@pytest.fixture
def annulus():
    return SquareComplex.build(2, [((0, 0), (1, 1)), ((0, 2), (1, 3))])


@pytest.fixture
def punctured_torus():
    return SquareComplex.build(
        2, [((0, 3), (1, 2)), ((0, 0), (1, 3)), ((0, 1), (1, 0))]
    )


@pytest.fixture
def disc12():
    # disc with 12 boundary vertices: central square 2, flaps 0 (top),
    # 1 (left), 3 (right), 4 (bottom)
    return SquareComplex.build(5, [
        ((0, 2), (2, 3)), ((2, 2), (3, 3)), ((2, 1), (4, 2)), ((2, 0), (1, 3)),
    ])


@pytest.fixture
def disc12_sutures():
    # the worked example's curves: element 0,1,1,1,0 across squares 0..4
    return CurveSystem.build(5, {
        0: [((0, 0), (3, 0)), ((1, 0), (2, 0))],
        1: [((3, 0), (2, 0)), ((0, 0), (1, 0))],
        2: [((3, 0), (2, 0)), ((1, 0), (0, 0))],
        3: [((0, 0), (1, 0)), ((3, 0), (2, 0))],
        4: [((1, 0), (2, 0)), ((3, 0), (0, 0))],
    })


@pytest.fixture
def hexagon_superposition():
    # the nontrivial non-basic configuration on the hexagon, crossing the
    # internal edge three times; element is the sum of the two e=0 words
    return CurveSystem.build(2, {
        0: [((0, 0), (3, 0)), ((0, 1), (2, 0)), ((0, 2), (1, 0))],
        1: [((0, 0), (1, 0)), ((1, 1), (3, 0)), ((1, 2), (2, 0))],
    })
