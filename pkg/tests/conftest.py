# -*- coding: utf-8 -*-

import random
from typing import Callable, IO
from unittest.mock import Mock

import pytest

from ladder.exactla import Field
from ladder.quiver import build_ladder, LadderQuiver, Quiver
from ladder.rep import Representation
from ladder.stability import StabilityParams


@pytest.fixture
def f2() -> Field:
    return Field.prime(2)


@pytest.fixture
def f3() -> Field:
    return Field.prime(3)


@pytest.fixture
def f5() -> Field:
    return Field.prime(5)


@pytest.fixture
def f7() -> Field:
    return Field.prime(7)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture
def output() -> IO:
    mock = Mock(name="MockIO")
    return mock


@pytest.fixture
def trivial2() -> LadderQuiver:
    """
    A_2 x (a single vertex v): (1,v) -> (2,v).
    """
    return build_ladder(Quiver.trivial(), 2)


@pytest.fixture
def trivial3() -> LadderQuiver:
    return build_ladder(Quiver.trivial(), 3)


@pytest.fixture
def a2xa2() -> LadderQuiver:
    """
    A_2 x A_2, vertices in the order (1,q1), (1,q2), (2,q1), (2,q2).
    """
    return build_ladder(Quiver.linear(2), 2)


@pytest.fixture
def hn_example(trivial2, f3) -> Representation:
    """
    (K, K^2) with the first unit vector as horizontal map.
    """
    return Representation.build(trivial2, f3, (1, 2), {"beta_1^v": [[1], [0]]})


@pytest.fixture
def hn_params(trivial2) -> StabilityParams:
    return StabilityParams.create(trivial2, (1, -1), d=(1, 2))


@pytest.fixture
def a2xa2_point(a2xa2) -> Callable[[Field, int], Representation]:
    """
    The filtered point of A_2 x A_2 with dims (1,1,1,1), identity horizontal
    maps and both vertical maps equal to a.
    """

    def point(field: Field, a: int) -> Representation:
        return Representation.build(
            a2xa2,
            field,
            (1, 1, 1, 1),
            {
                "alpha_1^a1": [[a]],
                "alpha_2^a1": [[a]],
                "beta_1^q1": [[1]],
                "beta_1^q2": [[1]],
            },
        )

    return point
