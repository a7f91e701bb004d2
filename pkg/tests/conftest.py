from fractions import Fraction

import pytest

from rescrit.arrangement import from_rows
from rescrit.catalog import get


@pytest.fixture
def pencil3():
    return get("pencil-3").arrangement


@pytest.fixture
def x3():
    return get("x3").arrangement


@pytest.fixture
def braid3():
    return get("braid-3").arrangement


@pytest.fixture
def boolean2():
    return get("boolean-2").arrangement


@pytest.fixture
def affine_lines():
    # x = 0, x = 1, y = 0: a triangle-free generic-position start
    return from_rows(
        [[1, 0], [1, 0], [0, 1]],
        constants=[0, Fraction(-1), 0],
        variables=("x", "y"),
    )
