"""Unit test conftest - fixtures specific to unit tests."""

from fractions import Fraction

import pytest

from geocrystal.cartan import AffineTypeId


@pytest.fixture
def a1_2() -> AffineTypeId:
    return AffineTypeId("a1", 2)


@pytest.fixture
def d1_4() -> AffineTypeId:
    return AffineTypeId("d1", 4)


@pytest.fixture
def half() -> Fraction:
    return Fraction(1, 2)
