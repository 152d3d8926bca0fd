"""Root conftest - shared fixtures available to all tests."""

import random

import pytest

from geocrystal.config import SuiteConfig, make_config


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator; every test sees the same draws."""
    return random.Random(20240607)


@pytest.fixture
def small_config():
    """Factory for quick suite configs (few samples, fixed seed)."""

    def make(type: str, rank: int, model: str = "V", samples: int = 8, **extra) -> SuiteConfig:
        return make_config(type=type, rank=rank, model=model, samples=samples, seed=3, **extra)

    return make
