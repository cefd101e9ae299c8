"""Shared test fixtures for refgroup-core."""

import random
from collections.abc import Callable
from fractions import Fraction

import pytest

from refgroup_core.cyclotomic import CycEight
from refgroup_core.matrix import ExactMatrix


@pytest.fixture
def rng() -> random.Random:
    """A seeded generator, so failures reproduce."""
    return random.Random(20240611)


@pytest.fixture
def random_cyc(rng: random.Random) -> Callable[..., CycEight]:
    """Factory for random field elements with small coefficients."""

    def _make(*, nonzero: bool = False) -> CycEight:
        while True:
            value = CycEight.of(
                *(
                    Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3, 4)))
                    for _ in range(4)
                )
            )
            if not (nonzero and value.is_zero()):
                return value

    return _make


@pytest.fixture
def random_matrix(random_cyc: Callable[..., CycEight]) -> Callable[[int], ExactMatrix]:
    """Factory for random square matrices."""

    def _make(dim: int = 2) -> ExactMatrix:
        return ExactMatrix.from_rows(
            [[random_cyc() for _ in range(dim)] for _ in range(dim)]
        )

    return _make
