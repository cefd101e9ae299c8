"""Shared test fixtures for refgroup-algebra.

Enumerating the larger groups takes seconds, so they are built once per
session and shared read-only.
"""

import pytest

from refgroup_core.pauli import pauli_group_table
from refgroup_algebra.geometry import two_qubit_geometry
from refgroup_algebra.quantum import GroupHandle, clifford_group


@pytest.fixture(scope="session")
def pauli_one():
    return pauli_group_table(1)


@pytest.fixture(scope="session")
def pauli_two():
    return pauli_group_table(2)


@pytest.fixture(scope="session")
def clifford_one() -> GroupHandle:
    return clifford_group(1)


@pytest.fixture(scope="session")
def clifford_two() -> GroupHandle:
    return clifford_group(2)


@pytest.fixture(scope="session")
def geometry():
    return two_qubit_geometry()
