"""Typed constants and numeric limits for group construction.

Limits are module-level so that callers (and tests) can pass their own value
per call; nothing reads them implicitly after import.
"""

from enum import StrEnum

# Breadth-first enumeration stops once a closure passes this many elements.
ENUMERATION_CAP = 2_000_000

# Estimated bytes a matrix table may occupy before the permutation route is used.
TABLE_MEMORY_BUDGET = 512 * 1024 * 1024

# Full multiplication tables are only materialized up to this order.
CAYLEY_TABLE_LIMIT = 2048

# Generator-image counting
AUTOMORPHISM_SIZE_LIMIT = 256
AUTOMORPHISM_GENERATOR_LIMIT = 6
AUTOMORPHISM_GENERATOR_WARN = 4
AUTOMORPHISM_CHUNK_ROWS = 65_536
AUTOMORPHISM_LIST_LIMIT = 100_000

# minimal_generators is only attempted on groups up to this order.
MINIMAL_GENERATORS_LIMIT = 512

# Brute presentation-witness search
WITNESS_ORDER_LIMIT = 10_000
WITNESS_RANK_LIMIT = 3
WITNESS_SEARCH_BUDGET = 2_000_000

# Outer automorphism tables are built only up to this order.
OUTER_TABLE_LIMIT = 10_000

# Complement search in split_check, counted in candidate lifts tried.
SPLIT_SEARCH_BUDGET = 200_000

# Root closure gives up past this many roots.
ROOT_CLOSURE_CAP = 10_000

# BSGS-backed groups up to this order may be enumerated into tables.
PERMUTATION_TABLE_LIMIT = 60_000

# Exhaustive hyperplane scans are limited to geometries with this many points.
HYPERPLANE_POINT_LIMIT = 24

# Pauli operators are expanded into matrices only up to this many qubits.
PAULI_MATRIX_QUBIT_LIMIT = 4


class EnumerationMode(StrEnum):
    """How matrix elements are identified during enumeration."""

    FULL = "full"
    PROJECTIVE = "projective"


class GateName(StrEnum):
    """Names accepted by standard_gate."""

    I = "I"  # noqa: E741
    X = "X"
    Y = "Y"
    Z = "Z"
    H = "H"
    P = "P"
    T = "T"
    CZ = "CZ"
    R = "R"


class Backing(StrEnum):
    """How a group is held: fully enumerated, or as a permutation group."""

    TABLE = "table"
    PERMUTATION = "permutation"
