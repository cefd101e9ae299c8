"""Imprimitive unitary reflection groups G(m, p, n) and two exceptional ones.

G(m, p, n) is the group of n x n monomial matrices whose nonzero entries
are m-th roots of unity with product an (m/p)-th root of unity, that is
A(m, p, n) semidirect S_n. Entries must live in Q(zeta_8), so m is 1, 2, 4
or 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from refgroup_core import dyadic
from refgroup_core.backends import MatrixBackend
from refgroup_core.constants import ENUMERATION_CAP, TABLE_MEMORY_BUDGET, Backing
from refgroup_core.cyclotomic import ONE, ZERO, zeta_power
from refgroup_core.exceptions import GroupTooLargeError
from refgroup_core.log import get_logger
from refgroup_core.matrix import ExactMatrix
from refgroup_core.permutation import Permutation, derived_subgroup, schreier_sims
from refgroup_core.table import enumerate_group
from refgroup_algebra.exceptions import InvalidSpecError, UnsupportedRootOfUnityError
from refgroup_algebra.presentation import Presentation

if TYPE_CHECKING:
    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable

logger = get_logger(__name__)

_SUPPORTED_M = (1, 2, 4, 8)
_MAX_DIMENSION = 5

# Integer numerators over Z[zeta_8] take four int64 per entry; keys copy them.
_BYTES_PER_ENTRY = 4 * 8 * 2

# column -> row map and the zeta_m exponent of every column's entry
type Monomial = tuple[tuple[int, ...], tuple[int, ...]]

_SHEPHARD_TODD = {
    9: ("x1^2=x2^2=(x2^-1x1)^3(x2x1)^3=1", 192),
    31: (
        "x1^2=x2^2=x3^2=x4^2=x5^2=(x1x4)^2=(x2x4)^2=(x2x5)^2="
        "(x2x1)^3=(x3x2)^3=(x4x3)^3=(x5x4)^3=x5x1x3x1x5x3=x1x5x3x1x3x5=1",
        46080,
    ),
}


@dataclass(slots=True, frozen=True, kw_only=True)
class ImprimitiveSpec:
    """Parameters of G(m, p, n)."""

    """Order of the roots of unity"""
    m: int

    """Divisor of m; products of entries are (m/p)-th roots of unity"""
    p: int

    """Matrix size"""
    n: int

    def __post_init__(self) -> None:
        if min(self.m, self.p, self.n) < 1 or self.m % self.p:
            msg = f"G({self.m},{self.p},{self.n}) needs positive m, p, n with p | m"
            raise InvalidSpecError(msg)

    def __str__(self) -> str:
        return f"G({self.m},{self.p},{self.n})"

    @property
    def order(self) -> int:
        """m^n n! / p."""
        return self.m**self.n * math.factorial(self.n) // self.p


def imprimitive_order(spec: ImprimitiveSpec) -> int:
    """|G(m, p, n)| from the formula."""
    return spec.order


def _check_realizable(spec: ImprimitiveSpec) -> None:
    if spec.m not in _SUPPORTED_M:
        msg = f"{spec} needs {spec.m}-th roots of unity, outside Q(zeta_8)"
        raise UnsupportedRootOfUnityError(msg)
    if spec.n > _MAX_DIMENSION:
        msg = f"{spec} is larger than {_MAX_DIMENSION} x {_MAX_DIMENSION}"
        raise InvalidSpecError(msg)


def _monomial_generators(spec: ImprimitiveSpec) -> list[Monomial]:
    """Adjacent transpositions, diag(z, z^-1, 1, ...) and diag(z^p, 1, ...)."""
    n, m = spec.n, spec.m
    identity = tuple(range(n))
    none = (0,) * n
    gens: list[Monomial] = []
    for k in range(n - 1):
        swap = list(identity)
        swap[k], swap[k + 1] = swap[k + 1], swap[k]
        gens.append((tuple(swap), none))
    if m > 1 and n > 1:
        gens.append((identity, (1, m - 1) + (0,) * (n - 2)))
    if spec.p < m:
        gens.append((identity, (spec.p,) + (0,) * (n - 1)))
    return gens


def _to_matrix(monomial: Monomial, spec: ImprimitiveSpec) -> ExactMatrix:
    rows, exponents = monomial
    step = 8 // spec.m
    entries = [[ZERO] * spec.n for _ in range(spec.n)]
    for column, (row, e) in enumerate(zip(rows, exponents, strict=True)):
        entries[row][column] = zeta_power(step * e) if e else ONE
    return ExactMatrix.from_rows(entries)


def imprimitive_generators(spec: ImprimitiveSpec) -> list[ExactMatrix]:
    """Generators following the A(m, p, n) semidirect S_n factorization.

    Raises:
        UnsupportedRootOfUnityError: for m outside {1, 2, 4, 8}.
        InvalidSpecError: for n above five.
    """
    _check_realizable(spec)
    return [_to_matrix(g, spec) for g in _monomial_generators(spec)]


def estimated_table_bytes(spec: ImprimitiveSpec) -> int:
    """Rough memory a full matrix table of G(m, p, n) would take."""
    return spec.order * (spec.n * spec.n * _BYTES_PER_ENTRY + 64)


def imprimitive_table(
    spec: ImprimitiveSpec,
    *,
    cap: int = ENUMERATION_CAP,
    memory_budget: int = TABLE_MEMORY_BUDGET,
) -> FiniteGroupTable[dyadic.DyadicStack]:
    """Enumerates G(m, p, n) as a matrix table.

    Raises:
        GroupTooLargeError: if the table would exceed ``memory_budget``.
        CapExceededError: if the closure passes ``cap``.
    """
    gens = imprimitive_generators(spec)
    if estimated_table_bytes(spec) > memory_budget:
        msg = f"{spec} would need about {estimated_table_bytes(spec)} bytes"
        raise GroupTooLargeError(msg)
    backend = MatrixBackend(dim=spec.n)
    if not gens:
        gens = [ExactMatrix.identity(spec.n)]
    return enumerate_group(backend, dyadic.from_exact(gens), name=str(spec), cap=cap)


def imprimitive_permutation_realization(spec: ImprimitiveSpec) -> BaseStrongGenSet:
    """The faithful action on the m n axis classes zeta_m^a e_i, point i m + a."""
    _check_realizable(spec)
    m, n = spec.m, spec.n
    perms = []
    for rows, exponents in _monomial_generators(spec):
        images = [0] * (m * n)
        for i in range(n):
            for a in range(m):
                images[i * m + a] = rows[i] * m + (a + exponents[i]) % m
        perms.append(Permutation(images=tuple(images)))
    return schreier_sims(perms, degree=m * n)


def realized_order(
    spec: ImprimitiveSpec, *, memory_budget: int = TABLE_MEMORY_BUDGET
) -> tuple[int, Backing]:
    """|G(m, p, n)| by enumeration, through the table when it fits in memory."""
    if estimated_table_bytes(spec) <= memory_budget:
        order, backing = imprimitive_table(spec).order, Backing.TABLE
    else:
        order = imprimitive_permutation_realization(spec).order()
        backing = Backing.PERMUTATION
    logger.info(
        "imprimitive group realized", spec=str(spec), order=order, route=backing
    )
    return order, backing


def imprimitive_derived_order(spec: ImprimitiveSpec) -> int:
    """|G(m, p, n)'| through the permutation realization."""
    return derived_subgroup(imprimitive_permutation_realization(spec)).order()


def is_reflection(matrix: ExactMatrix) -> bool:
    """rank(A - I) = 1."""
    return (matrix - ExactMatrix.identity(matrix.dim)).rank() == 1


def shephard_todd_presentation(number: int) -> tuple[Presentation, int]:
    """The printed presentation of group No 9 or No 31 and the group's order.

    Raises:
        InvalidSpecError: for other numbers.
    """
    if number not in _SHEPHARD_TODD:
        msg = f"only Shephard-Todd groups 9 and 31 are recorded, not {number}"
        raise InvalidSpecError(msg)
    text, order = _SHEPHARD_TODD[number]
    return Presentation.from_text(f"ST{number}", text), order
