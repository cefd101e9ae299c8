"""Exact square matrices over Q(zeta_8) and the named gates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import TYPE_CHECKING

from refgroup_core.constants import GateName
from refgroup_core.cyclotomic import (
    I,
    INV_SQRT2,
    ONE,
    ZERO,
    ZETA,
    CycEight,
    parse_cyc_eight,
    total,
)
from refgroup_core.exceptions import (
    DimensionMismatchError,
    ParseError,
    UnknownGateError,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from refgroup_core.cyclotomic import Scalar

type Rows = tuple[tuple[CycEight, ...], ...]


@dataclass(slots=True, frozen=True)
class ExactMatrix:
    """A dim x dim matrix with CycEight entries. Equality is entry-wise."""

    """Number of rows (and columns)"""
    dim: int

    """Row-major entries"""
    entries: Rows

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> ExactMatrix:
        """Builds a matrix from nested rows of field elements, ints or fractions."""
        dim = len(rows)
        if dim == 0 or any(len(row) != dim for row in rows):
            msg = "matrix must be square and non-empty"
            raise DimensionMismatchError(msg)
        return cls(
            dim=dim,
            entries=tuple(tuple(CycEight.coerce(v) for v in row) for row in rows),
        )

    @classmethod
    def identity(cls, dim: int) -> ExactMatrix:
        """The dim x dim identity."""
        return cls.diagonal([ONE] * dim)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> ExactMatrix:
        """Diagonal matrix with the given entries."""
        dim = len(values)
        return cls.from_rows(
            [[values[r] if r == c else ZERO for c in range(dim)] for r in range(dim)]
        )

    def _check_dim(self, other: ExactMatrix) -> None:
        if other.dim != self.dim:
            msg = f"dimension {self.dim} does not match {other.dim}"
            raise DimensionMismatchError(msg)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_dim(other)
        columns = tuple(zip(*other.entries, strict=True))
        return ExactMatrix(
            dim=self.dim,
            entries=tuple(
                tuple(
                    total(
                        a * b for a, b in zip(row, col, strict=True) if not a.is_zero()
                    )
                    for col in columns
                )
                for row in self.entries
            ),
        )

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_dim(other)
        return ExactMatrix(
            dim=self.dim,
            entries=tuple(
                tuple(a + b for a, b in zip(ra, rb, strict=True))
                for ra, rb in zip(self.entries, other.entries, strict=True)
            ),
        )

    def __neg__(self) -> ExactMatrix:
        return self.scale(-ONE)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, factor: Scalar) -> ExactMatrix:
        """Multiplies every entry by a scalar."""
        factor = CycEight.coerce(factor)
        return ExactMatrix(
            dim=self.dim,
            entries=tuple(tuple(factor * v for v in row) for row in self.entries),
        )

    def adjoint(self) -> ExactMatrix:
        """Conjugate transpose."""
        return ExactMatrix(
            dim=self.dim,
            entries=tuple(
                tuple(v.conj() for v in col) for col in zip(*self.entries, strict=True)
            ),
        )

    def is_identity(self) -> bool:
        """True when the matrix is exactly the identity."""
        return all(
            v == (ONE if r == c else ZERO)
            for r, row in enumerate(self.entries)
            for c, v in enumerate(row)
        )

    def is_unitary(self) -> bool:
        """True iff A times its adjoint is exactly the identity."""
        return (self @ self.adjoint()).is_identity()

    def power(self, exponent: int) -> ExactMatrix:
        """Non-negative integer power by repeated squaring."""
        if exponent < 0:
            msg = "negative powers need the adjoint of a unitary; use adjoint()"
            raise ValueError(msg)
        result = ExactMatrix.identity(self.dim)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def order(self, bound: int = 1024) -> int | None:
        """Multiplicative order, or None when it exceeds ``bound``."""
        power = self
        for k in range(1, bound + 1):
            if power.is_identity():
                return k
            power = power @ self
        return None

    def rank(self) -> int:
        """Rank by Gaussian elimination over Q(zeta_8)."""
        rows = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.dim):
            pivot = next(
                (r for r in range(rank, self.dim) if not rows[r][col].is_zero()), None
            )
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inverse = rows[rank][col].inv()
            rows[rank] = [v * inverse for v in rows[rank]]
            for r in range(self.dim):
                if r != rank and not rows[r][col].is_zero():
                    factor = rows[r][col]
                    rows[r] = [
                        a - factor * b
                        for a, b in zip(rows[r], rows[rank], strict=True)
                    ]
            rank += 1
        return rank

    def serialize(self) -> str:
        """``dim;e;e;...`` with row-major CycEight strings."""
        values = (v.serialize() for row in self.entries for v in row)
        return ";".join([str(self.dim), *values])

    def __str__(self) -> str:
        return "\n".join(" ".join(f"[{v}]" for v in row) for row in self.entries)


def parse_exact_matrix(text: str) -> ExactMatrix:
    """Strict inverse of ExactMatrix.serialize.

    Raises:
        ParseError: when the dimension header or the entry count is wrong.
    """
    head, _, rest = text.partition(";")
    if not head.isdigit() or head.startswith("0"):
        msg = f"malformed matrix dimension {head!r}"
        raise ParseError(msg)
    dim = int(head)
    values = rest.split(";") if rest else []
    if len(values) != dim * dim:
        msg = f"expected {dim * dim} entries, got {len(values)}"
        raise ParseError(msg)
    entries = [parse_cyc_eight(v) for v in values]
    return ExactMatrix(
        dim=dim,
        entries=tuple(tuple(entries[r * dim : (r + 1) * dim]) for r in range(dim)),
    )


def tensor_product(*matrices: ExactMatrix) -> ExactMatrix:
    """Kronecker product; block (i, j) of A (x) B is A[i][j] * B."""

    def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        dim = a.dim * b.dim
        return ExactMatrix(
            dim=dim,
            entries=tuple(
                tuple(
                    a.entries[r // b.dim][c // b.dim] * b.entries[r % b.dim][c % b.dim]
                    for c in range(dim)
                )
                for r in range(dim)
            ),
        )

    if not matrices:
        return ExactMatrix.identity(1)
    return reduce(kron, matrices)


def standard_gate(name: GateName | str, dim: int = 2) -> ExactMatrix:
    """Returns one of the named gates.

    ``dim`` only matters for the identity, which exists in every dimension.

    Raises:
        UnknownGateError: for names outside GateName.
    """
    try:
        gate = GateName(name)
    except ValueError:
        raise UnknownGateError(name) from None

    match gate:
        case GateName.I:
            return ExactMatrix.identity(dim)
        case GateName.X:
            return ExactMatrix.from_rows([[0, 1], [1, 0]])
        case GateName.Y:
            return ExactMatrix.from_rows([[ZERO, -I], [I, ZERO]])
        case GateName.Z:
            return ExactMatrix.diagonal([1, -1])
        case GateName.H:
            return ExactMatrix.from_rows([[1, 1], [1, -1]]).scale(INV_SQRT2)
        case GateName.P:
            return ExactMatrix.diagonal([ONE, I])
        case GateName.T:
            return (standard_gate(GateName.P) @ standard_gate(GateName.H)).scale(ZETA)
        case GateName.CZ:
            return ExactMatrix.diagonal([1, 1, 1, -1])
        case GateName.R:
            return ExactMatrix.from_rows(
                [[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]]
            ).scale(INV_SQRT2)
