"""Stacks of matrices over Z[zeta_8][1/2] as integer numpy arrays.

A stack holds N matrices of the same dimension d. Matrix k is
``numerators[k] / 2**exponents[k]`` where ``numerators`` has shape
(N, d, d, 4) and the last axis holds the power-basis coefficients. Stacks are
always normalized: the exponent is as small as the numerators allow, which
makes the byte string of (exponent, numerators) a canonical key.

Every generator used by the group constructors (Paulis, H, P, T, CZ, R and
monomial matrices with 8th roots of unity) lives in this ring, so whole
breadth-first layers can be multiplied with a handful of batched matmuls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from refgroup_core.cyclotomic import CycEight
from refgroup_core.exceptions import DimensionMismatchError, NonDyadicError
from refgroup_core.matrix import ExactMatrix

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from refgroup_core.typedefs import IdArray


def _zeta_matrix(j: int) -> npt.NDArray[np.int64]:
    """Right-multiplying a coefficient vector by this multiplies by zeta^j."""
    out = np.zeros((4, 4), dtype=np.int64)
    for s in range(4):
        t = (s + j) % 8
        out[s, t % 4] = 1 if t < 4 else -1  # noqa: PLR2004
    return out


_ZETA_MATRICES = np.stack([_zeta_matrix(j) for j in range(8)])

# conj(zeta^s) = zeta^-s: 1 -> 1, zeta -> -zeta^3, zeta^2 -> -zeta^2, zeta^3 -> -zeta
_CONJ = np.array(
    [[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0]],
    dtype=np.int64,
)


@dataclass(slots=True, frozen=True)
class DyadicStack:
    """N normalized matrices over Z[zeta_8][1/2]."""

    """Integer coefficients, shape (N, d, d, 4)"""
    numerators: npt.NDArray[np.int64]

    """Power of two dividing each matrix, shape (N,)"""
    exponents: npt.NDArray[np.int64]

    @property
    def dim(self) -> int:
        """Matrix dimension d."""
        return int(self.numerators.shape[1])

    def __len__(self) -> int:
        return int(self.numerators.shape[0])


def normalize(
    numerators: npt.NDArray[np.int64], exponents: npt.NDArray[np.int64]
) -> DyadicStack:
    """Halves numerators while every entry is even and the exponent is positive."""
    num = np.array(numerators, dtype=np.int64, copy=True)
    exp = np.array(exponents, dtype=np.int64, copy=True)
    while True:
        reducible = (exp > 0) & np.all(num % 2 == 0, axis=(1, 2, 3))
        if not reducible.any():
            return DyadicStack(numerators=num, exponents=exp)
        num[reducible] //= 2
        exp[reducible] -= 1


def identity_stack(dim: int) -> DyadicStack:
    """A stack holding only the dim x dim identity."""
    num = np.zeros((1, dim, dim, 4), dtype=np.int64)
    num[0, np.arange(dim), np.arange(dim), 0] = 1
    return DyadicStack(numerators=num, exponents=np.zeros(1, dtype=np.int64))


def multiply(a: DyadicStack, b: DyadicStack) -> DyadicStack:
    """Pairwise products a[k] @ b[k]; a stack of length one broadcasts."""
    if a.dim != b.dim:
        msg = f"dimension {a.dim} does not match {b.dim}"
        raise DimensionMismatchError(msg)
    n = max(len(a), len(b))
    out = np.zeros((n, a.dim, a.dim, 4), dtype=np.int64)
    for p in range(4):
        left = a.numerators[..., p]
        for q in range(4):
            product = left @ b.numerators[..., q]
            # zeta^4 = -1
            if p + q < 4:  # noqa: PLR2004
                out[..., p + q] += product
            else:
                out[..., p + q - 4] -= product
    return normalize(out, np.broadcast_to(a.exponents + b.exponents, (n,)))


def adjoint(a: DyadicStack) -> DyadicStack:
    """Conjugate transpose of every matrix; the inverse for unitary stacks."""
    conj = a.numerators @ _CONJ
    return DyadicStack(
        numerators=np.ascontiguousarray(np.swapaxes(conj, 1, 2)),
        exponents=a.exponents.copy(),
    )


def scale_by_zeta(a: DyadicStack, powers: npt.NDArray[np.int64]) -> DyadicStack:
    """Multiplies matrix k by zeta**powers[k]."""
    num = a.numerators.copy()
    powers = np.broadcast_to(np.asarray(powers, dtype=np.int64) % 8, (len(a),))
    for j in range(1, 8):
        mask = powers == j
        if mask.any():
            num[mask] = num[mask] @ _ZETA_MATRICES[j]
    return DyadicStack(numerators=num, exponents=a.exponents.copy())


def canonical_phase(a: DyadicStack) -> DyadicStack:
    """Picks the canonical representative of each scalar class under <zeta>.

    Among the eight multiples by zeta^j, the chosen one has the
    lexicographically greatest row-major coefficient tuple. Leading zero
    entries are shared by all eight, so the first nonzero entry decides.
    """
    n = len(a)
    flat = a.numerators.reshape(n, -1, 4)
    first = np.argmax(flat.any(axis=2), axis=1)
    lead = flat[np.arange(n), first]
    candidates = np.einsum("ns,jsr->njr", lead, _ZETA_MATRICES)
    alive = np.ones((n, 8), dtype=bool)
    floor = np.iinfo(np.int64).min
    for t in range(4):
        column = np.where(alive, candidates[:, :, t], floor)
        alive &= column == column.max(axis=1, keepdims=True)
    return scale_by_zeta(a, np.argmax(alive, axis=1))


def keys(a: DyadicStack) -> list[bytes]:
    """Canonical byte keys of (exponent, numerators), one per matrix."""
    n = len(a)
    packed = np.ascontiguousarray(
        np.concatenate([a.exponents[:, None], a.numerators.reshape(n, -1)], axis=1)
    )
    return [row.tobytes() for row in packed]


def take(a: DyadicStack, ids: IdArray) -> DyadicStack:
    """Sub-stack at the given positions."""
    return DyadicStack(numerators=a.numerators[ids], exponents=a.exponents[ids])


def concat(parts: Sequence[DyadicStack]) -> DyadicStack:
    """Stacks several stacks of the same dimension."""
    return DyadicStack(
        numerators=np.concatenate([p.numerators for p in parts]),
        exponents=np.concatenate([p.exponents for p in parts]),
    )


def _two_adic_exponent(value: Fraction) -> int:
    q = value.denominator
    if q & (q - 1):
        msg = f"denominator {q} is not a power of two"
        raise NonDyadicError(msg)
    return q.bit_length() - 1


def from_exact(matrices: Sequence[ExactMatrix]) -> DyadicStack:
    """Converts exact matrices into a normalized stack.

    Raises:
        NonDyadicError: if some coefficient has an odd prime in its denominator.
        DimensionMismatchError: if the matrices differ in dimension.
    """
    if not matrices:
        msg = "cannot build a stack from no matrices"
        raise DimensionMismatchError(msg)
    dim = matrices[0].dim
    num = np.zeros((len(matrices), dim, dim, 4), dtype=np.int64)
    exp = np.zeros(len(matrices), dtype=np.int64)
    for k, m in enumerate(matrices):
        if m.dim != dim:
            msg = f"dimension {m.dim} does not match {dim}"
            raise DimensionMismatchError(msg)
        coeffs = [c for row in m.entries for v in row for c in v.coeffs]
        e = max(_two_adic_exponent(c) for c in coeffs)
        exp[k] = e
        num[k] = np.array(
            [int(c * (1 << e)) for c in coeffs], dtype=np.int64
        ).reshape(dim, dim, 4)
    return normalize(num, exp)


def to_exact(a: DyadicStack, position: int) -> ExactMatrix:
    """Converts one matrix of the stack back to an ExactMatrix."""
    denominator = 1 << int(a.exponents[position])
    num = a.numerators[position]
    return ExactMatrix(
        dim=a.dim,
        entries=tuple(
            tuple(
                CycEight.of(*(Fraction(int(c), denominator) for c in num[r, col]))
                for col in range(a.dim)
            )
            for r in range(a.dim)
        ),
    )
