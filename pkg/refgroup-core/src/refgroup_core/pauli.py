"""The n-qubit Pauli group in symplectic form, and Clifford conjugation on it.

An element is i^phase X^x Z^z with x and z bit vectors; qubit 0 is the most
significant bit of the integer forms and the first tensor factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from refgroup_core import dyadic
from refgroup_core.backends import ElementBackend
from refgroup_core.constants import PAULI_MATRIX_QUBIT_LIMIT
from refgroup_core.cyclotomic import ZERO, zeta_power
from refgroup_core.exceptions import (
    ClosureViolationError,
    DimensionTooLargeError,
    NonDyadicError,
    NotCliffordError,
    NotPauliError,
    ParseError,
)
from refgroup_core.log import get_logger
from refgroup_core.matrix import ExactMatrix
from refgroup_core.permutation import Permutation, schreier_sims
from refgroup_core.table import enumerate_group

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from refgroup_core.cyclotomic import CycEight
    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable

logger = get_logger(__name__)

type Bits = tuple[int, ...]

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_SLOTS = {letter: slot for slot, letter in _LETTERS.items()}
_TEXT = re.compile(r"i\^([0-3]) ([IXYZ]+)")


def _to_int(bits: Bits) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | b
    return value


def _to_bits(value: int, n: int) -> Bits:
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def _dot(a: Bits, b: Bits) -> int:
    return sum(p & q for p, q in zip(a, b, strict=True))


@dataclass(slots=True, frozen=True, order=True)
class PauliElement:
    """i^phase X^x Z^z on n qubits."""

    """Exponent of i, in 0..3"""
    phase: int

    """X part, one bit per qubit"""
    x: Bits

    """Z part, one bit per qubit"""
    z: Bits

    def __post_init__(self) -> None:
        if len(self.x) != len(self.z):
            msg = f"x has {len(self.x)} bits but z has {len(self.z)}"
            raise ValueError(msg)
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliElement:
        """The identity on n qubits."""
        return cls(phase=0, x=(0,) * n, z=(0,) * n)

    @classmethod
    def from_ints(cls, phase: int, x: int, z: int, n: int) -> PauliElement:
        """Builds an element from integer bit masks, qubit 0 most significant."""
        return cls(phase=phase, x=_to_bits(x, n), z=_to_bits(z, n))

    @classmethod
    def hermitian(cls, x: int, z: int, n: int) -> PauliElement:
        """i^(x.z) X^x Z^z, the Hermitian member of the class of (x, z)."""
        return cls.from_ints((x & z).bit_count(), x, z, n)

    @property
    def n(self) -> int:
        """Number of qubits."""
        return len(self.x)

    @property
    def x_int(self) -> int:
        """X part as an integer."""
        return _to_int(self.x)

    @property
    def z_int(self) -> int:
        """Z part as an integer."""
        return _to_int(self.z)

    @property
    def symplectic_index(self) -> int:
        """(x << n) | z; zero exactly for scalar elements."""
        return (self.x_int << self.n) | self.z_int

    def __mul__(self, other: PauliElement) -> PauliElement:
        return PauliElement(
            phase=self.phase + other.phase + 2 * _dot(self.z, other.x),
            x=tuple(a ^ b for a, b in zip(self.x, other.x, strict=True)),
            z=tuple(a ^ b for a, b in zip(self.z, other.z, strict=True)),
        )

    def inverse(self) -> PauliElement:
        """Z^z X^x i^-phase, rewritten in normal form."""
        return PauliElement(
            phase=-self.phase + 2 * _dot(self.x, self.z), x=self.x, z=self.z
        )

    def commutes_with(self, other: PauliElement) -> bool:
        """The symplectic form x.z' + z.x' vanishes mod 2."""
        return (_dot(self.x, other.z) + _dot(self.z, other.x)) % 2 == 0

    def is_hermitian(self) -> bool:
        """True when the element squares to the identity with no sign."""
        return (self.phase - _dot(self.x, self.z)) % 2 == 0

    def hermitian_representative(self) -> PauliElement:
        """Same symplectic class, phase i^(x.z)."""
        return PauliElement(phase=_dot(self.x, self.z), x=self.x, z=self.z)

    def is_scalar(self) -> bool:
        """True for i^phase times the identity."""
        return not any(self.x) and not any(self.z)

    def __str__(self) -> str:
        letters = "".join(_LETTERS[a, b] for a, b in zip(self.x, self.z, strict=True))
        return f"i^{self.phase} {letters}"


def parse_pauli(text: str) -> PauliElement:
    """Strict inverse of ``str(PauliElement)``, e.g. ``"i^1 XZ"``.

    The letter Y stands for the slot x = z = 1 and does not add a phase.

    Raises:
        ParseError: if the text is not of the form ``i^d`` followed by letters.
    """
    match = _TEXT.fullmatch(text)
    if match is None:
        msg = f"malformed Pauli word {text!r}"
        raise ParseError(msg)
    slots = [_SLOTS[letter] for letter in match.group(2)]
    return PauliElement(
        phase=int(match.group(1)),
        x=tuple(s[0] for s in slots),
        z=tuple(s[1] for s in slots),
    )


def all_classes(n: int) -> list[PauliElement]:
    """Hermitian representatives of the 4^n - 1 non-identity classes."""
    return [
        PauliElement.hermitian(v >> n, v & ((1 << n) - 1), n) for v in range(1, 4**n)
    ]


def pauli_to_matrix(p: PauliElement) -> ExactMatrix:
    """Entry (c ^ x, c) is i^phase (-1)^(z.c); everything else is zero.

    Raises:
        DimensionTooLargeError: above four qubits.
    """
    if p.n > PAULI_MATRIX_QUBIT_LIMIT:
        msg = f"{p.n} qubits is above the matrix limit of {PAULI_MATRIX_QUBIT_LIMIT}"
        raise DimensionTooLargeError(msg)
    dim = 1 << p.n
    x, z = p.x_int, p.z_int
    rows = [[ZERO] * dim for _ in range(dim)]
    for c in range(dim):
        rows[c ^ x][c] = zeta_power(2 * p.phase + 4 * (z & c).bit_count())
    return ExactMatrix.from_rows(rows)


def _phase_of(value: CycEight) -> int | None:
    for phase in range(4):
        if value == zeta_power(2 * phase):
            return phase
    return None


def matrix_to_pauli(matrix: ExactMatrix) -> PauliElement:
    """Decodes i^phase X^x Z^z from its matrix.

    x comes from the nonzero row of column 0, the phase from its value and
    each z bit from the column of the corresponding basis state. The full
    matrix is then compared against the decoded element.

    Raises:
        NotPauliError: if the matrix is not of that form.
    """
    dim = matrix.dim
    n = dim.bit_length() - 1
    if dim != 1 << n:
        msg = f"dimension {dim} is not a power of two"
        raise NotPauliError(msg)
    column = [matrix.entries[r][0] for r in range(dim)]
    nonzero = [r for r, v in enumerate(column) if not v.is_zero()]
    phase = _phase_of(column[nonzero[0]]) if len(nonzero) == 1 else None
    if phase is None:
        msg = "column 0 does not hold a single power of i"
        raise NotPauliError(msg)
    x = nonzero[0]
    z = 0
    lead = zeta_power(2 * phase)
    for k in range(n):
        basis = 1 << (n - 1 - k)
        if matrix.entries[basis ^ x][basis] == -lead:
            z |= basis
    candidate = PauliElement.from_ints(phase, x, z, n)
    if pauli_to_matrix(candidate) != matrix:
        msg = f"matrix differs from its closest Pauli candidate {candidate}"
        raise NotPauliError(msg)
    return candidate


def _conjugates(
    unitary: ExactMatrix, paulis: Sequence[ExactMatrix]
) -> list[ExactMatrix]:
    """U g U^dagger for every g, on the dyadic fast path when possible."""
    try:
        stack = dyadic.from_exact(paulis)
        u = dyadic.from_exact([unitary])
    except NonDyadicError:
        adjoint = unitary.adjoint()
        return [unitary @ g @ adjoint for g in paulis]
    conjugated = dyadic.multiply(dyadic.multiply(u, stack), dyadic.adjoint(u))
    return [dyadic.to_exact(conjugated, k) for k in range(len(conjugated))]


def clifford_action_permutation(
    unitary: ExactMatrix, n: int, *, signed: bool = False
) -> Permutation:
    """The permutation that conjugation by ``unitary`` induces on Pauli classes.

    Unsigned points are the 4^n - 1 symplectic classes, point v - 1 for
    v = (x << n) | z. Signed points are the Hermitian operators +h and -h,
    point 2 (v - 1) + s with s = 1 for the negative one. Permutations compose
    as conjugations: the permutation of U V is that of V followed by that of U.

    Raises:
        NotCliffordError: if some conjugate is not a Pauli operator.
    """
    classes = all_classes(n)
    conjugates = _conjugates(unitary, [pauli_to_matrix(h) for h in classes])
    unsigned: list[int] = []
    flips: list[int] = []
    for h, image in zip(classes, conjugates, strict=True):
        try:
            decoded = matrix_to_pauli(image)
        except NotPauliError as e:
            msg = f"conjugate of {h} is not a Pauli operator"
            raise NotCliffordError(msg) from e
        if not decoded.is_hermitian() or decoded.is_scalar():
            msg = f"conjugate of {h} is {decoded}"
            raise NotCliffordError(msg)
        unsigned.append(decoded.symplectic_index - 1)
        flips.append(((decoded.phase - _dot(decoded.x, decoded.z)) % 4) // 2)

    if not signed:
        return Permutation(images=tuple(unsigned))
    images = [0] * (2 * len(classes))
    for point, (target, flip) in enumerate(zip(unsigned, flips, strict=True)):
        for sign in (0, 1):
            images[2 * point + sign] = 2 * target + (sign ^ flip)
    return Permutation(images=tuple(images))


def pauli_action_image(
    gates: Iterable[ExactMatrix], n: int, *, signed: bool = False
) -> BaseStrongGenSet:
    """Image of the group generated by ``gates`` in its action on Pauli classes."""
    degree = (4**n - 1) * (2 if signed else 1)
    perms = [clifford_action_permutation(g, n, signed=signed) for g in gates]
    image = schreier_sims(perms, degree=degree)
    logger.debug("pauli action image", qubits=n, signed=signed, order=image.order())
    return image


def pauli_generators(n: int) -> list[PauliElement]:
    """Generator lists of the Pauli groups on one, two and three qubits.

    One qubit uses the three Pauli matrices. Two qubits use IX, XX, ZZ, YZ
    and ZX. Three qubits use iI with X and Z on every qubit.
    """
    match n:
        case 1:
            return [parse_pauli(w) for w in ("i^0 X", "i^1 Y", "i^0 Z")]
        case 2:
            words = ("i^0 IX", "i^0 XX", "i^0 ZZ", "i^1 YZ", "i^0 ZX")
            return [parse_pauli(w) for w in words]
        case 3:
            gens = [PauliElement(phase=1, x=(0, 0, 0), z=(0, 0, 0))]
            for k in range(3):
                bit = 1 << (2 - k)
                gens.append(PauliElement.from_ints(0, bit, 0, 3))
                gens.append(PauliElement.from_ints(0, 0, bit, 3))
            return gens
        case _:
            msg = f"Pauli group tables cover one to three qubits, not {n}"
            raise ValueError(msg)


def pauli_group_table(n: int) -> FiniteGroupTable[list[PauliElement]]:
    """The full group table of P_n, built from symplectic elements.

    Raises:
        ClosureViolationError: if the generators do not give all 4^(n+1)
            elements i^d X^x Z^z.
    """
    backend = ElementBackend[PauliElement](
        mul=PauliElement.__mul__,
        inv=PauliElement.inverse,
        unit=PauliElement.identity(n),
    )
    table = enumerate_group(backend, pauli_generators(n), name=f"P{n}")
    if table.order != 4 ** (n + 1):
        msg = f"P{n} generators give {table.order} elements, not {4 ** (n + 1)}"
        raise ClosureViolationError(msg)
    return table
