"""Element backends: how a group table stores, multiplies and keys its elements.

A backend works on *stacks*, batches of elements of one concrete type, so
that breadth-first enumeration can multiply whole layers at once.
"""

from __future__ import annotations

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, override

import numpy as np

from refgroup_core import dyadic
from refgroup_core.constants import EnumerationMode

if TYPE_CHECKING:
    from collections.abc import Callable, Hashable, Sequence

    from refgroup_core.dyadic import DyadicStack
    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import ElementKey, IdArray


class GroupBackend[S](metaclass=ABCMeta):
    """Batch operations on stacks of group elements."""

    @abstractmethod
    def identity(self) -> S:
        """A stack holding only the identity element."""

    @abstractmethod
    def multiply(self, a: S, b: S) -> S:
        """Pairwise products; a stack of length one broadcasts."""

    @abstractmethod
    def inverse(self, a: S) -> S:
        """Pairwise inverses."""

    @abstractmethod
    def keys(self, a: S) -> list[ElementKey]:
        """Hashable canonical keys, one per element."""

    @abstractmethod
    def take(self, a: S, ids: IdArray) -> S:
        """Sub-stack at the given positions."""

    @abstractmethod
    def concat(self, parts: Sequence[S]) -> S:
        """Concatenation of several stacks."""

    @abstractmethod
    def length(self, a: S) -> int:
        """Number of elements in a stack."""

    def prepare(self, a: S) -> S:
        """Brings raw generator input into canonical form."""
        return a


@dataclass(slots=True, kw_only=True)
class MatrixBackend(GroupBackend["DyadicStack"]):
    """Unitary matrices over Z[zeta_8][1/2], optionally modulo <zeta> scalars."""

    """Matrix dimension"""
    dim: int

    """Full matrices, or classes under multiplication by 8th roots of unity"""
    mode: EnumerationMode = EnumerationMode.FULL

    def _canonical(self, a: DyadicStack) -> DyadicStack:
        if self.mode is EnumerationMode.PROJECTIVE:
            return dyadic.canonical_phase(a)
        return a

    @override
    def identity(self) -> DyadicStack:
        return dyadic.identity_stack(self.dim)

    @override
    def multiply(self, a: DyadicStack, b: DyadicStack) -> DyadicStack:
        return self._canonical(dyadic.multiply(a, b))

    @override
    def inverse(self, a: DyadicStack) -> DyadicStack:
        return self._canonical(dyadic.adjoint(a))

    @override
    def keys(self, a: DyadicStack) -> list[ElementKey]:
        return list(dyadic.keys(a))

    @override
    def take(self, a: DyadicStack, ids: IdArray) -> DyadicStack:
        return dyadic.take(a, ids)

    @override
    def concat(self, parts: Sequence[DyadicStack]) -> DyadicStack:
        return dyadic.concat(parts)

    @override
    def length(self, a: DyadicStack) -> int:
        return len(a)

    @override
    def prepare(self, a: DyadicStack) -> DyadicStack:
        return self._canonical(a)


@dataclass(slots=True, kw_only=True)
class ElementBackend[T](GroupBackend[list[T]]):
    """Arbitrary Python element objects with callables for the group law."""

    """Group law"""
    mul: Callable[[T, T], T]

    """Inverse map"""
    inv: Callable[[T], T]

    """Identity element"""
    unit: T

    """Canonical hashable key of an element"""
    key: Callable[[T], Hashable] = field(default=lambda element: element)

    @override
    def identity(self) -> list[T]:
        return [self.unit]

    @override
    def multiply(self, a: list[T], b: list[T]) -> list[T]:
        if len(a) == 1 and len(b) != 1:
            return [self.mul(a[0], y) for y in b]
        if len(b) == 1 and len(a) != 1:
            return [self.mul(x, b[0]) for x in a]
        return [self.mul(x, y) for x, y in zip(a, b, strict=True)]

    @override
    def inverse(self, a: list[T]) -> list[T]:
        return [self.inv(x) for x in a]

    @override
    def keys(self, a: list[T]) -> list[ElementKey]:
        return [self.key(x) for x in a]

    @override
    def take(self, a: list[T], ids: IdArray) -> list[T]:
        return [a[i] for i in np.asarray(ids).tolist()]

    @override
    def concat(self, parts: Sequence[list[T]]) -> list[T]:
        return [x for part in parts for x in part]

    @override
    def length(self, a: list[T]) -> int:
        return len(a)


class _IdBackend(GroupBackend["IdArray"]):
    """Shared stack handling for backends whose elements are integer ids."""

    __slots__ = ()

    @override
    def keys(self, a: IdArray) -> list[ElementKey]:
        return np.asarray(a).tolist()

    @override
    def take(self, a: IdArray, ids: IdArray) -> IdArray:
        return np.asarray(a)[ids]

    @override
    def concat(self, parts: Sequence[IdArray]) -> IdArray:
        return np.concatenate([np.asarray(p, dtype=np.int64) for p in parts])

    @override
    def length(self, a: IdArray) -> int:
        return len(a)


@dataclass(slots=True, kw_only=True)
class SubgroupBackend(_IdBackend):
    """Elements are ids of a parent table; products go through the parent."""

    """Table the ids refer to"""
    parent: FiniteGroupTable[Any]

    @override
    def identity(self) -> IdArray:
        return np.zeros(1, dtype=np.int64)

    @override
    def multiply(self, a: IdArray, b: IdArray) -> IdArray:
        return self.parent.multiply_ids(a, b)

    @override
    def inverse(self, a: IdArray) -> IdArray:
        return self.parent.inverses[np.asarray(a)]


@dataclass(slots=True, kw_only=True)
class CosetBackend(_IdBackend):
    """Left cosets xN of a normal subgroup.

    Cosets are numbered by first discovery, but keyed by their smallest member
    key, so a quotient has the same keys whatever generators built its parent.
    """

    """Table the cosets partition"""
    parent: FiniteGroupTable[Any]

    """Coset number of every parent id"""
    coset_of: IdArray

    """Smallest parent id in every coset"""
    representatives: IdArray

    """Lexicographically smallest parent key in every coset"""
    canonical_keys: list[ElementKey]

    @override
    def identity(self) -> IdArray:
        return self.coset_of[:1].copy()

    @override
    def multiply(self, a: IdArray, b: IdArray) -> IdArray:
        products = self.parent.multiply_ids(
            self.representatives[np.asarray(a)], self.representatives[np.asarray(b)]
        )
        return self.coset_of[products]

    @override
    def inverse(self, a: IdArray) -> IdArray:
        return self.coset_of[self.parent.inverses[self.representatives[np.asarray(a)]]]

    def members(self, coset: int) -> IdArray:
        """Parent ids in one coset."""
        return np.flatnonzero(self.coset_of == coset)

    @override
    def keys(self, a: IdArray) -> list[ElementKey]:
        return [self.canonical_keys[c] for c in np.asarray(a).tolist()]

    def canonical_key(self, coset: int) -> ElementKey:
        """Lexicographically smallest parent key among the coset's members."""
        return self.canonical_keys[coset]
