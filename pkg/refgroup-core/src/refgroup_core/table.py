"""Fully enumerated finite groups and their structural subgroups.

Tables are built by breadth-first closure under left multiplication by the
generators. Element ids are assigned in discovery order (layer by layer,
generator-major within a layer), so the same generators in the same order
always give the same ids. Id 0 is the identity.

Subgroups and quotients are tables too: their elements are ids of the parent
table (SubgroupBackend) or coset numbers (CosetBackend), so every operation
here works unchanged on them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd, log
from typing import TYPE_CHECKING, Any

import numpy as np

from refgroup_core.backends import CosetBackend, SubgroupBackend
from refgroup_core.constants import (
    CAYLEY_TABLE_LIMIT,
    ENUMERATION_CAP,
    EnumerationMode,
)
from refgroup_core.exceptions import (
    CapExceededError,
    ClosureViolationError,
    GroupTooLargeError,
    NotNormalError,
    NotSubgroupError,
)
from refgroup_core.log import get_logger

if TYPE_CHECKING:
    from collections.abc import Iterable

    from refgroup_core.backends import GroupBackend
    from refgroup_core.typedefs import ElementKey, IdArray, IdLike

logger = get_logger(__name__)


def _ids(values: IdLike) -> IdArray:
    return np.atleast_1d(np.asarray(values, dtype=np.int64))


def _prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


@dataclass(slots=True, kw_only=True)
class FiniteGroupTable[S]:
    """A finite group with every element enumerated and keyed."""

    """Human readable label, used in logs and reports"""
    name: str

    """Element representation and group law"""
    backend: GroupBackend[S] = field(repr=False)

    """All elements, in id order"""
    elements: S = field(repr=False)

    """Canonical key of every element, in id order"""
    keys: list[ElementKey] = field(repr=False)

    """Key to id"""
    index: dict[ElementKey, int] = field(repr=False)

    """Ids of the generators the table was built from"""
    generators: tuple[int, ...]

    """Full or projective identification of matrix elements"""
    mode: EnumerationMode = EnumerationMode.FULL

    """left_action[i, x] is the id of generators[i] * x"""
    left_action: IdArray = field(repr=False)

    """Table whose ids this subgroup's elements are, if any"""
    parent: FiniteGroupTable[Any] | None = field(default=None, repr=False)

    _inverses: IdArray | None = field(default=None, init=False, repr=False)
    _orders: IdArray | None = field(default=None, init=False, repr=False)
    _cayley: IdArray | None = field(default=None, init=False, repr=False)
    _center: FiniteGroupTable[Any] | None = field(default=None, init=False, repr=False)
    _derived: FiniteGroupTable[Any] | None = field(default=None, init=False, repr=False)

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.keys)

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def embedding(self) -> IdArray:
        """Parent ids of a subgroup's elements.

        Raises:
            NotSubgroupError: when the table is not a subgroup of another table.
        """
        if self.parent is None:
            msg = f"{self.name} is not a subgroup table"
            raise NotSubgroupError(msg)
        return np.asarray(self.elements, dtype=np.int64)

    def contains_parent_id(self, parent_id: int) -> bool:
        """Membership of a parent element in this subgroup."""
        return int(parent_id) in self.index

    def locate(self, stack: S) -> IdArray:
        """Ids of a stack of elements.

        Raises:
            ClosureViolationError: if some element is not in the table.
        """
        found = [self.index.get(key, -1) for key in self.backend.keys(stack)]
        ids = np.asarray(found, dtype=np.int64)
        if (ids < 0).any():
            msg = f"{int((ids < 0).sum())} product(s) fall outside {self.name}"
            raise ClosureViolationError(msg)
        return ids

    def element(self, element_id: int) -> S:
        """A one-element stack."""
        return self.backend.take(self.elements, _ids(element_id))

    def multiply_ids(self, a: IdLike, b: IdLike) -> IdArray:
        """Ids of the pairwise products a[k] * b[k], with broadcasting."""
        left, right = np.broadcast_arrays(_ids(a), _ids(b))
        if self._cayley is not None:
            return self._cayley[left, right]
        if len(left) == 0:
            return np.zeros(0, dtype=np.int64)
        products = self.backend.multiply(
            self.backend.take(self.elements, left),
            self.backend.take(self.elements, right),
        )
        return self.locate(products)

    def multiply(self, a: int, b: int) -> int:
        """Id of a single product."""
        return int(self.multiply_ids(a, b)[0])

    @property
    def inverses(self) -> IdArray:
        """inverses[x] is the id of x^-1."""
        if self._inverses is None:
            self._inverses = self.locate(self.backend.inverse(self.elements))
        return self._inverses

    def inverse_ids(self, a: IdLike) -> IdArray:
        """Ids of the inverses."""
        return self.inverses[_ids(a)]

    def power_ids(self, a: IdLike, exponent: int) -> IdArray:
        """Ids of a^exponent, for any integer exponent."""
        base = _ids(a) if exponent >= 0 else self.inverse_ids(a)
        result = np.zeros_like(base)
        for _ in range(abs(exponent)):
            result = self.multiply_ids(result, base)
        return result

    def conjugate_ids(self, x: IdLike, g: IdLike) -> IdArray:
        """Ids of g x g^-1."""
        return self.multiply_ids(self.multiply_ids(g, x), self.inverse_ids(g))

    def commutator_ids(self, a: IdLike, b: IdLike) -> IdArray:
        """Ids of [a, b] = a b a^-1 b^-1."""
        return self.multiply_ids(
            self.multiply_ids(a, b),
            self.multiply_ids(self.inverse_ids(a), self.inverse_ids(b)),
        )

    def cayley_table(self, limit: int = CAYLEY_TABLE_LIMIT) -> IdArray:
        """The full multiplication table, cached after the first call.

        Raises:
            GroupTooLargeError: above ``limit`` elements.
        """
        if self._cayley is None:
            n = self.order
            if n > limit:
                msg = f"{self.name} has {n} elements, above the table limit {limit}"
                raise GroupTooLargeError(msg)
            everything = np.arange(n, dtype=np.int64)
            table = np.empty((n, n), dtype=np.int64)
            for a in range(n):
                table[a] = self.multiply_ids(a, everything)
            self._cayley = table
        return self._cayley

    @property
    def element_orders(self) -> IdArray:
        """Order of every element, by vectorized repeated multiplication."""
        if self._orders is None:
            n = self.order
            ids = np.arange(n, dtype=np.int64)
            orders = np.ones(n, dtype=np.int64)
            power = ids.copy()
            pending = power != 0
            k = 1
            while pending.any():
                active = np.flatnonzero(pending)
                power[active] = self.multiply_ids(power[active], ids[active])
                k += 1
                done = active[power[active] == 0]
                orders[done] = k
                pending[done] = False
            self._orders = orders
        return self._orders

    @property
    def exponent(self) -> int:
        """Least common multiple of the element orders."""
        result = 1
        for value in np.unique(self.element_orders).tolist():
            result = result * value // gcd(result, value)
        return result

    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, count) pairs."""
        values, counts = np.unique(self.element_orders, return_counts=True)
        return tuple(zip(values.tolist(), counts.tolist(), strict=True))

    def is_abelian(self) -> bool:
        """True when all generators commute pairwise."""
        gens = self.generators
        return all(
            self.multiply(a, b) == self.multiply(b, a)
            for i, a in enumerate(gens)
            for b in gens[i + 1 :]
        )

    def audit(self, samples: int = 1000, seed: int = 0) -> None:
        """Random closure audit: products and inverses stay in the table.

        Raises:
            ClosureViolationError: on the first missing element.
        """
        rng = np.random.default_rng(seed)
        a = rng.integers(0, self.order, size=samples)
        b = rng.integers(0, self.order, size=samples)
        self.multiply_ids(a, b)
        if (self.multiply_ids(a, self.inverse_ids(a)) != 0).any():
            msg = f"x * x^-1 is not the identity in {self.name}"
            raise ClosureViolationError(msg)

    def subgroup(
        self, generators: Iterable[int] | IdArray, *, name: str | None = None
    ) -> FiniteGroupTable[IdArray]:
        """The subgroup generated by the given ids, as a table over this one."""
        return enumerate_group(
            SubgroupBackend(parent=self),
            np.asarray(list(generators), dtype=np.int64).reshape(-1),
            name=name or f"<subgroup of {self.name}>",
            mode=self.mode,
            cap=self.order,
            parent=self,
        )

    def subgroup_from_members(
        self, members: Iterable[int] | IdArray, *, name: str | None = None
    ) -> FiniteGroupTable[IdArray]:
        """Table of a subgroup given by its full member list.

        Generators are picked greedily in id order.

        Raises:
            NotSubgroupError: if the members are not closed under multiplication.
        """
        wanted = np.unique(np.asarray(list(members), dtype=np.int64))
        gens: list[int] = []
        current = self.subgroup([], name=name)
        for member in wanted.tolist():
            if current.order >= len(wanted):
                break
            if member not in current.index:
                gens.append(member)
                current = self.subgroup(gens, name=name)
        if current.order != len(wanted) or not np.isin(current.embedding, wanted).all():
            msg = f"the {len(wanted)} given ids do not form a subgroup of {self.name}"
            raise NotSubgroupError(msg)
        return current

    def _require_subgroup(self, subgroup: FiniteGroupTable[Any]) -> None:
        if subgroup.parent is not self:
            msg = f"{subgroup.name} is not a subgroup table of {self.name}"
            raise NotSubgroupError(msg)

    def _escaping_conjugates(self, subgroup: FiniteGroupTable[Any]) -> list[int]:
        """Conjugates of the subgroup's generators by ours that leave it."""
        sub_gens = subgroup.embedding[list(subgroup.generators)]
        escaping: list[int] = []
        if len(sub_gens) == 0:
            return escaping
        for g in self.generators:
            for c in self.conjugate_ids(sub_gens, g).tolist():
                if c not in subgroup.index and c not in escaping:
                    escaping.append(c)
        return escaping

    def is_normal(self, subgroup: FiniteGroupTable[Any]) -> bool:
        """Normality, checked on generators of both groups.

        Raises:
            NotSubgroupError: if ``subgroup`` is not a subgroup table of this one.
        """
        self._require_subgroup(subgroup)
        return not self._escaping_conjugates(subgroup)

    def normal_closure(
        self, ids: Iterable[int] | IdArray, *, name: str | None = None
    ) -> FiniteGroupTable[IdArray]:
        """Smallest normal subgroup containing the given ids."""
        gens = np.asarray(list(ids), dtype=np.int64).reshape(-1).tolist()
        closure = self.subgroup(gens, name=name)
        while extra := self._escaping_conjugates(closure):
            gens.extend(extra)
            closure = self.subgroup(gens, name=name)
        return closure

    def center(self) -> FiniteGroupTable[IdArray]:
        """Elements commuting with every generator."""
        if self._center is None:
            everything = np.arange(self.order, dtype=np.int64)
            central = np.ones(self.order, dtype=bool)
            for i, g in enumerate(self.generators):
                central &= self.multiply_ids(everything, g) == self.left_action[i]
            self._center = self.subgroup_from_members(
                np.flatnonzero(central), name=f"Z({self.name})"
            )
        return self._center

    def _generator_commutators(self) -> list[int]:
        gens = self.generators
        return [
            int(self.commutator_ids(a, b)[0])
            for i, a in enumerate(gens)
            for b in gens[i + 1 :]
        ]

    def derived(self) -> FiniteGroupTable[IdArray]:
        """Normal closure of the commutators of generator pairs."""
        if self._derived is None:
            commutators = [c for c in self._generator_commutators() if c != 0]
            self._derived = self.normal_closure(commutators, name=f"{self.name}'")
        return self._derived

    def derived_series(self) -> tuple[int, ...]:
        """Orders of G, G', G'', ... until the series stabilizes."""
        orders = [self.order]
        current: FiniteGroupTable[Any] = self
        while current.order > 1:
            nxt = current.derived()
            if nxt.order == current.order:
                break
            orders.append(nxt.order)
            current = nxt
        return tuple(orders)

    def power_commutator_kernel(self, p: int) -> FiniteGroupTable[IdArray]:
        """The normal subgroup G'G^p, generated by commutators and p-th powers."""
        words = [int(self.power_ids(g, p)[0]) for g in self.generators]
        words += self._generator_commutators()
        return self.normal_closure(
            [w for w in words if w != 0], name=f"{self.name}'{self.name}^{p}"
        )

    def cosets(self, subgroup: FiniteGroupTable[Any]) -> CosetBackend:
        """Partition into left cosets of a normal subgroup.

        Raises:
            NotSubgroupError: if ``subgroup`` is not a subgroup table of this one.
            NotNormalError: if it is not normal.
        """
        self._require_subgroup(subgroup)
        if escaping := self._escaping_conjugates(subgroup):
            msg = f"{subgroup.name} is not normal in {self.name} (id {escaping[0]})"
            raise NotNormalError(msg)

        members = subgroup.embedding
        coset_of = np.full(self.order, -1, dtype=np.int64)
        representatives: list[int] = []
        for x in range(self.order):
            if coset_of[x] >= 0:
                continue
            coset_of[self.multiply_ids(x, members)] = len(representatives)
            representatives.append(x)
        member_keys: list[list[ElementKey]] = [[] for _ in representatives]
        for x, coset in enumerate(coset_of.tolist()):
            member_keys[coset].append(self.keys[x])
        return CosetBackend(
            parent=self,
            coset_of=coset_of,
            representatives=np.asarray(representatives, dtype=np.int64),
            canonical_keys=[min(keys) for keys in member_keys],
        )

    def quotient(
        self, subgroup: FiniteGroupTable[Any], *, name: str | None = None
    ) -> FiniteGroupTable[IdArray]:
        """Group of left cosets xN, keyed by their smallest member key.

        Raises:
            NotSubgroupError: if ``subgroup`` is not a subgroup table of this one.
            NotNormalError: if it is not normal.
        """
        backend = self.cosets(subgroup)
        return enumerate_group(
            backend,
            backend.coset_of[list(self.generators)],
            name=name or f"{self.name}/{subgroup.name}",
            cap=len(backend.representatives),
        )

    def central_quotient(self) -> FiniteGroupTable[IdArray]:
        """G / Z(G)."""
        return self.quotient(self.center(), name=f"{self.name}~")

    def count_index2(self) -> int:
        """Number of index-2 subgroups: 2^r - 1 with r the rank of G/(G'G^2)."""
        kernel = self.power_commutator_kernel(2)
        rank = (self.order // kernel.order).bit_length() - 1
        return 2**rank - 1

    def index2_subgroups(self) -> list[IdArray]:
        """Member ids of every index-2 subgroup, as kernels of maps G -> Z2."""
        backend = self.cosets(self.power_commutator_kernel(2))
        elementary = enumerate_group(
            backend,
            backend.coset_of[list(self.generators)],
            name=f"{self.name}/{self.name}'{self.name}^2",
            cap=len(backend.representatives),
        )

        # Coordinates over a greedily chosen basis of the elementary abelian quotient.
        coords = {0: 0}
        basis_size = 0
        for q in range(elementary.order):
            if q in coords:
                continue
            for element, vector in list(coords.items()):
                coords[elementary.multiply(element, q)] = vector | (1 << basis_size)
            basis_size += 1

        coset_coords = np.zeros(elementary.order, dtype=np.int64)
        cosets = np.asarray(elementary.elements)
        for element, vector in coords.items():
            coset_coords[cosets[element]] = vector
        parent_coords = coset_coords[backend.coset_of]

        return [
            np.flatnonzero(np.bitwise_count(parent_coords & functional) % 2 == 0)
            for functional in range(1, 2**basis_size)
        ]

    def abelian_invariants(self) -> tuple[int, ...]:
        """Prime-power invariants of the abelianization G/G', sorted."""
        abelian = self.quotient(self.derived())
        orders = abelian.element_orders
        invariants: list[int] = []
        for p in _prime_factors(abelian.order):
            # counts[k] = number of elements whose order divides p^k
            counts = [1]
            while True:
                counts.append(int((p ** len(counts) % orders == 0).sum()))
                if counts[-1] == counts[-2]:
                    break
            # at_least[k] = number of cyclic factors of order at least p^(k+1)
            at_least = [
                round(log(counts[k + 1] // counts[k], p))
                for k in range(len(counts) - 1)
            ]
            for k in range(len(at_least) - 1):
                invariants.extend([p ** (k + 1)] * (at_least[k] - at_least[k + 1]))
        return tuple(sorted(invariants))


def enumerate_group[S](
    backend: GroupBackend[S],
    generators: S,
    *,
    name: str,
    mode: EnumerationMode = EnumerationMode.FULL,
    cap: int = ENUMERATION_CAP,
    parent: FiniteGroupTable[Any] | None = None,
) -> FiniteGroupTable[S]:
    """Breadth-first closure of the generators under left multiplication.

    Raises:
        CapExceededError: once the closure passes ``cap`` elements.
        ClosureViolationError: if the final left action is not a permutation.
    """
    start = time.perf_counter()
    generators = backend.prepare(generators)
    ngens = backend.length(generators)
    singles = [backend.take(generators, _ids(i)) for i in range(ngens)]

    unit = backend.identity()
    keys: list[ElementKey] = list(backend.keys(unit))
    index: dict[ElementKey, int] = {keys[0]: 0}
    layers = [unit]
    frontier = unit
    frontier_ids = _ids(0)
    action_parts: list[list[tuple[IdArray, IdArray]]] = [[] for _ in range(ngens)]

    while backend.length(frontier):
        first_new = len(keys)
        fresh_parts: list[S] = []
        for gi, single in enumerate(singles):
            products = backend.multiply(single, frontier)
            targets = np.empty(backend.length(products), dtype=np.int64)
            fresh: list[int] = []
            for pos, key in enumerate(backend.keys(products)):
                found = index.get(key)
                if found is None:
                    found = len(keys)
                    if found >= cap:
                        raise CapExceededError(cap)
                    index[key] = found
                    keys.append(key)
                    fresh.append(pos)
                targets[pos] = found
            action_parts[gi].append((frontier_ids, targets))
            if fresh:
                fresh_parts.append(backend.take(products, _ids(fresh)))
        if not fresh_parts:
            break
        frontier = backend.concat(fresh_parts)
        frontier_ids = np.arange(first_new, len(keys), dtype=np.int64)
        layers.append(frontier)
        logger.debug(
            "layer enumerated", group=name, size=len(keys), layer=len(layers) - 1
        )

    order = len(keys)
    left_action = np.full((ngens, order), -1, dtype=np.int64)
    for gi, parts in enumerate(action_parts):
        for sources, targets in parts:
            left_action[gi, sources] = targets
        row = left_action[gi]
        if (row < 0).any() or (np.bincount(row, minlength=order) != 1).any():
            msg = f"generator {gi} does not permute the elements of {name}"
            raise ClosureViolationError(msg)

    generator_ids = tuple(int(row[0]) for row in left_action)
    table = FiniteGroupTable(
        name=name,
        backend=backend,
        elements=backend.concat(layers),
        keys=keys,
        index=index,
        generators=generator_ids,
        mode=mode,
        left_action=left_action,
        parent=parent,
    )
    logger.debug(
        "group enumerated",
        group=name,
        order=order,
        seconds=round(time.perf_counter() - start, 3),
    )
    return table


def table_from_elements[S](
    backend: GroupBackend[S],
    elements: S,
    generators: S,
    *,
    name: str,
    mode: EnumerationMode = EnumerationMode.FULL,
) -> FiniteGroupTable[S]:
    """Rebuilds a table from its elements listed in id order.

    Gives the same ids as enumerate_group on the same generators when the
    elements come from such a table, at the cost of one product per element
    and generator.

    Raises:
        ClosureViolationError: if an element repeats, the identity is not
            first, or some generator does not permute the elements.
    """
    keys = backend.keys(elements)
    index = {key: i for i, key in enumerate(keys)}
    order = len(keys)
    if len(index) != order:
        msg = f"{order - len(index)} repeated element(s) in {name}"
        raise ClosureViolationError(msg)
    if not keys or keys[0] != backend.keys(backend.identity())[0]:
        msg = f"the first element of {name} is not the identity"
        raise ClosureViolationError(msg)

    generators = backend.prepare(generators)
    ngens = backend.length(generators)
    left_action = np.empty((ngens, order), dtype=np.int64)
    for gi in range(ngens):
        products = backend.multiply(backend.take(generators, _ids(gi)), elements)
        row = np.asarray(
            [index.get(key, -1) for key in backend.keys(products)], dtype=np.int64
        )
        if (row < 0).any() or (np.bincount(row, minlength=order) != 1).any():
            msg = f"generator {gi} does not permute the elements of {name}"
            raise ClosureViolationError(msg)
        left_action[gi] = row

    return FiniteGroupTable(
        name=name,
        backend=backend,
        elements=elements,
        keys=keys,
        index=index,
        generators=tuple(int(row[0]) for row in left_action),
        mode=mode,
        left_action=left_action,
    )
