"""Automorphisms of small groups by generator-image propagation.

A homomorphism out of G is fixed by the images t_1..t_k of a generating
tuple g_1..g_k. The search assigns the t_j one at a time. At level j every
element of H_j = <g_1..g_j> gets its image along a breadth-first tree of
right multiplications, and every other edge y -> y g_i of the Cayley graph
of H_j becomes a check phi(y) t_i == phi(y g_i). A tuple survives all levels
exactly when the map extends to a homomorphism, so counting the survivors
of G -> G with injectivity enforced counts Aut(G).

Partial maps are carried as rows of an integer array, one column per
element of G, and every level is evaluated on blocks of rows at once.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, Any

import numpy as np
import numpy.typing as npt

from refgroup_core.constants import (
    AUTOMORPHISM_CHUNK_ROWS,
    AUTOMORPHISM_GENERATOR_LIMIT,
    AUTOMORPHISM_GENERATOR_WARN,
    AUTOMORPHISM_LIST_LIMIT,
    AUTOMORPHISM_SIZE_LIMIT,
    MINIMAL_GENERATORS_LIMIT,
    OUTER_TABLE_LIMIT,
)
from refgroup_core.exceptions import ClosureViolationError, GroupTooLargeError
from refgroup_core.log import get_logger
from refgroup_core.permutation import Permutation, perm_group_table, schreier_sims
from refgroup_algebra.exceptions import NonIntegralOutError

if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import IdArray, Images

logger = get_logger(__name__)

type BoolArray = npt.NDArray[np.bool_]


class SearchMode(StrEnum):
    """What homomorphism_search returns."""

    COUNT = "count"
    FIRST = "first"
    ALL = "all"


@dataclass(slots=True, frozen=True, kw_only=True)
class _Level:
    """Source-side data for assigning the image of one generator."""

    """(element, parent, generator index) in the order images are filled in"""
    tree: tuple[tuple[int, int, int], ...]

    """checks[s] holds (y, i, y g_i) edges whose ends are known after s tree steps"""
    checks: tuple[IdArray, ...]


@dataclass(slots=True, frozen=True, kw_only=True)
class HomomorphismSearch:
    """Outcome of a generator-image search."""

    """Source generators the images were assigned to"""
    generators: tuple[int, ...]

    """Number of maps found; at most one in FIRST mode"""
    count: int

    """Full maps, images[x] for every source id x (FIRST and ALL modes)"""
    maps: tuple[Images, ...]


def _closure(cayley: IdArray, members: BoolArray, g: int) -> BoolArray:
    mask = members.copy()
    mask[g] = True
    while True:
        ids = np.flatnonzero(mask)
        grown = mask.copy()
        grown[cayley[np.ix_(ids, ids)].ravel()] = True
        if grown.sum() == len(ids):
            return mask
        mask = grown


def minimal_generators(group: FiniteGroupTable[Any]) -> tuple[int, ...]:
    """A generating tuple of minimal length, lexicographically first by id.

    Lengths are tried upward from the rank of G/(G'G^2), which no generating
    tuple can undercut. Subgroups already known not to be completable in the
    remaining number of steps are remembered.

    Raises:
        GroupTooLargeError: above MINIMAL_GENERATORS_LIMIT elements.
    """
    n = group.order
    if n > MINIMAL_GENERATORS_LIMIT:
        msg = f"{group.name} has {n} elements, above {MINIMAL_GENERATORS_LIMIT}"
        raise GroupTooLargeError(msg)
    if n == 1:
        return ()
    cayley = group.cayley_table()
    trivial = np.zeros(n, dtype=bool)
    trivial[0] = True
    failed: set[tuple[bytes, int]] = set()

    def complete(mask: BoolArray, depth: int) -> list[int] | None:
        if mask.all():
            return []
        if depth == 0:
            return None
        key = (np.packbits(mask).tobytes(), depth)
        if key in failed:
            return None
        for g in np.flatnonzero(~mask).tolist():
            rest = complete(_closure(cayley, mask, g), depth - 1)
            if rest is not None:
                return [g, *rest]
        failed.add(key)
        return None

    rank = (group.count_index2() + 1).bit_length() - 1
    for k in range(max(1, rank), n):
        found = complete(trivial, k)
        if found is not None:
            logger.debug("minimal generators", group=group.name, generators=found)
            return tuple(found)
    msg = f"no generating tuple found for {group.name}"
    raise ClosureViolationError(msg)


def _levels(cayley: IdArray, generators: Sequence[int]) -> list[_Level]:
    n = len(cayley)
    known = [0]
    in_known = np.zeros(n, dtype=bool)
    in_known[0] = True
    levels: list[_Level] = []
    for j in range(len(generators)):
        gens = generators[: j + 1]
        seen = in_known.copy()
        queue = list(known)
        tree: list[tuple[int, int, int]] = []
        step_of: dict[int, int] = {}
        pos = 0
        while pos < len(queue):
            y = queue[pos]
            pos += 1
            for i, h in enumerate(gens):
                x = int(cayley[y, h])
                if not seen[x]:
                    seen[x] = True
                    step_of[x] = len(tree)
                    tree.append((x, y, i))
                    queue.append(x)

        buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(len(tree) + 1)]
        for y in queue:
            for i, h in enumerate(gens):
                if in_known[y] and i < j:
                    continue
                x = int(cayley[y, h])
                if x in step_of and tree[step_of[x]] == (x, y, i):
                    continue
                ready = max(step_of.get(y, -1), step_of.get(x, -1))
                buckets[ready + 1].append((y, i, x))
        checks = tuple(
            np.asarray(bucket, dtype=np.int64).reshape(-1, 3) for bucket in buckets
        )
        levels.append(_Level(tree=tuple(tree), checks=checks))
        known = queue
        in_known = seen
    if len(known) != n:
        msg = f"generators {tuple(generators)} give {len(known)} of {n} elements"
        raise ValueError(msg)
    return levels


@dataclass(slots=True)
class _Rows:
    """A block of partial maps."""

    phi: IdArray
    chosen: IdArray
    used: BoolArray | None

    def keep(self, alive: BoolArray) -> _Rows:
        return _Rows(
            phi=self.phi[alive],
            chosen=self.chosen[alive],
            used=None if self.used is None else self.used[alive],
        )


def _check(rows: _Rows, edges: IdArray, target: IdArray) -> BoolArray:
    if len(edges) == 0:
        return np.ones(len(rows.phi), dtype=bool)
    y, i, x = edges[:, 0], edges[:, 1], edges[:, 2]
    products = target[rows.phi[:, y], rows.chosen[:, i]]
    return (products == rows.phi[:, x]).all(axis=1)


def _propagate(rows: _Rows, level: _Level, target: IdArray) -> _Rows:
    alive = _check(rows, level.checks[0], target)
    for step, (x, y, i) in enumerate(level.tree):
        values = target[rows.phi[:, y], rows.chosen[:, i]]
        if rows.used is not None:
            every = np.arange(len(values))
            alive &= ~rows.used[every, values]
            rows.used[every, values] = True
        rows.phi[:, x] = values
        alive &= _check(rows, level.checks[step + 1], target)
        if 2 * int(alive.sum()) < len(alive):
            rows = rows.keep(alive)
            alive = np.ones(len(rows.phi), dtype=bool)
    return rows.keep(alive)


def iter_homomorphisms(
    source: FiniteGroupTable[Any],
    target: FiniteGroupTable[Any],
    generators: Sequence[int],
    *,
    injective: bool = True,
    chunk_rows: int = AUTOMORPHISM_CHUNK_ROWS,
) -> Iterator[IdArray]:
    """Blocks of complete maps source -> target, each row images[x] for all x.

    Rows come in lexicographic order of the generator images.

    Raises:
        GroupTooLargeError: if either group is beyond the Cayley-table limit.
        ValueError: if ``generators`` do not generate ``source``.
    """
    levels = _levels(source.cayley_table(), generators)
    product = target.cayley_table()
    source_orders = source.element_orders
    target_orders = target.element_orders
    n, m = source.order, target.order

    phi = np.full((1, n), -1, dtype=np.int64)
    phi[0, 0] = 0
    used = None
    if injective:
        used = np.zeros((1, m), dtype=bool)
        used[0, 0] = True
    start = _Rows(phi=phi, chosen=np.zeros((1, 0), dtype=np.int64), used=used)

    def extend(j: int, rows: _Rows) -> Iterator[IdArray]:
        if j == len(levels):
            yield rows.phi
            return
        order = int(source_orders[generators[j]])
        if injective:
            candidates = np.flatnonzero(target_orders == order)
        else:
            candidates = np.flatnonzero(order % target_orders == 0)
        if len(candidates) == 0:
            return
        block = max(1, chunk_rows // len(candidates))
        for first in range(0, len(rows.phi), block):
            parent = _Rows(
                phi=rows.phi[first : first + block],
                chosen=rows.chosen[first : first + block],
                used=None if rows.used is None else rows.used[first : first + block],
            )
            if parent.used is not None:
                picks, columns = np.nonzero(~parent.used[:, candidates])
            else:
                picks, columns = np.divmod(
                    np.arange(len(parent.phi) * len(candidates)), len(candidates)
                )
            if len(picks) == 0:
                continue
            child = _Rows(
                phi=parent.phi[picks],
                chosen=np.column_stack([parent.chosen[picks], candidates[columns]]),
                used=None if parent.used is None else parent.used[picks],
            )
            child = _propagate(child, levels[j], product)
            logger.debug(
                "homomorphism level",
                source=source.name,
                level=j,
                tried=len(picks),
                survived=len(child.phi),
            )
            if len(child.phi):
                yield from extend(j + 1, child)

    yield from extend(0, start)


def homomorphism_search(
    source: FiniteGroupTable[Any],
    target: FiniteGroupTable[Any],
    *,
    mode: SearchMode = SearchMode.COUNT,
    injective: bool = True,
    generators: Sequence[int] | None = None,
) -> HomomorphismSearch:
    """Counts, finds one of, or lists the homomorphisms source -> target.

    With ``injective`` the maps are embeddings, and automorphisms when the
    two groups are the same table.

    Raises:
        GroupTooLargeError: in ALL mode past AUTOMORPHISM_LIST_LIMIT maps, or
            for groups beyond the Cayley-table limit.
    """
    start = time.perf_counter()
    gens = tuple(minimal_generators(source) if generators is None else generators)
    count = 0
    maps: list[Images] = []
    for block in iter_homomorphisms(source, target, gens, injective=injective):
        if mode is SearchMode.FIRST:
            maps.append(tuple(block[0].tolist()))
            count = 1
            break
        count += len(block)
        if mode is SearchMode.ALL:
            if count > AUTOMORPHISM_LIST_LIMIT:
                msg = f"more than {AUTOMORPHISM_LIST_LIMIT} maps to list"
                raise GroupTooLargeError(msg)
            maps.extend(tuple(row) for row in block.tolist())
    logger.info(
        "homomorphism search finished",
        source=source.name,
        target=target.name,
        mode=mode,
        generators=len(gens),
        count=count,
        seconds=round(time.perf_counter() - start, 3),
    )
    return HomomorphismSearch(generators=gens, count=count, maps=tuple(maps))


def is_homomorphism(
    source: FiniteGroupTable[Any], target: FiniteGroupTable[Any], images: Sequence[int]
) -> bool:
    """Checks phi(a b) == phi(a) phi(b) on the whole multiplication table."""
    phi = np.asarray(images, dtype=np.int64)
    products = target.cayley_table()[phi[:, None], phi[None, :]]
    return bool((products == phi[source.cayley_table()]).all())


def find_isomorphism(
    source: FiniteGroupTable[Any], target: FiniteGroupTable[Any]
) -> Images | None:
    """An explicit isomorphism as a full image map, or None."""
    if source.order != target.order:
        return None
    found = homomorphism_search(source, target, mode=SearchMode.FIRST)
    return found.maps[0] if found.maps else None


def _automorphism_generators(
    group: FiniteGroupTable[Any], generators: Sequence[int] | None
) -> tuple[int, ...]:
    if group.order > AUTOMORPHISM_SIZE_LIMIT:
        msg = (
            f"{group.name} has {group.order} elements, "
            f"above {AUTOMORPHISM_SIZE_LIMIT}"
        )
        raise GroupTooLargeError(msg)
    gens = tuple(minimal_generators(group) if generators is None else generators)
    if len(gens) > AUTOMORPHISM_GENERATOR_LIMIT:
        msg = (
            f"{group.name} needs {len(gens)} generators, "
            f"above {AUTOMORPHISM_GENERATOR_LIMIT}"
        )
        raise GroupTooLargeError(msg)
    if len(gens) > AUTOMORPHISM_GENERATOR_WARN:
        logger.warning(
            "long generating tuple", group=group.name, generators=len(gens)
        )
    return gens


def automorphism_count(
    group: FiniteGroupTable[Any], *, generators: Sequence[int] | None = None
) -> int:
    """|Aut(G)| as the number of generator images that extend to automorphisms.

    Raises:
        GroupTooLargeError: above AUTOMORPHISM_SIZE_LIMIT elements or
            AUTOMORPHISM_GENERATOR_LIMIT generators.
    """
    gens = _automorphism_generators(group, generators)
    return homomorphism_search(group, group, generators=gens).count


def automorphism_group(
    group: FiniteGroupTable[Any],
    *,
    generators: Sequence[int] | None = None,
    order: int | None = None,
) -> BaseStrongGenSet:
    """Aut(G) as a permutation group on the element ids of G.

    Automorphisms are taken in search order and kept when they do not sift
    into the group built so far, until its order reaches the count.
    """
    gens = _automorphism_generators(group, generators)
    expected = automorphism_count(group, generators=gens) if order is None else order
    n = group.order
    kept: list[Permutation] = []
    aut = schreier_sims(kept, degree=n)
    for block in iter_homomorphisms(group, group, gens):
        for row in block.tolist():
            if aut.order() >= expected:
                break
            p = Permutation(images=tuple(row))
            if not aut.contains(p):
                kept.append(p)
                aut = schreier_sims(kept, degree=n)
        if aut.order() >= expected:
            break
    if aut.order() != expected:
        msg = f"automorphisms of {group.name} generate {aut.order()}, not {expected}"
        raise ClosureViolationError(msg)
    logger.info(
        "automorphism group built",
        group=group.name,
        order=expected,
        generators=len(kept),
    )
    return aut


def inner_automorphisms(group: FiniteGroupTable[Any]) -> BaseStrongGenSet:
    """Inn(G), generated by conjugation x -> g x g^-1 with the generators g."""
    everything = np.arange(group.order, dtype=np.int64)
    perms = [
        Permutation(images=tuple(group.conjugate_ids(everything, g).tolist()))
        for g in group.generators
    ]
    return schreier_sims(perms, degree=group.order)


def inn_outer_orders(
    group: FiniteGroupTable[Any], *, aut_order: int | None = None
) -> tuple[int, int]:
    """(|Inn(G)|, |Out(G)|), with |Inn(G)| = |G/Z(G)|.

    Raises:
        NonIntegralOutError: if |Aut(G)| is not a multiple of |Inn(G)|.
    """
    inner = group.order // group.center().order
    total = automorphism_count(group) if aut_order is None else aut_order
    if total % inner:
        msg = f"|Aut({group.name})| = {total} is not a multiple of |Inn| = {inner}"
        raise NonIntegralOutError(msg)
    return inner, total // inner


def outer_automorphism_table(
    group: FiniteGroupTable[Any], *, automorphisms: BaseStrongGenSet | None = None
) -> FiniteGroupTable[IdArray]:
    """Out(G) = Aut(G)/Inn(G) as a table of cosets.

    Raises:
        GroupTooLargeError: if |Out(G)| is above OUTER_TABLE_LIMIT.
        CapExceededError: if Aut(G) is too large to enumerate.
    """
    aut = automorphism_group(group) if automorphisms is None else automorphisms
    inner = inner_automorphisms(group)
    if aut.order() // inner.order() > OUTER_TABLE_LIMIT:
        msg = f"|Out({group.name})| is above {OUTER_TABLE_LIMIT}"
        raise GroupTooLargeError(msg)
    aut_table = perm_group_table(aut, name=f"Aut({group.name})")
    inn = aut_table.subgroup(
        [aut_table.index[p.images] for p in inner.generators],
        name=f"Inn({group.name})",
    )
    return aut_table.quotient(inn, name=f"Out({group.name})")
