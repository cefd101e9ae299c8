"""Permutations and the deterministic Schreier-Sims algorithm.

Products compose left to right: ``p * q`` applies ``p`` first and then ``q``,
so ``(p * q)(i) == q(p(i))``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from refgroup_core.backends import ElementBackend
from refgroup_core.constants import PERMUTATION_TABLE_LIMIT
from refgroup_core.exceptions import DegreeMismatchError, ParseError
from refgroup_core.log import get_logger
from refgroup_core.table import enumerate_group

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import Images

logger = get_logger(__name__)


@dataclass(slots=True, frozen=True)
class Permutation:
    """A bijection of {0, ..., degree - 1}."""

    """images[i] is the image of point i"""
    images: Images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        """The identity on ``degree`` points."""
        return cls(images=tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Builds a permutation from disjoint cycles, e.g. ``[(0, 1, 2)]``.

        Raises:
            ParseError: if the cycles overlap or name points outside the degree.
        """
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for k, point in enumerate(cycle):
                if not 0 <= point < degree or point in seen:
                    msg = f"bad point {point} in cycle {tuple(cycle)}"
                    raise ParseError(msg)
                seen.add(point)
                images[point] = cycle[(k + 1) % len(cycle)]
        return cls(images=tuple(images))

    @property
    def degree(self) -> int:
        """Number of points acted on."""
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            msg = f"degree {self.degree} does not match {other.degree}"
            raise DegreeMismatchError(msg)
        return Permutation(images=tuple(map(other.images.__getitem__, self.images)))

    def __pow__(self, exponent: int) -> Permutation:
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(exponent)):
            result *= base
        return result

    def inverse(self) -> Permutation:
        """The inverse permutation."""
        inverse = [0] * self.degree
        for point, image in enumerate(self.images):
            inverse[image] = point
        return Permutation(images=tuple(inverse))

    def is_identity(self) -> bool:
        """True when every point is fixed."""
        return all(point == image for point, image in enumerate(self.images))

    def first_moved(self) -> int | None:
        """Smallest point not fixed, or None for the identity."""
        return next(
            (p for p, image in enumerate(self.images) if p != image),
            None,
        )

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        result = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            result.append(tuple(cycle))
        return tuple(result)

    def order(self) -> int:
        """Least common multiple of the cycle lengths."""
        return math.lcm(*(len(c) for c in self.cycles()))

    def is_even(self) -> bool:
        """Parity: a k-cycle is a product of k - 1 transpositions."""
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        if self.is_identity():
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()


def orbit(point: int, generators: Iterable[Permutation]) -> tuple[int, ...]:
    """Orbit of a point, in breadth-first discovery order."""
    gens = list(generators)
    found = [point]
    seen = {point}
    for beta in found:
        for g in gens:
            gamma = g.images[beta]
            if gamma not in seen:
                seen.add(gamma)
                found.append(gamma)
    return tuple(found)


def _transversal(
    base_point: int, generators: Sequence[Permutation], degree: int
) -> dict[int, Permutation]:
    """u[gamma] maps the base point to gamma; keys in breadth-first order."""
    transversal = {base_point: Permutation.identity(degree)}
    frontier = [base_point]
    for beta in frontier:
        u_beta = transversal[beta]
        for s in generators:
            gamma = s.images[beta]
            if gamma not in transversal:
                transversal[gamma] = u_beta * s
                frontier.append(gamma)
    return transversal


@dataclass(slots=True, frozen=True, eq=False)
class BaseStrongGenSet:
    """A permutation group given by a base and strong generating set."""

    """Number of points acted on"""
    degree: int

    """The generators the group was built from"""
    generators: tuple[Permutation, ...]

    """Base points b_0, b_1, ...; only the identity fixes all of them"""
    base: tuple[int, ...]

    """Strong generators; those fixing b_0..b_{k-1} generate the k-th stabilizer"""
    strong_generators: tuple[Permutation, ...]

    """Per level, maps each orbit point gamma to an element sending b_k to gamma"""
    transversals: tuple[dict[int, Permutation], ...] = field(repr=False)

    def order(self) -> int:
        """Product of the basic orbit lengths."""
        return math.prod(len(t) for t in self.transversals)

    def sift(self, p: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strips ``p`` through the levels from ``start``.

        Returns:
            The residue and the first level it could not pass, which is
            ``len(base)`` when it passed them all.
        """
        h = p
        for level in range(start, len(self.base)):
            beta = h.images[self.base[level]]
            u = self.transversals[level].get(beta)
            if u is None:
                return h, level
            h *= u.inverse()
        return h, len(self.base)

    def contains(self, p: Permutation) -> bool:
        """Exact membership by sifting.

        Raises:
            DegreeMismatchError: if ``p`` acts on a different number of points.
        """
        if p.degree != self.degree:
            msg = f"degree {p.degree} does not match {self.degree}"
            raise DegreeMismatchError(msg)
        h, level = self.sift(p)
        return level == len(self.base) and h.is_identity()

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def is_trivial(self) -> bool:
        """True for the group of order one."""
        return not self.base

    def serialize(self) -> str:
        """``degree order`` header line, then one generator image list per line."""
        lines = [f"{self.degree} {self.order()}"]
        lines.extend(" ".join(map(str, g.images)) for g in self.generators)
        return "\n".join(lines) + "\n"


def parse_permutation_group(text: str) -> BaseStrongGenSet:
    """Rebuilds a group from BaseStrongGenSet.serialize output.

    Raises:
        ParseError: on a malformed header or generator line, or when the
            rebuilt order differs from the recorded one.
    """
    lines = text.strip("\n").split("\n")
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):  # noqa: PLR2004
        msg = f"malformed permutation group header {lines[0]!r}"
        raise ParseError(msg)
    degree, recorded = int(header[0]), int(header[1])
    generators = []
    for line in lines[1:]:
        images = tuple(int(v) for v in line.split(" ")) if line else ()
        if sorted(images) != list(range(degree)):
            msg = f"line {line[:40]!r} is not a permutation of {degree} points"
            raise ParseError(msg)
        generators.append(Permutation(images=images))
    group = schreier_sims(generators, degree=degree)
    if group.order() != recorded:
        msg = f"recorded order {recorded} but generators give {group.order()}"
        raise ParseError(msg)
    return group


def schreier_sims(
    generators: Iterable[Permutation], *, degree: int | None = None
) -> BaseStrongGenSet:
    """Deterministic incremental Schreier-Sims.

    New base points are the first point moved by a generator (or residue)
    that fixes the current base.

    Raises:
        DegreeMismatchError: if the generators act on different degrees.
    """
    start = time.perf_counter()
    gens = tuple(generators)
    if degree is None:
        if not gens:
            msg = "degree is required for an empty generator list"
            raise DegreeMismatchError(msg)
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        msg = f"generators do not all act on {degree} points"
        raise DegreeMismatchError(msg)

    base: list[int] = []
    for g in gens:
        moved = g.first_moved()
        if moved is not None and all(g.images[b] == b for b in base):
            base.append(moved)
    strong = [g for g in gens if not g.is_identity()]
    distr = [
        [g for g in strong if all(g.images[b] == b for b in base[:level])]
        for level in range(len(base))
    ]
    transversals = [
        _transversal(base[level], distr[level], degree) for level in range(len(base))
    ]

    def strip(p: Permutation, level_from: int) -> tuple[Permutation, int]:
        h = p
        for level in range(level_from, len(base)):
            u = transversals[level].get(h.images[base[level]])
            if u is None:
                return h, level
            h *= u.inverse()
        return h, len(base)

    i = len(base) - 1
    while i >= 0:
        restart = False
        inverses: dict[int, Permutation] = {}
        for beta, u_beta in list(transversals[i].items()):
            for s in distr[i]:
                gamma = s.images[beta]
                u_gamma = transversals[i][gamma]
                g1 = u_beta * s
                if g1 == u_gamma:
                    continue
                if gamma not in inverses:
                    inverses[gamma] = u_gamma.inverse()
                h, j = strip(g1 * inverses[gamma], i + 1)
                if j == len(base):
                    moved = h.first_moved()
                    if moved is None:
                        continue
                    base.append(moved)
                    distr.append([])
                    transversals.append({})
                    j = len(base) - 1
                strong.append(h)
                for level in range(i + 1, j + 1):
                    distr[level].append(h)
                    transversals[level] = _transversal(
                        base[level], distr[level], degree
                    )
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    group = BaseStrongGenSet(
        degree=degree,
        generators=gens,
        base=tuple(base),
        strong_generators=tuple(strong),
        transversals=tuple(transversals),
    )
    logger.debug(
        "schreier-sims finished",
        degree=degree,
        base_length=len(base),
        strong_generators=len(strong),
        order=group.order(),
        seconds=round(time.perf_counter() - start, 3),
    )
    return group


def normal_closure(
    group: BaseStrongGenSet, elements: Iterable[Permutation]
) -> BaseStrongGenSet:
    """Smallest subgroup containing ``elements`` and normalized by ``group``.

    Conjugates that already sift into the current closure are discarded.
    """
    gens = [e for e in elements if not e.is_identity()]
    closure = schreier_sims(gens, degree=group.degree)
    while True:
        escaping: list[Permutation] = []
        for g in group.generators:
            g_inv = g.inverse()
            for h in closure.generators:
                conjugate = g_inv * h * g
                if not closure.contains(conjugate) and conjugate not in escaping:
                    escaping.append(conjugate)
        if not escaping:
            return closure
        gens.extend(escaping)
        closure = schreier_sims(gens, degree=group.degree)


def derived_subgroup(group: BaseStrongGenSet) -> BaseStrongGenSet:
    """Normal closure of the commutators of generator pairs."""
    gens = group.generators
    commutators = [
        commutator(a, b) for k, a in enumerate(gens) for b in gens[k + 1 :]
    ]
    return normal_closure(group, commutators)


def derived_series(group: BaseStrongGenSet) -> tuple[int, ...]:
    """Orders of G, G', G'', ... until the series stabilizes."""
    orders = [group.order()]
    current = group
    while orders[-1] > 1:
        current = derived_subgroup(current)
        if current.order() == orders[-1]:
            break
        orders.append(current.order())
    return tuple(orders)


def is_normal_subgroup(group: BaseStrongGenSet, subgroup: BaseStrongGenSet) -> bool:
    """Containment plus invariance of the subgroup generators under conjugation."""
    if not all(group.contains(h) for h in subgroup.generators):
        return False
    return all(
        subgroup.contains(g.inverse() * h * g)
        for g in group.generators
        for h in subgroup.generators
    )


def perm_group_table(
    group: BaseStrongGenSet,
    *,
    name: str = "permutation group",
    cap: int = PERMUTATION_TABLE_LIMIT,
) -> FiniteGroupTable[list[Permutation]]:
    """Enumerates a permutation group into a table, keyed by image tuples.

    Raises:
        CapExceededError: if the group has more than ``cap`` elements.
    """
    backend = ElementBackend[Permutation](
        mul=Permutation.__mul__,
        inv=Permutation.inverse,
        unit=Permutation.identity(group.degree),
        key=lambda p: p.images,
    )
    return enumerate_group(backend, list(group.generators), name=name, cap=cap)
