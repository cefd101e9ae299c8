"""The commutation geometry of two-qubit observables.

Points are the 15 non-identity Pauli classes, each represented by its
Hermitian member, and lines are the triples {a, b, ab} of pairwise
commuting ones. The result is the generalized quadrangle GQ(2, 2). Point k
is the class with symplectic index k + 1, the same numbering the unsigned
Clifford action uses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import StrEnum
from typing import TYPE_CHECKING, Any

import numpy as np

from refgroup_core import dyadic
from refgroup_core.backends import MatrixBackend
from refgroup_core.constants import AUTOMORPHISM_SIZE_LIMIT, HYPERPLANE_POINT_LIMIT
from refgroup_core.log import get_logger
from refgroup_core.matrix import ExactMatrix
from refgroup_core.pauli import PauliElement, all_classes, pauli_to_matrix
from refgroup_core.table import enumerate_group
from refgroup_algebra.automorphism import automorphism_count, inn_outer_orders
from refgroup_algebra.exceptions import (
    NotAGridError,
    NotIndependentError,
    TooManyPointsError,
)
from refgroup_algebra.fingerprint import fingerprint_of

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Sequence

    from refgroup_core.permutation import Permutation
    from refgroup_core.table import FiniteGroupTable
    from refgroup_algebra.fingerprint import GroupFingerprint

logger = get_logger(__name__)

type Line = tuple[int, ...]


@dataclass(slots=True, frozen=True, kw_only=True)
class IncidenceGeometry:
    """Points and lines, each line a sorted tuple of point indices."""

    """Observable behind every point"""
    points: tuple[PauliElement, ...]

    lines: tuple[Line, ...]

    def lines_through(self, point: int) -> list[int]:
        """Indices of the lines containing ``point``."""
        return [k for k, line in enumerate(self.lines) if point in line]

    def collinearity(self) -> np.ndarray[Any, np.dtype[np.bool_]]:
        """adjacency[p, q] is True when p != q share a line."""
        n = len(self.points)
        adjacency = np.zeros((n, n), dtype=bool)
        for line in self.lines:
            for p, q in itertools.permutations(line, 2):
                adjacency[p, q] = True
        return adjacency

    def label(self, point: int) -> str:
        """Tensor letters of a point, e.g. ``XZ``."""
        return str(self.points[point]).split()[1]


def two_qubit_geometry() -> IncidenceGeometry:
    """GQ(2, 2) from the 15 two-qubit observables."""
    points = all_classes(2)
    lines = []
    for a, b in itertools.combinations(range(len(points)), 2):
        if not points[a].commutes_with(points[b]):
            continue
        c = ((a + 1) ^ (b + 1)) - 1
        if c > b:
            lines.append((a, b, c))
    return IncidenceGeometry(points=tuple(points), lines=tuple(lines))


@dataclass(slots=True, frozen=True, kw_only=True)
class AxiomReport:
    """Outcome of each generalized quadrangle axiom."""

    """Every line has s + 1 points"""
    line_size: bool

    """Every point is on t + 1 lines"""
    point_degree: bool

    """Two points share at most one line"""
    near_linear: bool

    """A point off a line is collinear with exactly one of its points"""
    antiflag: bool

    @property
    def passed(self) -> bool:
        """All four hold."""
        return all(
            (self.line_size, self.point_degree, self.near_linear, self.antiflag)
        )


def check_gq_axioms(geometry: IncidenceGeometry, s: int, t: int) -> AxiomReport:
    """Checks the GQ(s, t) axioms exhaustively."""
    n = len(geometry.points)
    through = [set(geometry.lines_through(p)) for p in range(n)]
    line_size = all(len(line) == s + 1 for line in geometry.lines)
    point_degree = all(len(lines) == t + 1 for lines in through)
    near_linear = all(
        len(through[p] & through[q]) <= 1
        for p, q in itertools.combinations(range(n), 2)
    )
    antiflag = True
    for k, line in enumerate(geometry.lines):
        for p in range(n):
            if p in line:
                continue
            meeting = [
                m for m in through[p] if m != k and set(geometry.lines[m]) & set(line)
            ]
            if len(meeting) != 1:
                antiflag = False
                break
        if not antiflag:
            break
    report = AxiomReport(
        line_size=line_size,
        point_degree=point_degree,
        near_linear=near_linear,
        antiflag=antiflag,
    )
    logger.debug("gq axioms checked", s=s, t=t, passed=report.passed)
    return report


class HyperplaneKind(StrEnum):
    """Types of geometric hyperplanes in GQ(2, 2)."""

    PERP_SET = "perp-set"
    GRID = "grid"
    OVOID = "ovoid"
    OTHER = "other"


@dataclass(slots=True, frozen=True, kw_only=True)
class Hyperplane:
    """A proper point set meeting every line in one point or containing it."""

    kind: HyperplaneKind

    points: tuple[int, ...]

    """Indices of the lines lying inside"""
    lines: tuple[int, ...]

    """The point on every internal line of a perp-set"""
    center: int | None = None


def _classify(geometry: IncidenceGeometry, points: tuple[int, ...]) -> Hyperplane:
    members = set(points)
    inside = tuple(k for k, line in enumerate(geometry.lines) if members >= set(line))
    if not inside:
        return Hyperplane(kind=HyperplaneKind.OVOID, points=points, lines=inside)
    common = set.intersection(*(set(geometry.lines[k]) for k in inside))
    if len(common) == 1 and len(inside) > 1:
        return Hyperplane(
            kind=HyperplaneKind.PERP_SET,
            points=points,
            lines=inside,
            center=common.pop(),
        )
    degrees = [sum(p in geometry.lines[k] for k in inside) for p in points]
    kind = HyperplaneKind.GRID if set(degrees) == {2} else HyperplaneKind.OTHER
    return Hyperplane(kind=kind, points=points, lines=inside)


def enumerate_hyperplanes(geometry: IncidenceGeometry) -> list[Hyperplane]:
    """Every geometric hyperplane, by a scan of all proper point subsets.

    Subsets are bit masks, point k in bit k, and come out in increasing
    mask order.

    Raises:
        TooManyPointsError: above HYPERPLANE_POINT_LIMIT points.
    """
    n = len(geometry.points)
    if n > HYPERPLANE_POINT_LIMIT:
        msg = f"{n} points is above the scan limit of {HYPERPLANE_POINT_LIMIT}"
        raise TooManyPointsError(msg)
    masks = np.arange(1, (1 << n) - 1, dtype=np.int64)
    valid = np.ones(len(masks), dtype=bool)
    for line in geometry.lines:
        line_mask = sum(1 << p for p in line)
        met = np.bitwise_count(masks & line_mask)
        valid &= (met == 1) | (met == len(line))
    hyperplanes = [
        _classify(geometry, tuple(p for p in range(n) if mask >> p & 1))
        for mask in masks[valid].tolist()
    ]
    census = {kind.value: 0 for kind in HyperplaneKind}
    for h in hyperplanes:
        census[h.kind.value] += 1
    logger.info("hyperplanes enumerated", points=n, total=len(hyperplanes), **census)
    return hyperplanes


def is_entangled(point: PauliElement) -> bool:
    """No tensor factor is the identity."""
    return all(a or b for a, b in zip(point.x, point.z, strict=True))


def find_hyperplane(
    hyperplanes: Sequence[Hyperplane],
    kind: HyperplaneKind,
    predicate: Callable[[Hyperplane], bool],
) -> Hyperplane:
    """The first hyperplane of a kind satisfying ``predicate``.

    Raises:
        LookupError: if there is none.
    """
    for h in hyperplanes:
        if h.kind is kind and predicate(h):
            return h
    msg = f"no {kind} hyperplane matches"
    raise LookupError(msg)


def entangled_grid(
    geometry: IncidenceGeometry, hyperplanes: Sequence[Hyperplane]
) -> Hyperplane:
    """The grid of the nine observables with no identity factor."""
    return find_hyperplane(
        hyperplanes,
        HyperplaneKind.GRID,
        lambda h: all(is_entangled(geometry.points[p]) for p in h.points),
    )


@dataclass(slots=True, frozen=True, kw_only=True)
class GridSigns:
    """Line signs of a grid, one parallel class at a time."""

    """Line indices of each parallel class"""
    classes: tuple[tuple[int, ...], tuple[int, ...]]

    """+1 or -1 per line: the triple product is that multiple of I"""
    signs: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def product(self) -> int:
        """Product of all six signs."""
        return int(np.prod([s for group in self.signs for s in group]))


def _line_sign(geometry: IncidenceGeometry, line: Line) -> int:
    product = ExactMatrix.identity(1 << geometry.points[0].n)
    for p in line:
        product = product @ pauli_to_matrix(geometry.points[p])
    if product.is_identity():
        return 1
    if (-product).is_identity():
        return -1
    msg = f"line {line} multiplies to a non-scalar"
    raise NotAGridError(msg)


def mermin_square_signs(geometry: IncidenceGeometry, grid: Hyperplane) -> GridSigns:
    """Exact signs of the observable products along the six grid lines.

    The class whose signs multiply to -1 comes first.

    Raises:
        NotAGridError: if the hyperplane is not a grid.
    """
    if grid.kind is not HyperplaneKind.GRID or len(grid.lines) != 6:  # noqa: PLR2004
        msg = f"hyperplane of kind {grid.kind} with {len(grid.lines)} lines"
        raise NotAGridError(msg)
    first = grid.lines[0]
    parallel = tuple(
        k
        for k in grid.lines
        if k == first or not set(geometry.lines[k]) & set(geometry.lines[first])
    )
    crossing = tuple(k for k in grid.lines if k not in parallel)
    if len(parallel) != 3 or len(crossing) != 3:  # noqa: PLR2004
        msg = "grid lines do not split into two parallel classes of three"
        raise NotAGridError(msg)
    signs = [
        tuple(_line_sign(geometry, geometry.lines[k]) for k in cls)
        for cls in (parallel, crossing)
    ]
    if np.prod(signs[0]) > 0 and np.prod(signs[1]) < 0:
        parallel, crossing = crossing, parallel
        signs.reverse()
    return GridSigns(classes=(parallel, crossing), signs=(signs[0], signs[1]))


def observable_group(
    points: Sequence[PauliElement], *, name: str = "observables"
) -> FiniteGroupTable[dyadic.DyadicStack]:
    """Matrix table of the group the observables generate."""
    matrices = [pauli_to_matrix(p) for p in points]
    backend = MatrixBackend(dim=1 << points[0].n)
    return enumerate_group(backend, dyadic.from_exact(matrices), name=name)


def _require_independent(points: Sequence[PauliElement]) -> None:
    for a, b in itertools.combinations(range(len(points)), 2):
        if points[a].commutes_with(points[b]):
            msg = f"{points[a]} and {points[b]} commute"
            raise NotIndependentError(msg)


def independent_set_chain(
    points: Sequence[PauliElement], up_to: int
) -> list[FiniteGroupTable[dyadic.DyadicStack]]:
    """Tables of g_k = <m_1, ..., m_k> for k = 2 .. up_to.

    Raises:
        NotIndependentError: if two of the points commute.
        ValueError: if ``up_to`` is outside 2 .. len(points).
    """
    _require_independent(points)
    if not 2 <= up_to <= len(points):  # noqa: PLR2004
        msg = f"chain length {up_to} outside 2..{len(points)}"
        raise ValueError(msg)
    return [
        observable_group(points[:k], name=f"g{k}") for k in range(2, up_to + 1)
    ]


def iter_independent_sets(n: int, size: int) -> Iterator[tuple[PauliElement, ...]]:
    """Pairwise anticommuting observables on n qubits, in lexicographic order."""
    classes = all_classes(n)
    chosen: list[int] = []

    def extend(start: int) -> Iterator[tuple[PauliElement, ...]]:
        if len(chosen) == size:
            yield tuple(classes[k] for k in chosen)
            return
        for k in range(start, len(classes)):
            if all(not classes[k].commutes_with(classes[c]) for c in chosen):
                chosen.append(k)
                yield from extend(k + 1)
                chosen.pop()

    yield from extend(0)


def line_pair_analysis(
    geometry: IncidenceGeometry, a: int, b: int
) -> FiniteGroupTable[dyadic.DyadicStack]:
    """The group two non-collinear points generate (a Dih4 in GQ(2, 2)).

    Raises:
        NotIndependentError: if the points are collinear.
    """
    pair = [geometry.points[a], geometry.points[b]]
    _require_independent(pair)
    return observable_group(pair, name=f"<{geometry.label(a)},{geometry.label(b)}>")


@dataclass(slots=True, frozen=True, kw_only=True)
class SubGeometryReport:
    """Structure of the group generated by some points."""

    points: tuple[int, ...]

    order: int

    fingerprint: GroupFingerprint

    """|Aut|, when the group is small enough to count"""
    automorphisms: int | None

    inner: int | None

    outer: int | None


def sub_geometry_group_analysis(
    geometry: IncidenceGeometry, subset: Sequence[int]
) -> SubGeometryReport:
    """Order, invariants and automorphism orders of the generated group."""
    points = tuple(sorted(subset))
    table = observable_group(
        [geometry.points[p] for p in points],
        name="<" + ",".join(geometry.label(p) for p in points) + ">",
    )
    automorphisms = inner = outer = None
    if table.order <= AUTOMORPHISM_SIZE_LIMIT:
        automorphisms = automorphism_count(table)
        inner, outer = inn_outer_orders(table, aut_order=automorphisms)
    return SubGeometryReport(
        points=points,
        order=table.order,
        fingerprint=fingerprint_of(table),
        automorphisms=automorphisms,
        inner=inner,
        outer=outer,
    )


def collinearity_edges(geometry: IncidenceGeometry) -> list[tuple[int, int]]:
    """Edges p < q of the collinearity graph, sorted."""
    adjacency = geometry.collinearity()
    return [
        (p, q)
        for p, q in itertools.combinations(range(len(geometry.points)), 2)
        if adjacency[p, q]
    ]


def collineation_count(geometry: IncidenceGeometry) -> int:
    """Number of automorphisms of the collinearity graph, by backtracking."""
    adjacency = geometry.collinearity().tolist()
    n = len(adjacency)
    image = [-1] * n
    used = [False] * n
    count = 0

    def assign(p: int) -> None:
        nonlocal count
        if p == n:
            count += 1
            return
        for q in range(n):
            if used[q]:
                continue
            if all(adjacency[p][r] == adjacency[q][image[r]] for r in range(p)):
                image[p] = q
                used[q] = True
                assign(p + 1)
                used[q] = False

    assign(0)
    return count


def preserves_lines(geometry: IncidenceGeometry, permutation: Permutation) -> bool:
    """True when the point permutation maps every line onto a line."""
    lines = set(geometry.lines)
    return all(
        tuple(sorted(permutation(p) for p in line)) in lines for line in geometry.lines
    )
