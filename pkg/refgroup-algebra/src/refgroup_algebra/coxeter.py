"""Root systems, Cartan matrices and finite Coxeter groups.

Roots are exact rational vectors. A Weyl group is realized as the
permutation group its simple reflections induce on the root list, and its
order comes out of Schreier-Sims. Dihedral groups I2(m) are built from the
rotation/flip normal form instead, so every m stays exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import sympy

from refgroup_core.backends import ElementBackend
from refgroup_core.constants import (
    ROOT_CLOSURE_CAP,
    WITNESS_ORDER_LIMIT,
    WITNESS_SEARCH_BUDGET,
)
from refgroup_core.exceptions import ParseError
from refgroup_core.log import get_logger
from refgroup_core.permutation import (
    BaseStrongGenSet,
    Permutation,
    derived_subgroup,
    perm_group_table,
    schreier_sims,
)
from refgroup_core.table import enumerate_group
from refgroup_algebra.exceptions import (
    NonIntegralResultError,
    NonTerminatingError,
    NotCrystallographicError,
    UnsupportedTypeError,
)
from refgroup_algebra.presentation import (
    Presentation,
    Witness,
    WitnessSearch,
    evaluate_word,
    search_witness,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import IntMatrix

logger = get_logger(__name__)

type Vector = tuple[Fraction, ...]

_TYPE = re.compile(r"([A-I])\(?(\d+)\)?(?:\((\d+)\))?")

_HALF = Fraction(1, 2)

# Degrees of the basic invariants; the group order is their product.
_EXCEPTIONAL_DEGREES = {
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
    ("F", 4): (2, 6, 8, 12),
    ("G", 2): (2, 6),
}

# Products of Cartan integers C[i][j] C[j][i] to the Coxeter label m[i][j].
_LABELS = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(slots=True, frozen=True)
class CartanType:
    """A finite irreducible type such as A3, E6 or I2(5)."""

    """Series letter"""
    family: str

    """Rank"""
    rank: int

    """Label of I2(m); None for the other series"""
    m: int | None = None

    def __str__(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def is_crystallographic(self) -> bool:
        """All types except H and I2(m) with m outside {2, 3, 4, 6}."""
        return self.family != "I" or self.m in {2, 3, 4, 6}


def parse_cartan_type(text: str) -> CartanType:
    """Parses ``A2``, ``A(2)``, ``E6``, ``I2(4)`` and the like.

    Raises:
        ParseError: if the text is not a type symbol.
        UnsupportedTypeError: for H3, H4 and impossible ranks.
    """
    match = _TYPE.fullmatch(text.strip())
    if match is None:
        msg = f"{text!r} is not a Cartan type"
        raise ParseError(msg)
    family, rank, label = match.group(1), int(match.group(2)), match.group(3)
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,  # noqa: PLR2004
        "C": rank >= 2,  # noqa: PLR2004
        "D": rank >= 2,  # noqa: PLR2004
        "E": rank in {6, 7, 8},
        "F": rank == 4,  # noqa: PLR2004
        "G": rank == 2,  # noqa: PLR2004
        "I": rank == 2 and label is not None and int(label) >= 2,  # noqa: PLR2004
    }
    if family == "H":
        msg = f"{text} is not crystallographic and has no rational realization"
        raise UnsupportedTypeError(msg)
    if not valid.get(family, False) or (label is not None and family != "I"):
        msg = f"unsupported Cartan type {text!r}"
        raise UnsupportedTypeError(msg)
    return CartanType(family, rank, int(label) if label is not None else None)


def _unit(k: int, dim: int, scale: Fraction | int = 1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[k] = Fraction(scale)
    return v


def _diff(i: int, j: int, dim: int) -> Vector:
    """e_i - e_j."""
    v = _unit(i, dim)
    v[j] -= 1
    return tuple(v)


def _e8_simple_roots() -> list[Vector]:
    first = tuple([_HALF] + [-_HALF] * 6 + [_HALF])
    second = tuple(Fraction(v) for v in (1, 1, 0, 0, 0, 0, 0, 0))
    rest = [_diff(k + 1, k, 8) for k in range(6)]
    return [first, second, *rest]


def simple_roots(cartan_type: CartanType) -> list[Vector]:
    """Standard simple roots in rational coordinates, Bourbaki numbering.

    E6 and E7 are the first six and seven E8 roots and keep eight
    coordinates. I2(3), I2(4) and I2(6) reuse A2, B2 and G2.

    Raises:
        UnsupportedTypeError: for I2(m) without a rational realization.
    """
    family, n = cartan_type.family, cartan_type.rank
    match family:
        case "A":
            return [_diff(k, k + 1, n + 1) for k in range(n)]
        case "B":
            return [_diff(k, k + 1, n) for k in range(n - 1)] + [tuple(_unit(n - 1, n))]
        case "C":
            return [_diff(k, k + 1, n) for k in range(n - 1)] + [
                tuple(_unit(n - 1, n, 2))
            ]
        case "D":
            last = _unit(n - 2, n)
            last[n - 1] = Fraction(1)
            return [_diff(k, k + 1, n) for k in range(n - 1)] + [tuple(last)]
        case "E":
            return _e8_simple_roots()[:n]
        case "F":
            return [
                _diff(1, 2, 4),
                _diff(2, 3, 4),
                tuple(_unit(3, 4)),
                (_HALF, -_HALF, -_HALF, -_HALF),
            ]
        case "G":
            return [_diff(0, 1, 3), tuple(Fraction(v) for v in (-2, 1, 1))]
        case _:
            rational = {
                2: [tuple(_unit(0, 2)), tuple(_unit(1, 2))],
                3: simple_roots(CartanType("A", 2)),
                4: simple_roots(CartanType("B", 2)),
                6: simple_roots(CartanType("G", 2)),
            }
            if cartan_type.m not in rational:
                msg = f"{cartan_type} has no rational root realization"
                raise UnsupportedTypeError(msg)
            return rational[cartan_type.m]


def dot(x: Vector, y: Vector) -> Fraction:
    """Exact Euclidean inner product."""
    return sum((a * b for a, b in zip(x, y, strict=True)), Fraction(0))


def reflect(x: Vector, alpha: Vector) -> Vector:
    """s_alpha(x) = x - 2 (x, alpha) / (alpha, alpha) alpha."""
    c = 2 * dot(x, alpha) / dot(alpha, alpha)
    return tuple(a - c * b for a, b in zip(x, alpha, strict=True))


def _direction(v: Vector) -> Vector:
    """The multiple of v whose first nonzero coordinate is 1; shared by -v."""
    lead = next(a for a in v if a != 0)
    return tuple(a / lead for a in v)


@dataclass(slots=True, frozen=True, kw_only=True)
class RootSystem:
    """A finite root system, roots listed in closure discovery order."""

    """Type label, e.g. ``E6``"""
    name: str

    """Simple roots; they come first in ``roots``"""
    simple_roots: tuple[Vector, ...]

    """All roots"""
    roots: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        """Number of ambient coordinates."""
        return len(self.roots[0]) if self.roots else 0

    @property
    def rank(self) -> int:
        """Number of simple roots."""
        return len(self.simple_roots)

    @property
    def coroots(self) -> tuple[Vector, ...]:
        """alpha_check = 2 alpha / (alpha, alpha), in root order."""
        return tuple(
            tuple(2 * a / dot(alpha, alpha) for a in alpha) for alpha in self.roots
        )

    def index(self) -> dict[Vector, int]:
        """Root to position in ``roots``."""
        return {root: k for k, root in enumerate(self.roots)}

    def reflection_permutation(self, alpha: Vector) -> Permutation:
        """The permutation s_alpha induces on the root list."""
        where = self.index()
        return Permutation(images=tuple(where[reflect(r, alpha)] for r in self.roots))

    def is_reduced(self) -> bool:
        """Only +alpha and -alpha lie on the line through a root."""
        lines: dict[Vector, int] = {}
        for root in self.roots:
            key = _direction(root)
            lines[key] = lines.get(key, 0) + 1
        return all(count == 2 for count in lines.values())  # noqa: PLR2004

    def is_closed(self) -> bool:
        """Every root reflection maps the root set into itself."""
        members = set(self.roots)
        return all(
            reflect(beta, alpha) in members
            for alpha in self.roots
            for beta in self.roots
        )

    def is_crystallographic(self) -> bool:
        """All 2 (beta, alpha) / (alpha, alpha) are integers."""
        return all(
            (2 * dot(beta, alpha) / dot(alpha, alpha)).denominator == 1
            for alpha in self.roots
            for beta in self.roots
        )


def generate_root_system(
    simple: Sequence[Vector], *, name: str = "", cap: int = ROOT_CLOSURE_CAP
) -> RootSystem:
    """Closure of the simple roots under the simple reflections.

    Raises:
        ValueError: if the simple roots are linearly dependent.
        NonTerminatingError: once more than ``cap`` vectors appear.
    """
    simple = [tuple(Fraction(a) for a in v) for v in simple]
    if sympy.Matrix(simple).rank() != len(simple):
        msg = "simple roots are linearly dependent"
        raise ValueError(msg)
    roots = list(simple)
    seen = set(roots)
    frontier = list(simple)
    while frontier:
        fresh: list[Vector] = []
        for beta in frontier:
            for alpha in simple:
                image = reflect(beta, alpha)
                if image in seen:
                    continue
                if len(roots) >= cap:
                    raise NonTerminatingError(cap)
                seen.add(image)
                roots.append(image)
                fresh.append(image)
        frontier = fresh
    logger.debug("root system generated", name=name, roots=len(roots))
    return RootSystem(name=name, simple_roots=tuple(simple), roots=tuple(roots))


def root_system(cartan_type: CartanType | str) -> RootSystem:
    """Root system of a crystallographic type."""
    if isinstance(cartan_type, str):
        cartan_type = parse_cartan_type(cartan_type)
    return generate_root_system(simple_roots(cartan_type), name=str(cartan_type))


def cartan_matrix(simple: Sequence[Vector]) -> IntMatrix:
    """C[i][j] = 2 (a_i, a_j) / (a_j, a_j).

    Raises:
        NotCrystallographicError: if some entry is not an integer.
    """
    rows = []
    for a in simple:
        row = []
        for b in simple:
            value = 2 * dot(a, b) / dot(b, b)
            if value.denominator != 1:
                msg = f"Cartan entry {value} is not an integer"
                raise NotCrystallographicError(msg)
            row.append(int(value))
        rows.append(tuple(row))
    return tuple(rows)


def cartan_matrix_of_type(cartan_type: CartanType | str) -> IntMatrix:
    """Cartan matrix from the standard simple roots.

    Raises:
        NotCrystallographicError: for I2(m) with m outside {2, 3, 4, 6}.
    """
    if isinstance(cartan_type, str):
        cartan_type = parse_cartan_type(cartan_type)
    if not cartan_type.is_crystallographic:
        msg = f"{cartan_type} is not crystallographic"
        raise NotCrystallographicError(msg)
    return cartan_matrix(simple_roots(cartan_type))


def weight_lattice_matrix(cartan_type: CartanType | str) -> IntMatrix:
    """det(C) C^-1 as an integer matrix.

    Raises:
        NotCrystallographicError: for non-crystallographic types.
        NonIntegralResultError: if an entry is fractional.
    """
    c = sympy.Matrix(cartan_matrix_of_type(cartan_type))
    scaled = c.inv() * c.det()
    if not all(entry.is_integer for entry in scaled):
        msg = f"det(C) C^-1 of {cartan_type} has fractional entries"
        raise NonIntegralResultError(msg)
    return tuple(
        tuple(int(scaled[i, j]) for j in range(c.cols)) for i in range(c.rows)
    )


def coxeter_group_order(cartan_type: CartanType | str) -> int:
    """|W| as the product of the degrees of the basic invariants."""
    if isinstance(cartan_type, str):
        cartan_type = parse_cartan_type(cartan_type)
    return math.prod(degrees(cartan_type))


def degrees(cartan_type: CartanType) -> tuple[int, ...]:
    """Degrees of the basic polynomial invariants of W."""
    n = cartan_type.rank
    match cartan_type.family:
        case "A":
            return tuple(range(2, n + 2))
        case "B" | "C":
            return tuple(range(2, 2 * n + 1, 2))
        case "D":
            return tuple(sorted([*range(2, 2 * n - 1, 2), n]))
        case "I":
            return (2, cartan_type.m or 2)
        case family:
            return _EXCEPTIONAL_DEGREES[family, n]


def weyl_permutation_group(system: RootSystem) -> BaseStrongGenSet:
    """Group generated by the simple reflections, acting on the roots."""
    generators = [system.reflection_permutation(a) for a in system.simple_roots]
    group = schreier_sims(generators, degree=len(system.roots))
    logger.info("weyl group realized", name=system.name, order=group.order())
    return group


def weyl_derived_order(system: RootSystem) -> int:
    """Order of the commutator subgroup W'."""
    return derived_subgroup(weyl_permutation_group(system)).order()


@dataclass(slots=True, frozen=True, kw_only=True)
class CoxeterPresentation:
    """Involutions s_i with (s_i s_j)^m[i][j] = 1."""

    """Label used in logs and reports"""
    name: str

    """Symmetric matrix with unit diagonal and off-diagonal entries >= 2"""
    m: IntMatrix

    """Finite type this presents, when known"""
    cartan_type: CartanType | None = None

    def __post_init__(self) -> None:
        n = len(self.m)
        for i in range(n):
            if len(self.m[i]) != n or self.m[i][i] != 1:
                msg = f"{self.name}: row {i} is not a Coxeter matrix row"
                raise ValueError(msg)
            for j in range(n):
                label = self.m[i][j]
                if i != j and (label < 2 or label != self.m[j][i]):  # noqa: PLR2004
                    msg = f"{self.name}: bad label at ({i}, {j})"
                    raise ValueError(msg)

    @property
    def rank(self) -> int:
        """Number of generating involutions."""
        return len(self.m)

    def as_presentation(self) -> Presentation:
        """Relators s_i^2 and (s_i s_j)^m for i < j."""
        relators = [((i, 2),) for i in range(self.rank)]
        relators.extend(
            ((i, 1), (j, 1)) * self.m[i][j]
            for i in range(self.rank)
            for j in range(i + 1, self.rank)
        )
        return Presentation(
            name=self.name, generators=self.rank, relators=tuple(relators)
        )

    @classmethod
    def from_presentation(
        cls, presentation: Presentation, *, cartan_type: CartanType | None = None
    ) -> CoxeterPresentation:
        """Reads the labels off relators of the forms x_i^2 and (x_i x_j)^m.

        Raises:
            ParseError: if some relator has another shape or a pair of
                generators has no relation.
        """
        n = presentation.generators
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for word in presentation.relators:
            if len(word) == 1 and abs(word[0][1]) == 2:  # noqa: PLR2004
                continue
            pair = {g for g, _ in word}
            alternating = len(pair) == 2 and all(  # noqa: PLR2004
                e == 1 and g != word[k - 1][0] for k, (g, e) in enumerate(word)
            )
            if not alternating or len(word) % 2:
                msg = f"{presentation.name}: relator {word} is not a Coxeter relation"
                raise ParseError(msg)
            i, j = sorted(pair)
            m[i][j] = m[j][i] = len(word) // 2
        missing = [(i, j) for i in range(n) for j in range(n) if m[i][j] == 0]
        if missing:
            i, j = missing[0]
            msg = f"{presentation.name}: no relation between x{i + 1} and x{j + 1}"
            raise ParseError(msg)
        return cls(
            name=presentation.name,
            m=tuple(tuple(row) for row in m),
            cartan_type=cartan_type,
        )


def coxeter_matrix(cartan_type: CartanType | str) -> IntMatrix:
    """Coxeter labels of a finite type."""
    if isinstance(cartan_type, str):
        cartan_type = parse_cartan_type(cartan_type)
    if cartan_type.family == "I":
        label = cartan_type.m or 2
        return ((1, label), (label, 1))
    return coxeter_matrix_of_roots(simple_roots(cartan_type))


def coxeter_presentation(cartan_type: CartanType | str) -> CoxeterPresentation:
    """Standard presentation of a finite type."""
    if isinstance(cartan_type, str):
        cartan_type = parse_cartan_type(cartan_type)
    return CoxeterPresentation(
        name=str(cartan_type), m=coxeter_matrix(cartan_type), cartan_type=cartan_type
    )


# Printed relation chains; the E6 chain spells out every commuting pair.
_PRINTED = {
    "B3": ("B3", "x1^2=x2^2=x3^2=(x1x2)^3=(x2x3)^4=(x1x3)^2=1"),
    "G2": ("G2", "x1^2=x2^2=(x1x2)^6=1"),
    "E6": (
        "E6",
        "x1^2=x2^2=x3^2=x4^2=x5^2=x6^2="
        "(x1x2)^2=(x2x3)^2=(x1x4)^2=(x1x5)^2=(x2x5)^2="
        "(x3x5)^2=(x1x6)^2=(x2x6)^2=(x3x6)^2=(x4x6)^2="
        "(x3x1)^3=(x4x2)^3=(x4x3)^3=(x5x4)^3=(x6x5)^3=1",
    ),
    "hexagonal": (None, "x1^2=x2^2=x3^2=(x1x2)^3=(x2x3)^6=(x1x3)^2=1"),
}


def named_presentation(name: str) -> CoxeterPresentation:
    """A printed presentation (B3, G2, E6, hexagonal) or a standard one by type.

    ``hexagonal`` is the affine Coxeter group of the hexagonal tiling. It is
    infinite, so it carries no type and is never realized.
    """
    if name in _PRINTED:
        type_name, text = _PRINTED[name]
        return CoxeterPresentation.from_presentation(
            Presentation.from_text(name, text),
            cartan_type=parse_cartan_type(type_name) if type_name else None,
        )
    return coxeter_presentation(name)


def diagram_match(
    source: CoxeterPresentation, target: CoxeterPresentation
) -> list[tuple[int, ...]]:
    """All relabelings sigma with source.m[i][j] == target.m[sigma i][sigma j]."""
    n = source.rank
    if target.rank != n:
        return []
    matches: list[tuple[int, ...]] = []
    assignment: list[int] = []

    def extend() -> None:
        i = len(assignment)
        if i == n:
            matches.append(tuple(assignment))
            return
        for k in range(n):
            if k in assignment:
                continue
            if all(
                source.m[i][j] == target.m[k][assignment[j]] for j in range(i)
            ):
                assignment.append(k)
                extend()
                assignment.pop()

    extend()
    return matches


def weyl_witness(
    system: RootSystem, presentation: CoxeterPresentation
) -> Witness[Permutation] | None:
    """Simple reflections satisfying ``presentation``, found by diagram matching.

    The first match in lexicographic order is used and every relation is
    re-checked on the permutations, so no search over group elements is
    needed.
    """
    standard = CoxeterPresentation(
        name=system.name, m=coxeter_matrix_of_roots(system.simple_roots)
    )
    matches = diagram_match(presentation, standard)
    if not matches:
        logger.info(
            "no diagram match", presentation=presentation.name, system=system.name
        )
        return None
    reflections = [system.reflection_permutation(a) for a in system.simple_roots]
    images = tuple(reflections[k] for k in matches[0])
    unit = Permutation.identity(len(system.roots))
    for word in presentation.as_presentation().relators:
        value = evaluate_word(
            word,
            images,
            mul=Permutation.__mul__,
            inverse=Permutation.inverse,
            unit=unit,
        )
        if not value.is_identity():
            return None
    order = schreier_sims(images, degree=len(system.roots)).order()
    return Witness(presentation=presentation.name, images=images, group_order=order)


def presentation_witness(
    group: FiniteGroupTable[Any] | BaseStrongGenSet,
    presentation: CoxeterPresentation,
    *,
    budget: int = WITNESS_SEARCH_BUDGET,
) -> WitnessSearch:
    """Searches a concrete group for involutions satisfying ``presentation``.

    When the presentation carries a finite type, the group must have the
    order of that Coxeter group, so a witness identifies the two. Permutation
    groups are enumerated into a table first, within the brute-force limit.
    Realized Weyl groups should go through weyl_witness instead.
    """
    expected = None
    if presentation.cartan_type is not None:
        expected = coxeter_group_order(presentation.cartan_type)
    if isinstance(group, BaseStrongGenSet):
        order = group.order()
        if order > WITNESS_ORDER_LIMIT:
            reason = f"permutation group of order {order} is too large to search"
            return WitnessSearch(witness=None, visited=0, reason=reason)
        group = perm_group_table(group, name=f"<{presentation.name} candidate>")
    return search_witness(
        group, presentation.as_presentation(), expected_order=expected, budget=budget
    )


def coxeter_matrix_of_roots(simple: Sequence[Vector]) -> IntMatrix:
    """Coxeter labels read off the Cartan matrix of simple roots."""
    c = cartan_matrix(simple)
    n = len(c)
    return tuple(
        tuple(1 if i == j else _LABELS[c[i][j] * c[j][i]] for j in range(n))
        for i in range(n)
    )


def dihedral_group(m: int) -> FiniteGroupTable[list[tuple[int, int]]]:
    """Dih_m of order 2m, elements r^k s^f as pairs (k, f).

    The generators are the reflections s and r s, whose product has order m.

    Raises:
        ValueError: for m < 2.
    """
    if m < 2:  # noqa: PLR2004
        msg = f"dihedral groups need m >= 2, got {m}"
        raise ValueError(msg)

    def mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        sign = -1 if a[1] else 1
        return ((a[0] + sign * b[0]) % m, a[1] ^ b[1])

    def inv(a: tuple[int, int]) -> tuple[int, int]:
        return a if a[1] else (-a[0] % m, 0)

    backend = ElementBackend[tuple[int, int]](mul=mul, inv=inv, unit=(0, 0))
    return enumerate_group(backend, [(0, 1), (1, 1)], name=f"Dih{m}")


def maximal_subgroup_indices() -> dict[str, int]:
    """Indices in W(E6) of W(D5), W(F4) and A6.2^2 (order 1440)."""
    whole = coxeter_group_order("E6")
    subgroups = {
        "W(D5)": coxeter_group_order("D5"),
        "W(F4)": coxeter_group_order("F4"),
        "A6.2^2": math.factorial(6) // 2 * 4,
    }
    return {name: whole // order for name, order in subgroups.items()}
