"""The Pauli, Clifford, Bell and magic groups of one to three qubits.

One and two qubit groups are enumerated as exact matrix tables. Three qubit
groups are too large for that and are held through their conjugation action
on Pauli classes instead: the signed action has the scalars as kernel, the
unsigned one the scalars times the Pauli group.
"""

from __future__ import annotations

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING, Any

import numpy as np

from refgroup_core import dyadic
from refgroup_core.backends import MatrixBackend, SubgroupBackend
from refgroup_core.constants import (
    CAYLEY_TABLE_LIMIT,
    MINIMAL_GENERATORS_LIMIT,
    SPLIT_SEARCH_BUDGET,
    Backing,
    GateName,
)
from refgroup_core.exceptions import (
    CapExceededError,
    ClosureViolationError,
    DimensionMismatchError,
    GroupTooLargeError,
)
from refgroup_core.log import get_logger
from refgroup_core.matrix import ExactMatrix, standard_gate, tensor_product
from refgroup_core.pauli import (
    pauli_action_image,
    pauli_generators,
    pauli_group_table,
    pauli_to_matrix,
)
from refgroup_core.permutation import derived_subgroup
from refgroup_core.table import enumerate_group
from refgroup_algebra.automorphism import (
    automorphism_count,
    automorphism_group,
    inn_outer_orders,
    minimal_generators,
    outer_automorphism_table,
)
from refgroup_algebra.coxeter import named_presentation, presentation_witness
from refgroup_algebra.exceptions import InvalidSpecError
from refgroup_algebra.fingerprint import fingerprint_of
from refgroup_algebra.references import general_linear_order

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import IdArray
    from refgroup_algebra.fingerprint import GroupFingerprint
    from refgroup_algebra.presentation import WitnessSearch

logger = get_logger(__name__)

_SIGNED_KERNEL = "scalars"
_UNSIGNED_KERNEL = "scalars times Paulis"


def _word(*names: GateName) -> tuple[str, ExactMatrix]:
    """A tensor product of one and two qubit gates with its printed form."""
    return "(x)".join(names), tensor_product(*(standard_gate(n) for n in names))


@dataclass(slots=True, frozen=True, kw_only=True)
class GroupHandle:
    """A named group with the route it is held by.

    Table handles carry the enumerated matrix group. Permutation handles
    carry the images of the group in its actions on signed and unsigned
    Pauli classes, whose kernels are recorded in ``action``.
    """

    name: str

    backing: Backing

    """Number of qubits the gates act on"""
    qubits: int

    """Printed generator words, such as "H(x)CZ" """
    generators: tuple[str, ...]

    """The generator matrices"""
    gates: tuple[ExactMatrix, ...] = field(repr=False)

    """Which action the permutation images come from, and its kernel"""
    action: str = ""

    table: FiniteGroupTable[Any] | None = field(default=None, repr=False)

    """Image on signed Pauli classes"""
    signed_image: BaseStrongGenSet | None = field(default=None, repr=False)

    """Image on unsigned Pauli classes"""
    unsigned_image: BaseStrongGenSet | None = field(default=None, repr=False)

    @property
    def order(self) -> int | None:
        """|G| for tables; None when only images modulo scalars are held."""
        return None if self.table is None else self.table.order

    def require_table(self) -> FiniteGroupTable[Any]:
        """The enumerated table.

        Raises:
            InvalidSpecError: for permutation handles.
        """
        if self.table is None:
            msg = f"{self.name} is held as a permutation group, not a table"
            raise InvalidSpecError(msg)
        return self.table

    def action_image(self, *, signed: bool) -> BaseStrongGenSet:
        """Image of the group in its action on Pauli classes."""
        stored = self.signed_image if signed else self.unsigned_image
        if stored is not None:
            return stored
        return pauli_action_image(self.gates, self.qubits, signed=signed)

    def central_quotient_order(self) -> int:
        """|G/Z(G)| from the table, else the signed image order."""
        if self.table is not None:
            return self.table.central_quotient().order
        return self.action_image(signed=True).order()

    def center_order(self) -> int | None:
        """|Z(G)|, known only for tables."""
        return None if self.table is None else self.table.center().order

    def derived_order(self) -> int:
        """|G'| for tables, |(G/scalars)'| for permutation handles."""
        if self.table is not None:
            return self.table.derived().order
        return derived_subgroup(self.action_image(signed=True)).order()


class ConstructionStore(metaclass=ABCMeta):
    """Keeps group constructions between runs, keyed by a construction spec.

    A construction spec names what was built and from which generators. Two
    constructions with the same construction spec give the same group with
    the same ids.
    """

    @abstractmethod
    def table(
        self,
        spec: str,
        *,
        name: str,
        backend: MatrixBackend,
        generators: dyadic.DyadicStack,
        build: Callable[[], FiniteGroupTable[dyadic.DyadicStack]],
    ) -> FiniteGroupTable[dyadic.DyadicStack]:
        """The stored table for ``spec``, or the result of ``build``."""

    @abstractmethod
    def permutation_group(
        self, spec: str, build: Callable[[], BaseStrongGenSet]
    ) -> BaseStrongGenSet:
        """The stored group for ``spec``, or the result of ``build``."""


def construction_spec(kind: str, name: str, gates: Sequence[ExactMatrix]) -> str:
    """Text identifying a construction: its kind, name and generator matrices."""
    return "\n".join([kind, name, *(g.serialize() for g in gates)])


def _table_handle(
    name: str,
    qubits: int,
    words: Sequence[tuple[str, ExactMatrix]],
    store: ConstructionStore | None = None,
) -> GroupHandle:
    gates = tuple(m for _, m in words)
    backend = MatrixBackend(dim=2**qubits)
    generators = dyadic.from_exact(list(gates))

    def build() -> FiniteGroupTable[dyadic.DyadicStack]:
        return enumerate_group(backend, generators, name=name)

    if store is None:
        table = build()
    else:
        table = store.table(
            construction_spec("table", name, gates),
            name=name,
            backend=backend,
            generators=generators,
            build=build,
        )
    logger.info("group enumerated", group=name, order=table.order)
    return GroupHandle(
        name=name,
        backing=Backing.TABLE,
        qubits=qubits,
        generators=tuple(w for w, _ in words),
        gates=gates,
        table=table,
    )


def _stored_image(
    name: str,
    gates: tuple[ExactMatrix, ...],
    qubits: int,
    *,
    signed: bool,
    store: ConstructionStore | None,
) -> BaseStrongGenSet:
    def build() -> BaseStrongGenSet:
        return pauli_action_image(gates, qubits, signed=signed)

    if store is None:
        return build()
    kind = "signed image" if signed else "unsigned image"
    return store.permutation_group(construction_spec(kind, name, gates), build)


def _permutation_handle(
    name: str,
    qubits: int,
    words: Sequence[tuple[str, ExactMatrix]],
    store: ConstructionStore | None = None,
) -> GroupHandle:
    gates = tuple(m for _, m in words)
    signed = _stored_image(name, gates, qubits, signed=True, store=store)
    unsigned = _stored_image(name, gates, qubits, signed=False, store=store)
    logger.info(
        "group held by its pauli action",
        group=name,
        signed_order=signed.order(),
        unsigned_order=unsigned.order(),
    )
    return GroupHandle(
        name=name,
        backing=Backing.PERMUTATION,
        qubits=qubits,
        generators=tuple(w for w, _ in words),
        gates=gates,
        action=(
            f"conjugation on Pauli classes; kernel {_SIGNED_KERNEL} (signed), "
            f"{_UNSIGNED_KERNEL} (unsigned)"
        ),
        signed_image=signed,
        unsigned_image=unsigned,
    )


def clifford_group(n: int, *, store: ConstructionStore | None = None) -> GroupHandle:
    """The Clifford group on n = 1, 2 or 3 qubits.

    C1 = <H, P>. C2 adds CZ to the local generators H(x)I, I(x)H, P(x)I and
    I(x)P. C3 is generated by H(x)H(x)P, H(x)CZ and CZ(x)H and is held through
    its Pauli action.
    """
    g = GateName
    match n:
        case 1:
            return _table_handle("C1", 1, [_word(g.H), _word(g.P)], store)
        case 2:
            words = [
                _word(g.H, g.I),
                _word(g.I, g.H),
                _word(g.P, g.I),
                _word(g.I, g.P),
                _word(g.CZ),
            ]
            return _table_handle("C2", 2, words, store)
        case 3:
            words = [_word(g.H, g.H, g.P), _word(g.H, g.CZ), _word(g.CZ, g.H)]
            return _permutation_handle("C3", 3, words, store)
        case _:
            msg = f"Clifford groups are built for one to three qubits, not {n}"
            raise InvalidSpecError(msg)


def bell_group(n: int, *, store: ConstructionStore | None = None) -> GroupHandle:
    """The Bell group on two or three qubits, built from the Bell matrix R."""
    g = GateName
    match n:
        case 2:
            words = [_word(g.H, g.H), _word(g.H, g.P), _word(g.R)]
            return _table_handle("B2", 2, words, store)
        case 3:
            words = [_word(g.H, g.H, g.P), _word(g.H, g.R), _word(g.R, g.H)]
            return _permutation_handle("B3", 3, words, store)
        case _:
            msg = f"Bell groups are built for two or three qubits, not {n}"
            raise InvalidSpecError(msg)


def magic_group(*, store: ConstructionStore | None = None) -> GroupHandle:
    """<T, H> with T = zeta P H, a copy of GL(2, 3) inside C1."""
    words = [_word(GateName.T), _word(GateName.H)]
    return _table_handle("magic", 1, words, store)


def pauli_handle(n: int) -> GroupHandle:
    """The Pauli group as a table of symplectic elements."""
    paulis = pauli_generators(n)
    return GroupHandle(
        name=f"P{n}",
        backing=Backing.TABLE,
        qubits=n,
        generators=tuple(str(p) for p in paulis),
        gates=tuple(pauli_to_matrix(p) for p in paulis),
        table=pauli_group_table(n),
    )


_NAMED: dict[str, Callable[[ConstructionStore | None], GroupHandle]] = {
    "C1": lambda store: clifford_group(1, store=store),
    "C2": lambda store: clifford_group(2, store=store),
    "C3": lambda store: clifford_group(3, store=store),
    "B2": lambda store: bell_group(2, store=store),
    "B3": lambda store: bell_group(3, store=store),
    "P1": lambda _: pauli_handle(1),
    "P2": lambda _: pauli_handle(2),
    "P3": lambda _: pauli_handle(3),
    "magic": lambda store: magic_group(store=store),
}

GROUP_NAMES = tuple(_NAMED)


def named_group(name: str, *, store: ConstructionStore | None = None) -> GroupHandle:
    """Builds one of the groups in GROUP_NAMES.

    Matrix tables and permutation images go through ``store`` when given.

    Raises:
        InvalidSpecError: for other names.
    """
    try:
        build = _NAMED[name]
    except KeyError:
        msg = f"unknown group {name!r}; choose one of {', '.join(GROUP_NAMES)}"
        raise InvalidSpecError(msg) from None
    return build(store)


def pauli_matrix_subgroup(
    table: FiniteGroupTable[dyadic.DyadicStack], n: int
) -> FiniteGroupTable[IdArray]:
    """P_n inside a table of 2^n x 2^n matrices.

    Raises:
        ClosureViolationError: if a Pauli generator is not in the table, or
            the generators do not give 4^(n+1) elements.
    """
    matrices = [pauli_to_matrix(p) for p in pauli_generators(n)]
    ids = table.locate(dyadic.from_exact(matrices))
    paulis = table.subgroup(ids, name=f"P{n}")
    if paulis.order != 4 ** (n + 1):
        msg = f"P{n} inside {table.name} has {paulis.order} elements"
        raise ClosureViolationError(msg)
    return paulis


def clifford_mod_pauli(
    n: int, *, clifford: GroupHandle | None = None
) -> FiniteGroupTable[IdArray]:
    """C_n / P_n for one or two qubits.

    Raises:
        NotNormalError: if P_n is not normal in the table.
    """
    handle = clifford_group(n) if clifford is None else clifford
    table = handle.require_table()
    return table.quotient(pauli_matrix_subgroup(table, n), name=f"C{n}/P{n}")


def unsigned_image_order(handle: GroupHandle) -> int:
    """Order of the group modulo scalars and Paulis."""
    return handle.action_image(signed=False).order()


def central_quotient_routes(handle: GroupHandle) -> tuple[int, int]:
    """|G/Z(G)| from the table and from the signed Pauli action.

    The two agree exactly when the center of G is its scalar subgroup.
    """
    table = handle.require_table()
    by_table = table.central_quotient().order
    by_action = handle.action_image(signed=True).order()
    logger.info(
        "central quotient routes",
        group=handle.name,
        table=by_table,
        action=by_action,
    )
    return by_table, by_action


def embed_table(
    big: FiniteGroupTable[dyadic.DyadicStack],
    small: FiniteGroupTable[dyadic.DyadicStack],
) -> FiniteGroupTable[IdArray]:
    """``small`` as a subgroup table of ``big``, on matrices of the same size.

    Raises:
        ClosureViolationError: if some element of ``small`` is not in ``big``.
    """
    big.locate(small.elements)
    gens = small.backend.take(small.elements, np.asarray(small.generators))
    return big.subgroup(big.locate(gens), name=small.name)


def non_normality_witness(
    group: FiniteGroupTable[Any], subgroup: FiniteGroupTable[Any]
) -> tuple[int, int] | None:
    """(g, h) with g h g^-1 outside the subgroup, both as ids of ``group``."""
    for g in group.generators:
        for h in subgroup.generators:
            parent_h = int(subgroup.elements[h])
            image = int(group.conjugate_ids(parent_h, g)[0])
            if not subgroup.contains_parent_id(image):
                return g, parent_h
    return None


@dataclass(slots=True, frozen=True, kw_only=True)
class YangBaxterReport:
    """Outcome of evaluating both sides of the braid relation."""

    """(R(x)I)(I(x)R)(R(x)I) == (I(x)R)(R(x)I)(I(x)R), entry by entry"""
    holds: bool

    unitary: bool


def yang_baxter_check(r: ExactMatrix) -> YangBaxterReport:
    """Checks the Yang-Baxter relation for a two qubit matrix exactly.

    Raises:
        DimensionMismatchError: unless R is 4 x 4.
    """
    if r.dim != 4:  # noqa: PLR2004
        msg = f"Yang-Baxter check needs a 4 x 4 matrix, got {r.dim} x {r.dim}"
        raise DimensionMismatchError(msg)
    identity = ExactMatrix.identity(2)
    left = tensor_product(r, identity)
    right = tensor_product(identity, r)
    return YangBaxterReport(
        holds=left @ right @ left == right @ left @ right,
        unitary=r.is_unitary(),
    )


@dataclass(slots=True, frozen=True, kw_only=True)
class PauliAutomorphisms:
    """Structure of Aut(P_n)."""

    qubits: int

    order: int

    inner: int

    outer: int

    """|Aut(P_n)'|"""
    derived_order: int

    derived_fingerprint: GroupFingerprint | None = None

    """B3 relations on Aut(P_1)"""
    witness: WitnessSearch | None = None

    """G2 relations on Out(P_1)"""
    outer_witness: WitnessSearch | None = None


def aut_group_of_pauli(
    n: int, *, automorphisms: BaseStrongGenSet | None = None
) -> PauliAutomorphisms:
    """Aut(P_n) for one or two qubits as a permutation group on P_n.

    One qubit also gets presentation witnesses: B3 on Aut and G2 on Out.
    Two qubits get the fingerprint of the derived subgroup. ``automorphisms``
    skips the search when Aut(P_n) is already known.

    Raises:
        GroupTooLargeError: for n = 3.
    """
    table = pauli_group_table(n)
    aut = automorphism_group(table) if automorphisms is None else automorphisms
    order = aut.order()
    inner, outer = inn_outer_orders(table, aut_order=order)
    derived = derived_subgroup(aut)
    if n == 1:
        out_table = outer_automorphism_table(table, automorphisms=aut)
        return PauliAutomorphisms(
            qubits=n,
            order=order,
            inner=inner,
            outer=outer,
            derived_order=derived.order(),
            witness=presentation_witness(aut, named_presentation("B3")),
            outer_witness=presentation_witness(out_table, named_presentation("G2")),
        )
    return PauliAutomorphisms(
        qubits=n,
        order=order,
        inner=inner,
        outer=outer,
        derived_order=derived.order(),
        derived_fingerprint=fingerprint_of(derived),
    )


def aut_of_central_quotient(n: int, *, direct: bool = False) -> int:
    """|Aut(P_n / Z(P_n))|.

    The quotient is elementary abelian of rank 2n, so the answer is
    |GL(2n, 2)|. With ``direct`` the automorphisms of the quotient table are
    counted instead, which is only feasible for small n.

    Raises:
        GroupTooLargeError: with ``direct`` for more than two qubits.
    """
    if not direct:
        return general_linear_order(2 * n, 2)
    if n > 2:  # noqa: PLR2004
        msg = f"Aut(P{n}~) is too large to enumerate, count it with direct=False"
        raise GroupTooLargeError(msg)
    return automorphism_count(pauli_group_table(n).central_quotient())


class SplitStatus(StrEnum):
    """Outcome of a complement search."""

    SPLIT = "split"
    NON_SPLIT = "non-split"
    UNKNOWN = "unknown"


@dataclass(slots=True, frozen=True, kw_only=True)
class SplitResult:
    """A complement search outcome."""

    status: SplitStatus

    """Ids of G generating a complement, when one was found"""
    complement: tuple[int, ...] | None = None

    """Number of lifts tried"""
    tried: int = 0


def split_check(
    group: FiniteGroupTable[Any],
    normal: FiniteGroupTable[Any],
    *,
    budget: int = SPLIT_SEARCH_BUDGET,
) -> SplitResult:
    """Searches for a complement H of N in G, so G = N semidirect H.

    Generators q_1..q_k of G/N are lifted one at a time to elements of their
    cosets. A tuple of lifts is kept while <lifts> meets N trivially, which
    holds exactly when it has the order of <q_1..q_j>. Every complement is
    generated by such lifts, so an exhausted search proves non-splitting.

    Raises:
        NotSubgroupError: if ``normal`` is not a subgroup table of ``group``.
        NotNormalError: if it is not normal.
    """
    if group.order <= CAYLEY_TABLE_LIMIT:
        group.cayley_table()
    cosets = group.cosets(normal)
    quotient = enumerate_group(
        cosets,
        cosets.coset_of[list(group.generators)],
        name=f"{group.name}/{normal.name}",
        cap=len(cosets.representatives),
    )
    if quotient.order == 1:
        return SplitResult(status=SplitStatus.SPLIT, complement=())
    if quotient.order <= MINIMAL_GENERATORS_LIMIT:
        qgens = minimal_generators(quotient)
    else:
        qgens = quotient.generators
    stage_orders = [
        quotient.subgroup(qgens[: j + 1]).order for j in range(len(qgens))
    ]
    lifts = [cosets.members(int(quotient.elements[q])).tolist() for q in qgens]
    backend = SubgroupBackend(parent=group)
    tried = 0

    def extend(chosen: list[int]) -> list[int] | None:
        nonlocal tried
        j = len(chosen)
        if j == len(lifts):
            return chosen
        for x in lifts[j]:
            if tried >= budget:
                return None
            tried += 1
            try:
                enumerate_group(
                    backend,
                    np.asarray([*chosen, x], dtype=np.int64),
                    name="<complement candidate>",
                    cap=stage_orders[j],
                )
            except CapExceededError:
                continue
            if (found := extend([*chosen, x])) is not None:
                return found
        return None

    found = extend([])
    if found is not None:
        status = SplitStatus.SPLIT
    elif tried >= budget:
        status = SplitStatus.UNKNOWN
    else:
        status = SplitStatus.NON_SPLIT
    logger.info(
        "complement search finished",
        group=group.name,
        normal=normal.name,
        status=status,
        tried=tried,
    )
    return SplitResult(
        status=status,
        complement=None if found is None else tuple(found),
        tried=tried,
    )
