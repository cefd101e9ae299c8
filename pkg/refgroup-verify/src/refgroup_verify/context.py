"""Named groups, their parts and reference groups, each built once per run."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from refgroup_core.pauli import parse_pauli, pauli_group_table
from refgroup_core.permutation import derived_subgroup
from refgroup_algebra.automorphism import automorphism_group
from refgroup_algebra.coxeter import (
    dihedral_group,
    root_system,
    weyl_permutation_group,
)
from refgroup_algebra.geometry import (
    enumerate_hyperplanes,
    iter_independent_sets,
    two_qubit_geometry,
)
from refgroup_algebra.imprimitive import ImprimitiveSpec, imprimitive_table
from refgroup_algebra.quantum import named_group, pauli_matrix_subgroup
from refgroup_algebra.references import (
    cyclic_group,
    direct_product,
    general_linear_group,
    special_linear_group,
    symmetric_table,
)
from refgroup_verify.cache import ConstructionCache, GroupStore
from refgroup_verify.exceptions import UnknownSubjectError

if TYPE_CHECKING:
    from collections.abc import Callable

    from refgroup_core.pauli import PauliElement
    from refgroup_core.permutation import BaseStrongGenSet
    from refgroup_core.table import FiniteGroupTable
    from refgroup_algebra.fingerprint import AnyGroup
    from refgroup_algebra.geometry import Hyperplane, IncidenceGeometry
    from refgroup_algebra.quantum import GroupHandle

_REFERENCES: dict[str, Callable[[], AnyGroup]] = {
    "Z6": lambda: cyclic_group(6),
    "Z8": lambda: cyclic_group(8),
    "S3": lambda: symmetric_table(3),
    "S4": lambda: symmetric_table(4),
    "Dih4": lambda: dihedral_group(4),
    "Dih6": lambda: dihedral_group(6),
    "SL(2,3)": lambda: special_linear_group(2, 3),
    "GL(2,3)": lambda: general_linear_group(2, 3),
    "Z2xS4": lambda: direct_product(cyclic_group(2), symmetric_table(4)),
    "Z2xS6": lambda: direct_product(cyclic_group(2), symmetric_table(6)),
    "W(B3)": lambda: weyl_permutation_group(root_system("B3")),
    "W(D5)": lambda: weyl_permutation_group(root_system("D5")),
    "G(2,2,5)": lambda: imprimitive_table(ImprimitiveSpec(m=2, p=2, n=5)),
}

REFERENCE_NAMES = tuple(_REFERENCES)

PARTS = (
    "self",
    "center",
    "derived",
    "central_quotient",
    "mod_pauli",
    "signed_image",
    "unsigned_image",
    "unsigned_image_derived",
)


@dataclass(slots=True, kw_only=True)
class BuildContext:
    """Everything claims share during one run.

    Constructions are keyed by name and built behind a per-key lock, so
    claims on different threads never build the same group twice. Matrix
    tables, permutation images and automorphism groups also go through
    ``store``, which may keep them on disk between runs.
    """

    constructions: ConstructionCache = field(default_factory=ConstructionCache)

    store: GroupStore = field(default_factory=lambda: GroupStore(root=None))

    def group(self, name: str) -> GroupHandle:
        """One of the named quantum groups, C1 ... magic."""
        return self.constructions.get(
            f"group:{name}", lambda: named_group(name, store=self.store)
        )

    def pauli_table(self, n: int) -> FiniteGroupTable[Any]:
        """P_n as a table of symplectic elements."""
        return self.constructions.get(f"pauli:{n}", lambda: pauli_group_table(n))

    def pauli_automorphisms(self, n: int) -> BaseStrongGenSet:
        """Aut(P_n) as a permutation group on the elements of P_n."""
        return self.constructions.get(
            f"aut-pauli:{n}",
            lambda: self.store.permutation_group(
                f"automorphisms\nP{n}",
                lambda: automorphism_group(self.pauli_table(n)),
            ),
        )

    def central_quotient_automorphisms(self, n: int) -> BaseStrongGenSet:
        """Aut(P_n / Z(P_n)) as a permutation group on the quotient."""
        return self.constructions.get(
            f"aut-pauli-quotient:{n}",
            lambda: self.store.permutation_group(
                f"automorphisms\nP{n}~",
                lambda: automorphism_group(self.pauli_table(n).central_quotient()),
            ),
        )

    def part(self, name: str, part: str = "self") -> AnyGroup:
        """A group derived from a named group.

        Raises:
            UnknownSubjectError: for parts not in PARTS.
            InvalidSpecError: for table parts of permutation-held groups.
        """
        if part not in PARTS:
            msg = f"unknown part {part!r}; choose one of {', '.join(PARTS)}"
            raise UnknownSubjectError(msg)
        return self.constructions.get(
            f"part:{name}:{part}", lambda: self._build_part(name, part)
        )

    def _build_part(self, name: str, part: str) -> AnyGroup:
        handle = self.group(name)
        match part:
            case "signed_image":
                return handle.action_image(signed=True)
            case "unsigned_image":
                return handle.action_image(signed=False)
            case "unsigned_image_derived":
                return derived_subgroup(handle.action_image(signed=False))
        table = handle.require_table()
        match part:
            case "center":
                return table.center()
            case "derived":
                return table.derived()
            case "central_quotient":
                return table.central_quotient()
            case "mod_pauli":
                paulis = pauli_matrix_subgroup(table, handle.qubits)
                return table.quotient(paulis, name=f"{name}/P{handle.qubits}")
            case _:
                return table

    def reference(self, name: str) -> AnyGroup:
        """A reference group to identify against.

        Raises:
            UnknownSubjectError: for names not in REFERENCE_NAMES.
        """
        build = _REFERENCES.get(name)
        if build is None:
            choices = ", ".join(_REFERENCES)
            msg = f"unknown reference {name!r}; choose one of {choices}"
            raise UnknownSubjectError(msg)
        return self.constructions.get(f"reference:{name}", build)

    def geometry(self) -> IncidenceGeometry:
        """GQ(2, 2) on the two-qubit observables."""
        return self.constructions.get("geometry", two_qubit_geometry)

    def hyperplanes(self) -> list[Hyperplane]:
        """Every hyperplane of the two-qubit geometry."""
        return self.constructions.get(
            "hyperplanes", lambda: enumerate_hyperplanes(self.geometry())
        )

    def independent_set(
        self, qubits: int, size: int, containing: str | None = None
    ) -> tuple[PauliElement, ...]:
        """First pairwise anticommuting set in lexicographic order.

        Raises:
            UnknownSubjectError: if no set of that size contains ``containing``.
        """
        required = None if containing is None else parse_pauli(containing)
        for chosen in iter_independent_sets(qubits, size):
            if required is None or required in chosen:
                return chosen
        msg = f"no {size} anticommuting observables on {qubits} qubits"
        if containing is not None:
            msg += f" contain {containing}"
        raise UnknownSubjectError(msg)
