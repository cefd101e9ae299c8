"""Isomorphism invariants and the evidence ladder behind identifications.

An identification "G is X" is backed at one of four strengths: the orders
agree, a set of invariants agrees, G satisfies a presentation of X with the
right order, or an explicit isomorphism to a table of X was found. Each
level implies the weaker ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from enum import IntEnum
from typing import TYPE_CHECKING, Any

from refgroup_core.constants import (
    AUTOMORPHISM_SIZE_LIMIT,
    PERMUTATION_TABLE_LIMIT,
    WITNESS_ORDER_LIMIT,
)
from refgroup_core.log import get_logger
from refgroup_core.permutation import BaseStrongGenSet, derived_series, perm_group_table
from refgroup_algebra.automorphism import find_isomorphism
from refgroup_algebra.presentation import search_witness

if TYPE_CHECKING:
    from refgroup_core.table import FiniteGroupTable
    from refgroup_core.typedefs import Images
    from refgroup_algebra.presentation import Presentation, Witness

logger = get_logger(__name__)

type AnyGroup = FiniteGroupTable[Any] | BaseStrongGenSet


class EvidenceLevel(IntEnum):
    """Strength of an identification, weakest first."""

    NONE = 0
    ORDER_MATCH = 1
    FINGERPRINT_MATCH = 2
    PRESENTATION_WITNESS = 3
    EXPLICIT_ISOMORPHISM = 4


@dataclass(slots=True, frozen=True, kw_only=True)
class GroupFingerprint:
    """Isomorphism invariants; None where a permutation group is too large."""

    order: int

    """|Z(G)|"""
    center_order: int | None

    """|G|, |G'|, |G''|, ... until stable"""
    derived_series: tuple[int, ...]

    """Prime-power invariants of G/G'"""
    abelian_invariants: tuple[int, ...] | None

    """Sorted (element order, count) pairs"""
    order_histogram: tuple[tuple[int, int], ...] | None

    exponent: int | None

    def differences(self, other: GroupFingerprint) -> list[str]:
        """Names of the invariants known on both sides that disagree."""
        out = []
        for f in fields(self):
            mine, theirs = getattr(self, f.name), getattr(other, f.name)
            if mine is not None and theirs is not None and mine != theirs:
                out.append(f.name)
        return out

    def matches(self, other: GroupFingerprint) -> bool:
        """True when no invariant known on both sides disagrees."""
        return not self.differences(other)


def _table_fingerprint(table: FiniteGroupTable[Any]) -> GroupFingerprint:
    return GroupFingerprint(
        order=table.order,
        center_order=table.center().order,
        derived_series=table.derived_series(),
        abelian_invariants=table.abelian_invariants(),
        order_histogram=table.order_histogram(),
        exponent=table.exponent,
    )


def as_table(group: AnyGroup, *, name: str = "group") -> FiniteGroupTable[Any] | None:
    """The group itself, or its permutation group enumerated when small enough."""
    if not isinstance(group, BaseStrongGenSet):
        return group
    if group.order() > PERMUTATION_TABLE_LIMIT:
        return None
    return perm_group_table(group, name=name)


def fingerprint_of(group: AnyGroup) -> GroupFingerprint:
    """Invariants of a table, or of a permutation group.

    Permutation groups up to PERMUTATION_TABLE_LIMIT are enumerated and get
    every invariant. Larger ones only get their order and derived series.
    """
    if not isinstance(group, BaseStrongGenSet):
        return _table_fingerprint(group)
    if group.order() <= PERMUTATION_TABLE_LIMIT:
        return _table_fingerprint(perm_group_table(group, name="group"))
    return GroupFingerprint(
        order=group.order(),
        center_order=None,
        derived_series=derived_series(group),
        abelian_invariants=None,
        order_histogram=None,
        exponent=None,
    )


def order_of(group: AnyGroup) -> int:
    """|G| for either kind of group."""
    if isinstance(group, BaseStrongGenSet):
        return group.order()
    return group.order


@dataclass(slots=True, frozen=True, kw_only=True)
class IsoTarget:
    """What a group is claimed to be isomorphic to."""

    """Label such as "W(B3)" or "GL(2,3)" """
    name: str

    """Expected order, when no reference group gives it"""
    order: int | None = None

    """A constructed copy of the target"""
    reference: AnyGroup | None = field(default=None, repr=False)

    """A presentation of the target whose group has the expected order"""
    presentation: Presentation | None = None

    def expected_order(self) -> int | None:
        """Order from the reference, else the stated one."""
        if self.reference is not None:
            return order_of(self.reference)
        return self.order


@dataclass(slots=True, frozen=True, kw_only=True)
class IsoEvidence:
    """The strongest evidence reached for one identification."""

    target: str

    level: EvidenceLevel

    """Invariants of the group under test"""
    fingerprint: GroupFingerprint | None = None

    """Invariants of the reference, if one was given"""
    reference_fingerprint: GroupFingerprint | None = None

    witness: Witness[int] | None = None

    """images[x] for every id of the group under test"""
    isomorphism: Images | None = None

    """Why higher levels were not reached"""
    notes: tuple[str, ...] = ()


def iso_evidence(
    group: AnyGroup,
    target: IsoTarget,
    *,
    requested: EvidenceLevel = EvidenceLevel.EXPLICIT_ISOMORPHISM,
) -> IsoEvidence:
    """Climbs the evidence ladder as far as ``requested`` allows.

    A failed fingerprint comparison stops the climb. A presentation witness
    or an explicit isomorphism proves the identification, so either one
    counts even when no reference fingerprint was available.
    """
    notes: list[str] = []
    order = order_of(group)
    expected = target.expected_order()
    if expected is not None and order != expected:
        notes.append(f"order {order} differs from {expected}")
        return IsoEvidence(
            target=target.name, level=EvidenceLevel.NONE, notes=tuple(notes)
        )
    level = EvidenceLevel.ORDER_MATCH if expected is not None else EvidenceLevel.NONE

    fingerprint = reference_fingerprint = None
    if requested >= EvidenceLevel.FINGERPRINT_MATCH and target.reference is not None:
        fingerprint = fingerprint_of(group)
        reference_fingerprint = fingerprint_of(target.reference)
        if differing := fingerprint.differences(reference_fingerprint):
            notes.append("fingerprints differ in " + ", ".join(differing))
            return IsoEvidence(
                target=target.name,
                level=level,
                fingerprint=fingerprint,
                reference_fingerprint=reference_fingerprint,
                notes=tuple(notes),
            )
        level = EvidenceLevel.FINGERPRINT_MATCH

    table = None
    if requested >= EvidenceLevel.PRESENTATION_WITNESS and order <= WITNESS_ORDER_LIMIT:
        table = as_table(group, name=f"<{target.name} candidate>")

    witness = None
    if (
        requested >= EvidenceLevel.PRESENTATION_WITNESS
        and target.presentation is not None
    ):
        if table is None:
            notes.append("group too large for a witness search")
        elif expected is None:
            notes.append("no order to check a witness against")
        else:
            search = search_witness(table, target.presentation, expected_order=expected)
            witness = search.witness
            if witness is None:
                notes.append(f"no presentation witness: {search.reason}")
            else:
                level = EvidenceLevel.PRESENTATION_WITNESS

    isomorphism = None
    if requested >= EvidenceLevel.EXPLICIT_ISOMORPHISM:
        reference = None if target.reference is None else as_table(target.reference)
        if table is None or reference is None:
            notes.append("no reference table for an explicit isomorphism")
        elif table.order > AUTOMORPHISM_SIZE_LIMIT:
            notes.append(f"order {table.order} too large for an isomorphism search")
        else:
            isomorphism = find_isomorphism(table, reference)
            if isomorphism is None:
                notes.append("no isomorphism to the reference exists")
            else:
                level = EvidenceLevel.EXPLICIT_ISOMORPHISM

    logger.info(
        "identification checked", target=target.name, order=order, level=level.name
    )
    return IsoEvidence(
        target=target.name,
        level=level,
        fingerprint=fingerprint,
        reference_fingerprint=reference_fingerprint,
        witness=witness,
        isomorphism=isomorphism,
        notes=tuple(notes),
    )


def index2_fingerprints(table: FiniteGroupTable[Any]) -> list[GroupFingerprint]:
    """Fingerprints of every index-2 subgroup of a table."""
    return [
        _table_fingerprint(table.subgroup_from_members(members))
        for members in table.index2_subgroups()
    ]
