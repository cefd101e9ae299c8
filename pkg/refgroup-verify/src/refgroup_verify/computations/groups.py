"""Orders, identifications and subgroup facts for the named quantum groups."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from refgroup_core.constants import Backing, GateName
from refgroup_core.matrix import standard_gate
from refgroup_core.permutation import BaseStrongGenSet
from refgroup_algebra.coxeter import named_presentation, presentation_witness
from refgroup_algebra.fingerprint import (
    EvidenceLevel,
    IsoTarget,
    iso_evidence,
    order_of,
)
from refgroup_algebra.imprimitive import shephard_todd_presentation
from refgroup_algebra.presentation import search_witness
from refgroup_algebra.quantum import (
    SplitStatus,
    central_quotient_routes,
    embed_table,
    non_normality_witness,
    pauli_matrix_subgroup,
    split_check,
    yang_baxter_check,
)
from refgroup_verify.computations.router import Computed, router, witness_computed

if TYPE_CHECKING:
    from collections.abc import Mapping

    from refgroup_algebra.fingerprint import AnyGroup
    from refgroup_verify.context import BuildContext


def _route(group: AnyGroup) -> Backing:
    if isinstance(group, BaseStrongGenSet):
        return Backing.PERMUTATION
    return Backing.TABLE


@router.register("order")
def group_order(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|G| for a named group or one of its parts."""
    group = ctx.part(params["group"], params.get("part", "self"))
    return Computed(value=order_of(group), route=_route(group))


@router.register("identify")
def identify(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Climbs the evidence ladder against a reference group.

    ``level`` caps the climb and defaults to a fingerprint comparison. The
    computed value is the name of the level reached.
    """
    group = ctx.part(params["group"], params.get("part", "self"))
    presentation = None
    if (name := params.get("presentation")) is not None:
        presentation = named_presentation(name).as_presentation()
    target = IsoTarget(
        name=params["reference"],
        reference=ctx.reference(params["reference"]),
        presentation=presentation,
    )
    requested = EvidenceLevel[params.get("level", "FINGERPRINT_MATCH")]
    evidence = iso_evidence(group, target, requested=requested)
    return Computed(
        value=evidence.level.name,
        evidence=evidence.level.name,
        route=_route(group),
        notes=evidence.notes,
    )


@router.register("witness")
def coxeter_witness(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Searches a group for involutions satisfying a Coxeter presentation."""
    group = ctx.part(params["group"], params.get("part", "self"))
    search = presentation_witness(group, named_presentation(params["presentation"]))
    return witness_computed(search)


@router.register("shephard_todd_witness")
def shephard_todd_witness(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Searches a group for a generating tuple of a Shephard-Todd presentation."""
    group = ctx.group(params["group"]).require_table()
    presentation, order = shephard_todd_presentation(params["number"])
    return witness_computed(search_witness(group, presentation, expected_order=order))


@router.register("center_order")
def center_order(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|Z(G)| from the table."""
    return Computed(value=order_of(ctx.part(params["group"], "center")))


@router.register("index2_count")
def index2_count(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Number of index-2 subgroups, all of them normal."""
    table = ctx.group(params["group"]).require_table()
    return Computed(value=table.count_index2(), route=Backing.TABLE)


@router.register("central_quotient_routes")
def quotient_routes(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|G/Z(G)| from the table and from the signed Pauli action, in that order."""
    by_table, by_action = central_quotient_routes(ctx.group(params["group"]))
    return Computed(value=[by_table, by_action], route=Backing.TABLE)


@router.register("split")
def split(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Whether the named group splits over its Pauli subgroup."""
    handle = ctx.group(params["group"])
    table = handle.require_table()
    paulis = pauli_matrix_subgroup(table, handle.qubits)
    result = split_check(table, paulis)
    notes = (f"{result.tried} lifts tried",)
    return Computed(
        value=result.status.value,
        route=Backing.TABLE,
        notes=notes,
        unknown=result.status is SplitStatus.UNKNOWN,
    )


@router.register("subgroup")
def subgroup(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Embeds one matrix group in another and tests normality."""
    big = ctx.group(params["group"]).require_table()
    small = embed_table(big, ctx.group(params["subgroup"]).require_table())
    witness = non_normality_witness(big, small)
    notes: tuple[str, ...] = ()
    if witness is not None:
        g, h = witness
        notes = (f"conjugating {h} by {g} leaves {small.name}",)
    return Computed(
        value={
            "embedded": True,
            "normal": big.is_normal(small),
            "witness": witness is not None,
        },
        route=Backing.TABLE,
        notes=notes,
    )


@router.register("yang_baxter")
def yang_baxter(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """The braid relation and unitarity for a named two qubit gate."""
    report = yang_baxter_check(standard_gate(GateName(params["gate"])))
    return Computed(value={"holds": report.holds, "unitary": report.unitary})

