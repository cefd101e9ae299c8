"""Automorphism groups of the Pauli groups and of their central quotients."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any

from refgroup_core.constants import Backing
from refgroup_algebra.fingerprint import EvidenceLevel, IsoTarget, iso_evidence
from refgroup_algebra.quantum import aut_group_of_pauli, aut_of_central_quotient
from refgroup_verify.computations.router import Computed, router, witness_computed

if TYPE_CHECKING:
    from collections.abc import Mapping

    from refgroup_algebra.quantum import PauliAutomorphisms
    from refgroup_verify.context import BuildContext

_FIELDS = ("order", "inner", "outer", "derived_order")


def _structure(ctx: BuildContext, n: int) -> PauliAutomorphisms:
    return ctx.constructions.get(
        f"aut-structure:{n}",
        lambda: aut_group_of_pauli(n, automorphisms=ctx.pauli_automorphisms(n)),
    )


@router.register("pauli_aut")
def pauli_aut(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """One of |Aut(P_n)|, |Inn|, |Out| or |Aut(P_n)'|, by generator images."""
    name = params.get("field", "order")
    if name not in _FIELDS:
        msg = f"unknown field {name!r}; choose one of {', '.join(_FIELDS)}"
        raise ValueError(msg)
    structure = _structure(ctx, params["qubits"])
    return Computed(value=getattr(structure, name), route=Backing.PERMUTATION)


@router.register("pauli_aut_witness")
def pauli_aut_witness(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """The B3 witness on Aut(P_1) or the G2 witness on Out(P_1)."""
    structure = _structure(ctx, 1)
    outer = params["which"] == "outer"
    search = structure.outer_witness if outer else structure.witness
    if search is None:
        msg = f"no {params['which']} witness search for P{structure.qubits}"
        raise ValueError(msg)
    return witness_computed(search)


@router.register("aut_central_quotient")
def aut_central_quotient(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|Aut(P_n / Z)| from |GL(2n, 2)|, or by counting when ``direct``."""
    direct = bool(params.get("direct", False))
    order = aut_of_central_quotient(params["qubits"], direct=direct)
    return Computed(value=order, route=Backing.TABLE if direct else "formula")


@router.register("aut_central_quotient_identify")
def aut_central_quotient_identify(
    ctx: BuildContext, params: Mapping[str, Any]
) -> Computed:
    """Identifies Aut(P_n / Z) with a reference group, up to an isomorphism."""
    aut = ctx.central_quotient_automorphisms(params["qubits"])
    target = IsoTarget(
        name=params["reference"], reference=ctx.reference(params["reference"])
    )
    evidence = iso_evidence(aut, target, requested=EvidenceLevel.EXPLICIT_ISOMORPHISM)
    return Computed(
        value=evidence.level.name,
        evidence=evidence.level.name,
        route=Backing.PERMUTATION,
        notes=evidence.notes,
    )


@router.register("aut_ratio")
def aut_ratio(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|G/Z(G)| next to |Aut(P_n)|, with a note saying which is larger."""
    handle = ctx.group(params["group"])
    quotient = handle.central_quotient_order()
    aut = _structure(ctx, handle.qubits).order
    sides = {f"{handle.name}~": quotient, f"Aut(P{handle.qubits})": aut}
    if quotient == aut:
        note = f"{' and '.join(sides)} both have order {aut}"
    else:
        larger, smaller = sorted(sides, key=sides.__getitem__, reverse=True)
        factor = Fraction(sides[larger], sides[smaller])
        note = (
            f"{larger} ({sides[larger]}) is larger than {smaller} "
            f"({sides[smaller]}) by a factor of {factor}"
        )
    return Computed(value=[quotient, aut], route=handle.backing, notes=(note,))
