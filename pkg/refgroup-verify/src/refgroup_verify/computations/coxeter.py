"""Root systems, Weyl groups and weight lattices."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

from refgroup_core.constants import Backing
from refgroup_algebra.coxeter import (
    coxeter_group_order,
    maximal_subgroup_indices,
    named_presentation,
    root_system,
    weight_lattice_matrix,
    weyl_derived_order,
    weyl_permutation_group,
    weyl_witness,
)
from refgroup_algebra.fingerprint import EvidenceLevel
from refgroup_verify.computations.router import Computed, router

if TYPE_CHECKING:
    from collections.abc import Mapping

    from refgroup_algebra.coxeter import RootSystem
    from refgroup_verify.context import BuildContext


def _system(ctx: BuildContext, name: str) -> RootSystem:
    return ctx.constructions.get(f"roots:{name}", lambda: root_system(name))


@router.register("root_count")
def root_count(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Number of roots generated from the simple roots."""
    return Computed(value=len(_system(ctx, params["type"]).roots))


@router.register("root_system_checks")
def root_system_checks(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Whether the generated system is reduced, closed and crystallographic."""
    system = _system(ctx, params["type"])
    return Computed(
        value={
            "reduced": system.is_reduced(),
            "closed": system.is_closed(),
            "crystallographic": system.is_crystallographic(),
        }
    )


@router.register("weyl_order")
def weyl_order(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|W| of the simple reflections acting on the roots."""
    name = params["type"]
    group = ctx.constructions.get(
        f"weyl:{name}", lambda: weyl_permutation_group(_system(ctx, name))
    )
    return Computed(value=group.order(), route=Backing.PERMUTATION)


@router.register("weyl_derived_order")
def weyl_derived(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|W'| through the permutation realization."""
    order = weyl_derived_order(_system(ctx, params["type"]))
    return Computed(value=order, route=Backing.PERMUTATION)


@router.register("coxeter_order")
def coxeter_order(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|W| as the product of the invariant degrees."""
    return Computed(value=coxeter_group_order(params["type"]), route="formula")


@router.register("symplectic_order")
def symplectic_order(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|Sp(2k, q)| = q^(k^2) (q^2 - 1)(q^4 - 1) ... (q^2k - 1)."""
    k, q = params["rank"], params["q"]
    order = q ** (k * k) * math.prod(q ** (2 * i) - 1 for i in range(1, k + 1))
    return Computed(value=order, route="formula")


@router.register("weight_lattice")
def weight_lattice(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """det(C) C^-1 for a crystallographic type."""
    return Computed(value=weight_lattice_matrix(params["type"]), route="formula")


@router.register("weyl_witness")
def realized_witness(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Simple reflections satisfying a printed presentation, by diagram matching."""
    system = _system(ctx, params["type"])
    presentation = named_presentation(params["presentation"])
    witness = weyl_witness(system, presentation)
    if witness is None:
        return Computed(
            value=EvidenceLevel.NONE.name,
            evidence=EvidenceLevel.NONE.name,
            route=Backing.PERMUTATION,
            notes=(f"no diagram match of {presentation.name} on {system.name}",),
        )
    level = EvidenceLevel.PRESENTATION_WITNESS.name
    return Computed(
        value=level,
        evidence=level,
        route=Backing.PERMUTATION,
        notes=(f"reflections generate a group of order {witness.group_order}",),
    )


@router.register("maximal_indices")
def maximal_indices(_: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Indices in W(E6) of three of its maximal subgroups."""
    return Computed(value=maximal_subgroup_indices(), route="formula")
