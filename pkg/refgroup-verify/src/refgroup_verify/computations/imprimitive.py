"""Orders of the imprimitive reflection groups G(m, p, n)."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from refgroup_core.constants import Backing
from refgroup_algebra.imprimitive import (
    ImprimitiveSpec,
    imprimitive_derived_order,
    imprimitive_order,
    realized_order,
)
from refgroup_verify.computations.router import Computed, router

if TYPE_CHECKING:
    from collections.abc import Mapping

    from refgroup_verify.context import BuildContext


def _spec(params: Mapping[str, Any]) -> ImprimitiveSpec:
    return ImprimitiveSpec(m=params["m"], p=params["p"], n=params["n"])


@router.register("imprimitive_order")
def order(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|G(m, p, n)| by the formula, or by enumeration with ``route`` "realized"."""
    spec = _spec(params)
    if params.get("route", "formula") == "formula":
        return Computed(value=imprimitive_order(spec), route="formula")
    value, backing = realized_order(spec)
    return Computed(value=value, route=backing)


@router.register("imprimitive_derived_order")
def derived_order(_: BuildContext, params: Mapping[str, Any]) -> Computed:
    """|G(m, p, n)'| through the permutation realization."""
    value = imprimitive_derived_order(_spec(params))
    return Computed(value=value, route=Backing.PERMUTATION)
