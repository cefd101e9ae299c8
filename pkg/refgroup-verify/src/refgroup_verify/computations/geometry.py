"""The two-qubit quadrangle, its hyperplanes and observable groups."""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING, Any

from refgroup_core.constants import Backing, GateName
from refgroup_core.matrix import standard_gate, tensor_product
from refgroup_core.pauli import clifford_action_permutation
from refgroup_algebra.automorphism import automorphism_count, inn_outer_orders
from refgroup_algebra.geometry import (
    HyperplaneKind,
    check_gq_axioms,
    collineation_count,
    entangled_grid,
    independent_set_chain,
    line_pair_analysis,
    mermin_square_signs,
    preserves_lines,
    sub_geometry_group_analysis,
)
from refgroup_verify.computations.router import Computed, router

if TYPE_CHECKING:
    from collections.abc import Mapping

    from refgroup_core.table import FiniteGroupTable
    from refgroup_algebra.geometry import GridSigns
    from refgroup_verify.context import BuildContext

_CHAIN_FIELDS = ("order", "aut", "inner", "outer")
_SPLIT = ((-1, -1, -1), (1, 1, 1))


def _grid_signs(ctx: BuildContext) -> list[GridSigns]:
    geometry = ctx.geometry()
    return ctx.constructions.get(
        "grid-signs",
        lambda: [
            mermin_square_signs(geometry, h)
            for h in ctx.hyperplanes()
            if h.kind is HyperplaneKind.GRID
        ],
    )


@router.register("gq_size")
def gq_size(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """[points, lines] of the two-qubit geometry."""
    geometry = ctx.geometry()
    return Computed(value=[len(geometry.points), len(geometry.lines)])


@router.register("gq_axioms")
def gq_axioms(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Whether every GQ(s, t) axiom holds; failing axioms go in the notes."""
    report = check_gq_axioms(ctx.geometry(), params["s"], params["t"])
    failed = [
        name
        for name in ("line_size", "point_degree", "near_linear", "antiflag")
        if not getattr(report, name)
    ]
    notes = tuple(f"{name} fails" for name in failed)
    return Computed(value=report.passed, notes=notes)


@router.register("hyperplane_census")
def hyperplane_census(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Number of hyperplanes of each kind, by exhaustive scan."""
    counts = Counter(h.kind.value for h in ctx.hyperplanes())
    return Computed(value={kind.value: counts[kind.value] for kind in HyperplaneKind})


@router.register("hyperplane_sizes")
def hyperplane_sizes(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """The distinct point counts of each kind of hyperplane."""
    sizes: dict[str, set[int]] = {}
    for h in ctx.hyperplanes():
        sizes.setdefault(h.kind.value, set()).add(len(h.points))
    return Computed(value={kind: sorted(s) for kind, s in sorted(sizes.items())})


@router.register("mermin_signs")
def mermin_signs(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Line signs of the grid of entangled observables, negative class first."""
    geometry = ctx.geometry()
    signs = mermin_square_signs(geometry, entangled_grid(geometry, ctx.hyperplanes()))
    return Computed(value={"signs": signs.signs, "product": signs.product})


@router.register("grid_products")
def grid_products(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """How many grids have each global sign product."""
    counts = Counter(signs.product for signs in _grid_signs(ctx))
    return Computed(value={str(k): v for k, v in sorted(counts.items())})


@router.register("split_grids")
def split_grids(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Number of grids whose parallel classes have signs (-,-,-) and (+,+,+)."""
    return Computed(value=sum(s.signs == _SPLIT for s in _grid_signs(ctx)))


@router.register("mermin_iff")
def mermin_iff(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Whether a negative product occurs exactly on the split grids."""
    grids = _grid_signs(ctx)
    holds = all((s.product == -1) == (s.signs == _SPLIT) for s in grids)
    negative = sum(s.product == -1 for s in grids)
    split = sum(s.signs == _SPLIT for s in grids)
    notes = (f"{negative} grids with product -1, {split} with split signs",)
    return Computed(value=holds, notes=notes)


@router.register("collineations")
def collineations(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """Automorphisms of the collinearity graph."""
    return Computed(value=collineation_count(ctx.geometry()), route="backtracking")


@router.register("clifford_preserves_lines")
def clifford_preserves_lines(
    ctx: BuildContext, _params: Mapping[str, Any]
) -> Computed:
    """Whether every generator of C2 maps lines onto lines."""
    g = GateName
    gates = [
        tensor_product(standard_gate(g.H), standard_gate(g.I)),
        tensor_product(standard_gate(g.I), standard_gate(g.H)),
        tensor_product(standard_gate(g.P), standard_gate(g.I)),
        tensor_product(standard_gate(g.I), standard_gate(g.P)),
        standard_gate(g.CZ),
    ]
    geometry = ctx.geometry()
    return Computed(
        value=all(
            preserves_lines(geometry, clifford_action_permutation(gate, 2))
            for gate in gates
        ),
        route=Backing.PERMUTATION,
    )


@router.register("line_pair")
def line_pair(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """Order of the group two non-collinear points generate."""
    geometry = ctx.geometry()
    labels = [geometry.label(p) for p in range(len(geometry.points))]
    a, b = (labels.index(word) for word in params["points"])
    return Computed(value=line_pair_analysis(geometry, a, b).order, route=Backing.TABLE)


@router.register("line_groups")
def line_groups(ctx: BuildContext, _params: Mapping[str, Any]) -> Computed:
    """How many lines generate a group of each (order, |Aut|) pair."""
    geometry = ctx.geometry()
    counts = Counter(
        (report.order, report.automorphisms)
        for report in (
            sub_geometry_group_analysis(geometry, line) for line in geometry.lines
        )
    )
    return Computed(
        value={f"{o}:{a}": n for (o, a), n in sorted(counts.items())},
        route=Backing.TABLE,
    )


def _chain(
    ctx: BuildContext, qubits: int, size: int, containing: str | None
) -> list[FiniteGroupTable[Any]]:
    key = f"chain:{qubits}:{size}:{containing}"
    return ctx.constructions.get(
        key,
        lambda: independent_set_chain(
            ctx.independent_set(qubits, size, containing), size
        ),
    )


@router.register("chain")
def chain(ctx: BuildContext, params: Mapping[str, Any]) -> Computed:
    """One invariant of g_k = <m_1, ..., m_k> for an anticommuting set.

    The set is the first one in lexicographic order of ``size`` observables
    on ``qubits`` qubits, optionally containing a given observable.
    """
    name = params.get("field", "aut")
    if name not in _CHAIN_FIELDS:
        msg = f"unknown field {name!r}; choose one of {', '.join(_CHAIN_FIELDS)}"
        raise ValueError(msg)
    key = (params["qubits"], params["size"], params.get("containing"))
    tables = _chain(ctx, *key)
    k = params["k"]
    if not 2 <= k <= len(tables) + 1:  # noqa: PLR2004
        msg = f"g{k} is outside the chain g2..g{len(tables) + 1}"
        raise ValueError(msg)
    table = tables[k - 2]
    if name == "order":
        return Computed(value=table.order, route=Backing.TABLE)
    aut = ctx.constructions.get(
        f"aut:{table.name}:{key}",
        lambda: automorphism_count(table),
    )
    inner, outer = inn_outer_orders(table, aut_order=aut)
    value = {"aut": aut, "inner": inner, "outer": outer}[name]
    return Computed(value=value, route=Backing.TABLE)
