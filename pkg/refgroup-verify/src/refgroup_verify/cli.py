"""The ``refgroup`` command line."""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import TYPE_CHECKING

from refgroup_core.exceptions import RefGroupError
from refgroup_core.log import get_logger
from refgroup_algebra.coxeter import (
    cartan_matrix_of_type,
    coxeter_group_order,
    parse_cartan_type,
    root_system,
    weight_lattice_matrix,
    weyl_permutation_group,
)
from refgroup_algebra.geometry import (
    check_gq_axioms,
    entangled_grid,
    enumerate_hyperplanes,
    mermin_square_signs,
    two_qubit_geometry,
)
from refgroup_algebra.imprimitive import (
    ImprimitiveSpec,
    imprimitive_derived_order,
    realized_order,
)
from refgroup_algebra.quantum import GROUP_NAMES, named_group
from refgroup_verify import __version__
from refgroup_verify.cache import ResultCache
from refgroup_verify.computations import router
from refgroup_verify.config import ReportFormat, Settings
from refgroup_verify.registry import filter_claims, load_registry
from refgroup_verify.report import emit_report, exit_code
from refgroup_verify.runner import run_claims

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = get_logger(__name__)


def _write(*lines: object) -> None:
    sys.stdout.write("".join(f"{line}\n" for line in lines))


def _verify(args: argparse.Namespace) -> int:
    settings = Settings.resolve(
        cache=args.cache,
        no_cache=args.no_cache,
        workers=args.workers,
        report_format=args.format,
        timings=args.timings,
    )
    registry = load_registry(args.registry)
    claims = filter_claims(registry, args.filter)
    results = run_claims(
        claims, cache=ResultCache(root=settings.cache_dir), workers=settings.workers
    )
    sys.stdout.write(
        emit_report(
            results,
            settings.report_format,
            citations={c.id: c.citation for c in claims},
            timings=settings.timings,
        )
    )
    return exit_code(results)


def _claims(args: argparse.Namespace) -> int:
    claims = filter_claims(load_registry(args.registry), args.filter)
    width = max((len(c.id) for c in claims), default=0)
    for c in claims:
        _write(f"{c.id.ljust(width)}  {c.severity.value:<13}  {c.citation}")
    return 0


def _computations(_: argparse.Namespace) -> int:
    _write(*router.names())
    return 0


def _group(args: argparse.Namespace) -> int:
    handle = named_group(args.name)
    _write(
        f"group:      {handle.name}",
        f"backing:    {handle.backing}",
        f"generators: {', '.join(handle.generators)}",
    )
    if handle.table is not None:
        table = handle.table
        _write(
            f"order:      {table.order}",
            f"center:     {table.center().order}",
            f"derived:    {table.derived().order}",
        )
    else:
        _write(f"kernel:     {handle.action}")
    _write(
        f"G/Z(G):     {handle.central_quotient_order()}",
        f"unsigned:   {handle.action_image(signed=False).order()}",
    )
    return 0


def _coxeter(args: argparse.Namespace) -> int:
    cartan_type = parse_cartan_type(args.type)
    system = root_system(cartan_type)
    _write(
        f"type:       {cartan_type}",
        f"roots:      {len(system.roots)}",
        f"|W|:        {coxeter_group_order(cartan_type)} (degrees)",
        f"|W|:        {weyl_permutation_group(system).order()} (realized)",
    )
    if cartan_type.is_crystallographic:
        cartan = cartan_matrix_of_type(cartan_type)
        _write("cartan:", *(f"  {list(row)}" for row in cartan))
        try:
            lattice = weight_lattice_matrix(cartan_type)
        except RefGroupError as e:
            _write(f"weights:    {e}")
        else:
            _write("weights:", *(f"  {list(row)}" for row in lattice))
    return 0


def _impref(args: argparse.Namespace) -> int:
    spec = ImprimitiveSpec(m=args.m, p=args.p, n=args.n)
    order, backing = realized_order(spec)
    _write(
        f"group:      {spec}",
        f"order:      {spec.order} (formula)",
        f"order:      {order} ({backing})",
        f"derived:    {imprimitive_derived_order(spec)}",
    )
    return 0


def _geometry(_: argparse.Namespace) -> int:
    geometry = two_qubit_geometry()
    hyperplanes = enumerate_hyperplanes(geometry)
    census = Counter(h.kind.value for h in hyperplanes)
    signs = mermin_square_signs(geometry, entangled_grid(geometry, hyperplanes))
    _write(
        f"points:     {len(geometry.points)}",
        f"lines:      {len(geometry.lines)}",
        f"GQ(2,2):    {check_gq_axioms(geometry, 2, 2).passed}",
        "census:     " + ", ".join(f"{k} {v}" for k, v in sorted(census.items())),
        f"mermin:     {signs.signs} product {signs.product}",
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="refgroup",
        description="Exact finite group computations and claim verification.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run the claim registry")
    verify.add_argument("--registry", type=Path, help="registry file (shipped one)")
    verify.add_argument("--cache", help="cache directory")
    verify.add_argument("--no-cache", action="store_true", help="disable the cache")
    verify.add_argument("--filter", help="only claims whose id has this prefix")
    verify.add_argument(
        "--format",
        choices=[f.value for f in ReportFormat],
        default=ReportFormat.HUMAN.value,
    )
    verify.add_argument("--workers", type=int, help="claims evaluated in parallel")
    verify.add_argument(
        "--timings", action="store_true", help="keep wall times in machine records"
    )
    verify.set_defaults(handler=_verify)

    claims = commands.add_parser("claims", help="list registered claims")
    claims.add_argument("--registry", type=Path)
    claims.add_argument("--filter")
    claims.set_defaults(handler=_claims)

    computations = commands.add_parser(
        "computations", help="list computations a constructor may name"
    )
    computations.set_defaults(handler=_computations)

    group = commands.add_parser("group", help="summarize a named group")
    group.add_argument("name", choices=GROUP_NAMES)
    group.set_defaults(handler=_group)

    coxeter = commands.add_parser("coxeter", help="summarize a Coxeter type")
    coxeter.add_argument("type", help="e.g. E6, D5, I2(4)")
    coxeter.set_defaults(handler=_coxeter)

    impref = commands.add_parser("impref", help="summarize G(m, p, n)")
    for name in ("m", "p", "n"):
        impref.add_argument(name, type=int)
    impref.set_defaults(handler=_impref)

    geometry = commands.add_parser("geometry", help="summarize GQ(2, 2)")
    geometry.set_defaults(handler=_geometry)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except RefGroupError as e:
        logger.error("command failed", command=args.command, error=str(e))
        sys.stderr.write(f"refgroup: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"refgroup: {e}\n")
        return 2
