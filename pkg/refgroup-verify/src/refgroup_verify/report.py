"""Human and machine renderings of a run."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

from refgroup_verify.config import ReportFormat
from refgroup_verify.models import ClaimStatus

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from refgroup_verify.models import ClaimResult

_COLUMNS = ("CLAIM", "STATUS", "COMPUTED", "EVIDENCE", "ROUTE", "CITATION")
_COMPUTED_WIDTH = 40


def _short(value: object) -> str:
    text = json.dumps(value, separators=(",", ":"))
    if len(text) > _COMPUTED_WIDTH:
        return text[: _COMPUTED_WIDTH - 3] + "..."
    return text


def summary_line(results: Sequence[ClaimResult]) -> str:
    """"FAILED: k of n" when a required claim failed, else the status counts."""
    failed = sum(r.status is ClaimStatus.FAIL for r in results)
    if failed:
        return f"FAILED: {failed} of {len(results)}"
    counts = {status: 0 for status in ClaimStatus}
    for r in results:
        counts[r.status] += 1
    parts = ", ".join(f"{counts[s]} {s.value.lower()}" for s in ClaimStatus)
    return f"OK: {len(results)} claims ({parts})"


def render_human(
    results: Sequence[ClaimResult], citations: Mapping[str, str]
) -> str:
    """An aligned table, one row per claim, notes indented below their row."""
    rows = [_COLUMNS]
    notes: list[tuple[str, ...]] = [()]
    for r in results:
        rows.append(
            (
                r.claim_id,
                r.status.value,
                "-" if r.computed is None else _short(r.computed),
                r.evidence or "-",
                r.route or "-",
                citations.get(r.claim_id, "-"),
            )
        )
        notes.append(r.notes if r.status is not ClaimStatus.PASS else ())
    widths = [max(len(row[k]) for row in rows) for k in range(len(_COLUMNS) - 1)]
    lines = []
    for row, row_notes in zip(rows, notes, strict=True):
        cells = [cell.ljust(w) for cell, w in zip(row, widths, strict=False)]
        lines.append("  ".join([*cells, row[-1]]).rstrip())
        lines.extend(f"    {note}" for note in row_notes)
    lines.append(summary_line(results))
    return "\n".join(lines) + "\n"


def render_machine(results: Sequence[ClaimResult], *, timings: bool = False) -> str:
    """One JSON record per claim, fields in ClaimResult order.

    Wall times are dropped unless ``timings`` is set, so the output of two
    runs with identical results is byte-identical.
    """
    lines = [
        (r if timings else r.model_copy(update={"wall_time": None})).model_dump_json()
        for r in results
    ]
    return "".join(line + "\n" for line in lines)


def emit_report(
    results: Sequence[ClaimResult],
    report_format: ReportFormat,
    *,
    citations: Mapping[str, str] | None = None,
    timings: bool = False,
) -> str:
    """The report text in the requested format."""
    if report_format is ReportFormat.MACHINE:
        return render_machine(results, timings=timings)
    return render_human(results, citations or {})


def exit_code(results: Sequence[ClaimResult]) -> int:
    """1 if any required claim failed, else 0."""
    return int(any(r.status is ClaimStatus.FAIL for r in results))
