import json

from refgroup_verify.config import ReportFormat
from refgroup_verify.models import ClaimResult, ClaimStatus
from refgroup_verify.report import (
    emit_report,
    exit_code,
    render_human,
    render_machine,
    summary_line,
)

PASSING = ClaimResult(
    claim_id="C1.order",
    status=ClaimStatus.PASS,
    computed=192,
    wall_time=0.25,
    route="table",
)
REPORTED = ClaimResult(
    claim_id="WL.I24.matrix",
    status=ClaimStatus.REPORT,
    computed=[[2, 2], [1, 2]],
    route="formula",
    notes=("mismatch: expected [[2, 1], [3, 2]]",),
)
FAILING = ClaimResult(
    claim_id="C2.order",
    status=ClaimStatus.FAIL,
    computed=92161,
    notes=("expected 92160",),
)


class TestSummary:
    def test_ok(self) -> None:
        assert summary_line([PASSING, REPORTED]) == (
            "OK: 2 claims (1 pass, 0 fail, 1 report, 0 unknown)"
        )

    def test_failed(self) -> None:
        assert summary_line([PASSING, REPORTED, FAILING]) == "FAILED: 1 of 3"

    def test_empty(self) -> None:
        assert summary_line([]) == "OK: 0 claims (0 pass, 0 fail, 0 report, 0 unknown)"


class TestExitCode:
    def test_zero_without_failures(self) -> None:
        unknown = ClaimResult(claim_id="x", status=ClaimStatus.UNKNOWN)
        assert exit_code([PASSING, REPORTED, unknown]) == 0

    def test_one_on_failure(self) -> None:
        assert exit_code([PASSING, FAILING]) == 1

    def test_empty(self) -> None:
        assert exit_code([]) == 0


class TestMachine:
    def test_one_record_per_claim(self) -> None:
        lines = render_machine([PASSING, REPORTED, FAILING]).splitlines()
        assert len(lines) == 3
        assert [json.loads(line)["claim_id"] for line in lines] == [
            "C1.order",
            "WL.I24.matrix",
            "C2.order",
        ]

    def test_wall_time_dropped_by_default(self) -> None:
        record = json.loads(render_machine([PASSING]))
        assert record["wall_time"] is None
        assert record["computed"] == 192

    def test_wall_time_kept_with_timings(self) -> None:
        record = json.loads(render_machine([PASSING], timings=True))
        assert record["wall_time"] == 0.25

    def test_empty(self) -> None:
        assert render_machine([]) == ""


class TestHuman:
    def test_layout(self) -> None:
        text = render_human(
            [PASSING, REPORTED, FAILING], {"C1.order": "|C1| = 192"}
        )
        lines = text.splitlines()
        assert lines[0].split() == [
            "CLAIM",
            "STATUS",
            "COMPUTED",
            "EVIDENCE",
            "ROUTE",
            "CITATION",
        ]
        assert lines[1].startswith("C1.order")
        assert lines[1].endswith("|C1| = 192")
        assert lines[-1] == "FAILED: 1 of 3"

    def test_notes_under_non_passing_rows(self) -> None:
        text = render_human([PASSING, FAILING], {})
        assert "    expected 92160" in text.splitlines()

    def test_columns_aligned(self) -> None:
        lines = render_human([PASSING, REPORTED], {}).splitlines()
        column = lines[0].index("STATUS")
        assert lines[1][column:].startswith("PASS")
        assert lines[2][column:].startswith("REPORT")

    def test_long_values_truncated(self) -> None:
        wide = ClaimResult(
            claim_id="wide", status=ClaimStatus.PASS, computed=list(range(100))
        )
        row = render_human([wide], {}).splitlines()[1]
        assert "..." in row
        assert "99" not in row


class TestEmit:
    def test_dispatch(self) -> None:
        results = [PASSING]
        assert emit_report(results, ReportFormat.MACHINE) == render_machine(results)
        assert emit_report(results, ReportFormat.HUMAN) == render_human(results, {})
