import pytest

from refgroup_verify.cache import GROUP_DIR, GroupStore, ResultCache
from refgroup_verify.computations import ComputationRouter, Computed
from refgroup_verify.context import BuildContext
from refgroup_verify.models import ClaimStatus, Severity
from refgroup_verify.registry import load_registry
from refgroup_verify.report import exit_code, render_machine
from refgroup_verify.runner import matches, run_claim, run_claims


class TestMatches:
    def test_equality(self, make_claim) -> None:
        claim = make_claim(kind="equality", expected={"a": [1, 2]})
        assert matches(claim, {"a": [1, 2]})
        assert not matches(claim, {"a": [2, 1]})

    def test_evidence_at_least_expected(self, make_claim) -> None:
        claim = make_claim(kind="fingerprint", expected="FINGERPRINT_MATCH")
        assert matches(claim, "FINGERPRINT_MATCH")
        assert matches(claim, "EXPLICIT_ISOMORPHISM")
        assert not matches(claim, "ORDER_MATCH")
        assert not matches(claim, 3)

    def test_presentation_witness(self, make_claim) -> None:
        claim = make_claim(kind="presentation-witness", expected="PRESENTATION_WITNESS")
        assert matches(claim, "PRESENTATION_WITNESS")
        assert not matches(claim, "NONE")

    def test_ratio_either_way_round(self, make_claim) -> None:
        claim = make_claim(kind="ratio", expected=2)
        assert matches(claim, [11520, 23040])
        assert matches(claim, [23040, 11520])
        assert not matches(claim, [3, 3])
        assert not matches(claim, [0, 4])
        assert not matches(claim, [1, 2, 4])


class TestRunClaims:
    def test_cheap_registry(self, cheap_registry, no_cache) -> None:
        claims = load_registry(cheap_registry).claims
        results = run_claims(claims, cache=no_cache)
        assert [r.claim_id for r in results] == ["C1.order", "WL.I24.matrix", "GQ.size"]
        assert [r.status for r in results] == [
            ClaimStatus.PASS,
            ClaimStatus.REPORT,
            ClaimStatus.PASS,
        ]
        assert results[0].computed == 192
        assert results[0].route == "table"
        assert results[1].computed == [[2, 2], [1, 2]]
        assert results[1].notes[-1] == "mismatch: expected [[2, 1], [3, 2]]"

    def test_wrong_expectation_fails(self, make_claim, no_cache) -> None:
        result = run_claim(make_claim(expected=193), BuildContext(), no_cache)
        assert result.status is ClaimStatus.FAIL
        assert result.computed == 192
        assert result.notes == ("expected 193",)

    def test_report_only_match(self, make_claim, no_cache) -> None:
        claim = make_claim(severity="report-only")
        result = run_claim(claim, BuildContext(), no_cache)
        assert result.status is ClaimStatus.REPORT
        assert result.notes == ("matches",)

    def test_error_fails_required_claim(self, make_claim, no_cache) -> None:
        claim = make_claim(constructor={"computation": "no_such_thing"})
        result = run_claim(claim, BuildContext(), no_cache)
        assert result.status is ClaimStatus.FAIL
        assert result.computed is None
        assert result.notes[0].startswith("error: UnknownComputationError")

    def test_error_on_report_only_claim(self, make_claim, no_cache) -> None:
        claim = make_claim(
            severity="report-only",
            constructor={"computation": "order", "params": {"group": "nope"}},
        )
        result = run_claim(claim, BuildContext(), no_cache)
        assert result.status is ClaimStatus.REPORT
        assert result.notes[0].startswith("error: InvalidSpecError")

    def test_unknown(self, make_claim, no_cache, monkeypatch) -> None:
        fake = ComputationRouter()
        fake.add(
            "undecided",
            lambda _ctx, _params: Computed(
                value="NONE", notes=("budget exhausted",), unknown=True
            ),
        )
        monkeypatch.setattr("refgroup_verify.runner.router", fake)
        claim = make_claim(constructor={"computation": "undecided"})
        result = run_claim(claim, BuildContext(), no_cache)
        assert result.status is ClaimStatus.UNKNOWN
        assert result.notes == ("budget exhausted",)

    def test_warm_cache_output_identical(self, cheap_registry, cache) -> None:
        claims = load_registry(cheap_registry).claims
        cold = render_machine(run_claims(claims, cache=cache))
        assert len(list(cache.root.glob("*.json"))) == 3
        assert len(list((cache.root / GROUP_DIR).glob("*.group"))) == 1
        warm = render_machine(run_claims(claims, cache=cache))
        assert warm == cold

    def test_cache_hit_skips_computation(
        self, make_claim, tmp_path, monkeypatch
    ) -> None:
        cache = ResultCache(root=tmp_path)
        claim = make_claim(constructor={"computation": "gq_size"}, expected=[15, 15])
        run_claim(claim, BuildContext(), cache)
        monkeypatch.setattr("refgroup_verify.runner.router", ComputationRouter())
        result = run_claim(claim, BuildContext(), cache)
        assert result.status is ClaimStatus.PASS
        assert result.computed == [15, 15]

    def test_workers_keep_order(self, cheap_registry, no_cache) -> None:
        claims = load_registry(cheap_registry).claims
        serial = run_claims(claims, cache=no_cache)
        parallel = run_claims(claims, cache=no_cache, workers=3)
        assert render_machine(parallel) == render_machine(serial)

    def test_context_shared(self, cheap_registry, no_cache) -> None:
        ctx = BuildContext()
        run_claims(load_registry(cheap_registry).claims, cache=no_cache, context=ctx)
        assert "group:C1" in ctx.constructions
        assert "geometry" in ctx.constructions

    def test_stored_groups_reused(
        self, make_claim, no_cache, tmp_path, monkeypatch
    ) -> None:
        store = GroupStore(root=tmp_path / GROUP_DIR)
        claim = make_claim()
        cold = run_claim(claim, BuildContext(store=store), no_cache)

        def refuse(*_args, **_kwargs):
            raise AssertionError

        monkeypatch.setattr("refgroup_algebra.quantum.enumerate_group", refuse)
        warm = run_claim(claim, BuildContext(store=store), no_cache)
        assert warm.status is cold.status is ClaimStatus.PASS
        assert warm.computed == cold.computed == 192

    def test_any_exception_is_contained(
        self, make_claim, no_cache, monkeypatch
    ) -> None:
        def broken(_ctx, params):
            return Computed(value=params["qubits"] + 1)

        fake = ComputationRouter()
        fake.add("broken", broken)
        fake.add("fine", lambda _ctx, _params: Computed(value=192))
        monkeypatch.setattr("refgroup_verify.runner.router", fake)
        claims = [
            make_claim(
                id="bad",
                constructor={"computation": "broken", "params": {"qubits": "2"}},
            ),
            make_claim(id="good", constructor={"computation": "fine"}),
        ]
        results = run_claims(claims, cache=no_cache, workers=2)
        assert [r.status for r in results] == [ClaimStatus.FAIL, ClaimStatus.PASS]
        assert results[0].notes[0].startswith("error: TypeError")


class TestAutRatio:
    def test_names_the_larger_side(self, make_claim, no_cache) -> None:
        claim = make_claim(
            kind="ratio",
            severity="report-only",
            constructor={"computation": "aut_ratio", "params": {"group": "C1"}},
            expected=2,
        )
        result = run_claim(claim, BuildContext(), no_cache)
        assert result.status is ClaimStatus.REPORT
        assert result.computed == [24, 48]
        assert result.notes == (
            "Aut(P1) (48) is larger than C1~ (24) by a factor of 2",
            "matches",
        )


@pytest.mark.slow
class TestShippedRegistry:
    @pytest.mark.timeout(3600)
    def test_cold_and_warm_runs(self, cache) -> None:
        claims = load_registry().claims
        cold = run_claims(claims, cache=cache)
        failed = [r.claim_id for r in cold if r.status is ClaimStatus.FAIL]
        assert failed == []
        assert exit_code(cold) == 0
        errors = [r for r in cold if any(n.startswith("error: ") for n in r.notes)]
        assert [r.claim_id for r in errors] == []
        settled = {ClaimStatus.REPORT, ClaimStatus.UNKNOWN}
        for claim, result in zip(claims, cold, strict=True):
            if claim.severity is Severity.REPORT:
                assert result.status in settled, claim.id
            else:
                assert result.status is not ClaimStatus.REPORT, claim.id
        warm = run_claims(claims, cache=cache)
        assert render_machine(warm) == render_machine(cold)
