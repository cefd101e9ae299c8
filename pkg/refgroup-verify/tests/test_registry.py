import pytest

from refgroup_verify.computations import router
from refgroup_verify.exceptions import RegistryParseError
from refgroup_verify.models import Severity
from refgroup_verify.registry import filter_claims, load_registry


class TestShippedRegistry:
    def test_loads(self) -> None:
        registry = load_registry()
        assert len(registry.claims) >= 40

    def test_every_claim_cited(self) -> None:
        assert all(claim.citation.strip() for claim in load_registry().claims)

    def test_every_computation_registered(self) -> None:
        missing = {
            claim.constructor.computation
            for claim in load_registry().claims
            if claim.constructor.computation not in router
        }
        assert missing == set()

    def test_known_misprints_are_report_only(self) -> None:
        claims = {claim.id: claim for claim in load_registry().claims}
        for claim_id in ("WL.I24.matrix", "P1~.aut.Z6", "C2.aut_ratio"):
            assert claims[claim_id].severity is Severity.REPORT
        assert claims["P1~.aut.S3"].severity is Severity.REQUIRED

    def test_headline_orders(self) -> None:
        claims = {claim.id: claim for claim in load_registry().claims}
        assert claims["C1.order"].expected == 192
        assert claims["C2.order"].expected == 92160
        assert claims["C3.central_quotient.order"].expected == 92897280
        assert claims["W.E6.order"].expected == 51840


class TestLoadRegistry:
    def test_from_path(self, cheap_registry) -> None:
        registry = load_registry(cheap_registry)
        assert [c.id for c in registry.claims] == [
            "C1.order",
            "WL.I24.matrix",
            "GQ.size",
        ]

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(RegistryParseError, match="cannot read"):
            load_registry(tmp_path / "absent.json")

    def test_not_json(self, tmp_path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("claims: []")
        with pytest.raises(RegistryParseError, match="invalid registry"):
            load_registry(path)

    def test_bad_record(self, write_registry, cheap_claims) -> None:
        del cheap_claims[0]["citation"]
        with pytest.raises(RegistryParseError):
            load_registry(write_registry(cheap_claims))

    def test_is_value_error(self, write_registry, cheap_claims) -> None:
        with pytest.raises(ValueError, match="duplicate"):
            load_registry(write_registry([cheap_claims[0], cheap_claims[0]]))


class TestFilterClaims:
    def test_prefix(self, cheap_registry) -> None:
        registry = load_registry(cheap_registry)
        assert [c.id for c in filter_claims(registry, "C1")] == ["C1.order"]

    def test_no_prefix_keeps_all(self, cheap_registry) -> None:
        registry = load_registry(cheap_registry)
        assert len(filter_claims(registry, None)) == 3
        assert len(filter_claims(registry, "")) == 3

    def test_no_match(self, cheap_registry) -> None:
        assert filter_claims(load_registry(cheap_registry), "E8") == []
