"""Shared fixtures for refgroup-verify.

Runner and CLI tests use a small registry of claims that finish in well
under a second. Only the slow suite runs the shipped registry.
"""

import copy
import json
from collections.abc import Callable
from pathlib import Path

import pytest

from refgroup_verify.cache import ResultCache
from refgroup_verify.models import Claim

_CHEAP_CLAIMS = [
    {
        "id": "C1.order",
        "description": "Order of the one-qubit Clifford group",
        "kind": "order",
        "constructor": {"computation": "order", "params": {"group": "C1"}},
        "expected": 192,
        "citation": "|C1| = 192",
        "provenance": "cited",
    },
    {
        "id": "WL.I24.matrix",
        "description": "Weight lattice matrix of I2(4) as printed",
        "kind": "equality",
        "severity": "report-only",
        "constructor": {"computation": "weight_lattice", "params": {"type": "I2(4)"}},
        "expected": [[2, 1], [3, 2]],
        "citation": "printed L_W(I2(4))",
        "provenance": "cited",
    },
    {
        "id": "GQ.size",
        "description": "Points and lines of the two-qubit geometry",
        "kind": "count",
        "constructor": {"computation": "gq_size", "params": {}},
        "expected": [15, 15],
        "citation": "GQ(2,2)",
        "provenance": "cited",
    },
]


@pytest.fixture
def cheap_claims() -> list[dict]:
    return copy.deepcopy(_CHEAP_CLAIMS)


@pytest.fixture
def write_registry(tmp_path: Path) -> Callable[[list[dict]], Path]:
    def write(claims: list[dict], name: str = "registry.json") -> Path:
        path = tmp_path / name
        payload = {"schema": "refgroup.registry@1", "claims": claims}
        path.write_text(json.dumps(payload))
        return path

    return write


@pytest.fixture
def cheap_registry(write_registry, cheap_claims) -> Path:
    return write_registry(cheap_claims)


@pytest.fixture
def make_claim() -> Callable[..., Claim]:
    def make(**overrides) -> Claim:
        record = {
            "id": "test.claim",
            "description": "a test claim",
            "kind": "order",
            "constructor": {"computation": "order", "params": {"group": "C1"}},
            "expected": 192,
            "citation": "test",
            "provenance": "trivial",
        }
        record.update(overrides)
        return Claim.model_validate(record)

    return make


@pytest.fixture
def cache(tmp_path: Path) -> ResultCache:
    return ResultCache(root=tmp_path / "cache")


@pytest.fixture
def no_cache() -> ResultCache:
    return ResultCache(root=None)
