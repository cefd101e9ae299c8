"""Registry records and claim results."""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from enum import StrEnum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, JsonValue, field_validator

from refgroup_verify import __version__

REGISTRY_SCHEMA = "refgroup.registry@1"


class ClaimKind(StrEnum):
    """What sort of statement a claim checks."""

    ORDER = "order"
    FINGERPRINT = "fingerprint"
    PRESENTATION_WITNESS = "presentation-witness"
    EQUALITY = "equality"
    AXIOM_SUITE = "axiom-suite"
    COUNT = "count"
    RATIO = "ratio"


class Severity(StrEnum):
    """Whether a mismatch fails the run."""

    REQUIRED = "pass-required"
    REPORT = "report-only"


class Provenance(StrEnum):
    """Where an expected value comes from."""

    CITED = "cited"
    DERIVED = "derived"
    TRIVIAL = "trivial"


class ClaimStatus(StrEnum):
    """Outcome of one claim."""

    PASS = "PASS"
    FAIL = "FAIL"
    REPORT = "REPORT"
    UNKNOWN = "UNKNOWN"


class Constructor(BaseModel):
    """A registered computation and its parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    computation: str = Field(min_length=1)
    params: dict[str, JsonValue] = Field(default_factory=dict)

    def canonical_json(self) -> str:
        """Sorted keys, no whitespace, with the package version mixed in."""
        payload = {
            "computation": self.computation,
            "params": self.params,
            "version": __version__,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        """sha256 of the canonical JSON, as hex."""
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


class Claim(BaseModel):
    """One checkable statement with its expected value and source."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(min_length=1)
    description: str
    kind: ClaimKind
    constructor: Constructor
    expected: JsonValue
    severity: Severity = Severity.REQUIRED
    citation: str = Field(min_length=1)
    provenance: Provenance


class Registry(BaseModel):
    """A versioned list of claims with unique ids."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    registry_schema: Literal["refgroup.registry@1"] = Field(alias="schema")
    claims: tuple[Claim, ...]

    @field_validator("claims")
    @classmethod
    def _unique_ids(cls, claims: tuple[Claim, ...]) -> tuple[Claim, ...]:
        counts = Counter(c.id for c in claims)
        duplicates = sorted(k for k, n in counts.items() if n > 1)
        if duplicates:
            msg = f"duplicate claim ids: {', '.join(duplicates)}"
            raise ValueError(msg)
        return claims


class ClaimResult(BaseModel):
    """What running a claim produced; field order is the machine record order."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    claim_id: str
    status: ClaimStatus
    computed: JsonValue = None
    evidence: str | None = None
    wall_time: float | None = None
    route: str | None = None
    notes: tuple[str, ...] = ()
