"""Evaluates claims against their computations."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import TYPE_CHECKING

from refgroup_core.log import get_logger
from refgroup_algebra.fingerprint import EvidenceLevel
from refgroup_verify.cache import GROUP_DIR, CacheEntry, GroupStore
from refgroup_verify.computations import Computed, router
from refgroup_verify.context import BuildContext
from refgroup_verify.models import ClaimKind, ClaimResult, ClaimStatus, Severity
from refgroup_verify.threadpool import map_ordered

if TYPE_CHECKING:
    from collections.abc import Sequence

    from pydantic import JsonValue

    from refgroup_verify.cache import ResultCache
    from refgroup_verify.models import Claim

logger = get_logger(__name__)

_LADDER_KINDS = frozenset({ClaimKind.FINGERPRINT, ClaimKind.PRESENTATION_WITNESS})


def matches(claim: Claim, computed: JsonValue) -> bool:
    """Whether a computed value satisfies the claim.

    Identification claims pass when the evidence reached is at least the
    expected level. Ratio claims compare the larger of two values divided
    by the smaller. Everything else needs equality.
    """
    if claim.kind in _LADDER_KINDS:
        if not isinstance(computed, str) or not isinstance(claim.expected, str):
            return False
        return EvidenceLevel[computed] >= EvidenceLevel[claim.expected]
    if claim.kind is ClaimKind.RATIO:
        if not isinstance(computed, list) or len(computed) != 2:  # noqa: PLR2004
            return False
        a, b = computed
        if not isinstance(a, int) or not isinstance(b, int) or min(a, b) <= 0:
            return False
        return Fraction(max(a, b), min(a, b)) == claim.expected
    return computed == claim.expected


def _compute(claim: Claim, ctx: BuildContext, cache: ResultCache) -> Computed:
    constructor = claim.constructor
    if (entry := cache.load(constructor)) is not None:
        return Computed(
            value=entry.value,
            evidence=entry.evidence,
            route=entry.route,
            notes=entry.notes,
            unknown=entry.unknown,
        )
    computation = router.resolve(constructor.computation)
    computed = computation(ctx, constructor.params)
    cache.store(
        constructor,
        CacheEntry(
            digest=constructor.digest(),
            computation=constructor.computation,
            value=computed.value,
            evidence=computed.evidence,
            route=computed.route,
            notes=computed.notes,
            unknown=computed.unknown,
        ),
    )
    return computed


def _status(claim: Claim, computed: Computed) -> tuple[ClaimStatus, tuple[str, ...]]:
    if computed.unknown:
        return ClaimStatus.UNKNOWN, computed.notes
    ok = matches(claim, computed.value)
    if claim.severity is Severity.REPORT:
        note = "matches" if ok else f"mismatch: expected {claim.expected}"
        return ClaimStatus.REPORT, (*computed.notes, note)
    if ok:
        return ClaimStatus.PASS, computed.notes
    return ClaimStatus.FAIL, (*computed.notes, f"expected {claim.expected}")


def run_claim(claim: Claim, ctx: BuildContext, cache: ResultCache) -> ClaimResult:
    """Runs one claim.

    Any exception raised by the computation fails a required claim and is
    noted on a report-only one; none escapes, so one bad claim never stops
    a run.
    """
    start = time.perf_counter()
    try:
        computed = _compute(claim, ctx, cache)
    except Exception as e:  # noqa: BLE001
        status = (
            ClaimStatus.REPORT
            if claim.severity is Severity.REPORT
            else ClaimStatus.FAIL
        )
        logger.warning("claim raised", claim=claim.id, error=repr(e))
        return ClaimResult(
            claim_id=claim.id,
            status=status,
            wall_time=time.perf_counter() - start,
            notes=(f"error: {type(e).__name__}: {e}",),
        )
    status, notes = _status(claim, computed)
    elapsed = time.perf_counter() - start
    logger.info("claim finished", claim=claim.id, status=status, seconds=elapsed)
    return ClaimResult(
        claim_id=claim.id,
        status=status,
        computed=computed.value,
        evidence=computed.evidence,
        wall_time=elapsed,
        route=computed.route,
        notes=notes,
    )


def run_claims(
    claims: Sequence[Claim],
    *,
    cache: ResultCache,
    workers: int = 1,
    context: BuildContext | None = None,
) -> list[ClaimResult]:
    """Runs claims on up to ``workers`` threads; results keep the claim order.

    Without a ``context``, group constructions are kept under the cache
    root so that later runs load them instead of building them again.
    """
    if context is None:
        groups = None if cache.root is None else cache.root / GROUP_DIR
        context = BuildContext(store=GroupStore(root=groups))
    ctx = context
    logger.info("run started", claims=len(claims), workers=workers)
    results = map_ordered(
        lambda claim: run_claim(claim, ctx, cache), claims, workers=workers
    )
    failed = sum(r.status is ClaimStatus.FAIL for r in results)
    logger.info("run finished", claims=len(results), failed=failed)
    return results
