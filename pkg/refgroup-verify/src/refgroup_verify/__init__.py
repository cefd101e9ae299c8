"""Refgroup verify package: the claim registry, runner and command line."""

__version__ = "0.1.0"

from refgroup_verify.models import Claim, ClaimResult, ClaimStatus, Registry
from refgroup_verify.registry import filter_claims, load_registry
from refgroup_verify.report import emit_report
from refgroup_verify.runner import run_claims

__all__ = [
    "Claim",
    "ClaimResult",
    "ClaimStatus",
    "Registry",
    "emit_report",
    "filter_claims",
    "load_registry",
    "run_claims",
]
