"""Refgroup algebra package: reflection groups, automorphisms and quantum groups."""

__version__ = "0.1.0"

from refgroup_algebra.automorphism import automorphism_count, automorphism_group
from refgroup_algebra.coxeter import (
    CartanType,
    RootSystem,
    coxeter_group_order,
    parse_cartan_type,
    root_system,
)
from refgroup_algebra.fingerprint import EvidenceLevel, fingerprint_of, iso_evidence
from refgroup_algebra.imprimitive import ImprimitiveSpec
from refgroup_algebra.presentation import Presentation, search_witness
from refgroup_algebra.quantum import GroupHandle, named_group

__all__ = [
    "CartanType",
    "EvidenceLevel",
    "GroupHandle",
    "ImprimitiveSpec",
    "Presentation",
    "RootSystem",
    "automorphism_count",
    "automorphism_group",
    "coxeter_group_order",
    "fingerprint_of",
    "iso_evidence",
    "named_group",
    "parse_cartan_type",
    "root_system",
    "search_witness",
]
