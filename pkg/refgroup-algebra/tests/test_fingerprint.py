import pytest

from refgroup_algebra.coxeter import dihedral_group, named_presentation
from refgroup_algebra.fingerprint import (
    EvidenceLevel,
    GroupFingerprint,
    IsoTarget,
    as_table,
    fingerprint_of,
    index2_fingerprints,
    iso_evidence,
    order_of,
)
from refgroup_algebra.presentation import Presentation
from refgroup_algebra.references import (
    cyclic_group,
    symmetric_group,
    symmetric_table,
)

S3_TEXT = "x1^2=x2^2=(x1x2)^3=1"


class TestFingerprint:
    def test_dihedral_four(self) -> None:
        assert fingerprint_of(dihedral_group(4)) == GroupFingerprint(
            order=8,
            center_order=2,
            derived_series=(8, 2, 1),
            abelian_invariants=(2, 2),
            order_histogram=((1, 1), (2, 5), (4, 2)),
            exponent=4,
        )

    def test_cyclic_differs_from_dihedral(self) -> None:
        differing = fingerprint_of(cyclic_group(8)).differences(
            fingerprint_of(dihedral_group(4))
        )
        assert "order" not in differing
        assert {"center_order", "derived_series", "exponent"} <= set(differing)

    def test_isomorphic_groups_match(self) -> None:
        assert fingerprint_of(dihedral_group(3)).matches(
            fingerprint_of(symmetric_group(3))
        )

    def test_large_permutation_group(self) -> None:
        fp = fingerprint_of(symmetric_group(9))
        assert fp.order == 362880
        assert fp.derived_series == (362880, 181440)
        assert fp.center_order is None
        assert fp.order_histogram is None

    def test_unknown_invariants_are_skipped(self) -> None:
        full = fingerprint_of(symmetric_table(4))
        partial = GroupFingerprint(
            order=24,
            center_order=None,
            derived_series=(24, 12, 4, 1),
            abelian_invariants=None,
            order_histogram=None,
            exponent=None,
        )
        assert partial.matches(full)

    def test_index2_subgroups(self) -> None:
        fps = index2_fingerprints(dihedral_group(4))
        assert len(fps) == 3
        assert sorted(fp.exponent for fp in fps) == [2, 2, 4]


class TestHelpers:
    def test_as_table(self) -> None:
        table = as_table(symmetric_group(4))
        assert table is not None
        assert table.order == 24
        assert as_table(symmetric_group(9)) is None

    def test_table_passes_through(self) -> None:
        dih = dihedral_group(3)
        assert as_table(dih) is dih

    def test_order_of(self) -> None:
        assert order_of(symmetric_group(5)) == 120
        assert order_of(dihedral_group(5)) == 10

    def test_expected_order(self) -> None:
        target = IsoTarget(name="S4", reference=symmetric_group(4))
        assert target.expected_order() == 24
        assert IsoTarget(name="X", order=7).expected_order() == 7
        assert IsoTarget(name="X").expected_order() is None


class TestEvidenceLadder:
    def test_explicit_isomorphism(self) -> None:
        target = IsoTarget(
            name="S3",
            reference=symmetric_table(3),
            presentation=Presentation.from_text("S3", S3_TEXT),
        )
        evidence = iso_evidence(dihedral_group(3), target)
        assert evidence.level is EvidenceLevel.EXPLICIT_ISOMORPHISM
        assert evidence.witness is not None
        assert evidence.isomorphism is not None

    def test_requested_level_caps_the_climb(self) -> None:
        target = IsoTarget(name="S3", reference=symmetric_table(3))
        evidence = iso_evidence(
            dihedral_group(3), target, requested=EvidenceLevel.FINGERPRINT_MATCH
        )
        assert evidence.level is EvidenceLevel.FINGERPRINT_MATCH
        assert evidence.isomorphism is None

    def test_order_mismatch(self) -> None:
        evidence = iso_evidence(dihedral_group(3), IsoTarget(name="S4", order=24))
        assert evidence.level is EvidenceLevel.NONE
        assert "differs" in evidence.notes[0]

    def test_fingerprint_mismatch_stops(self) -> None:
        target = IsoTarget(name="S3", reference=symmetric_table(3))
        evidence = iso_evidence(cyclic_group(6), target)
        assert evidence.level is EvidenceLevel.ORDER_MATCH
        assert evidence.notes[0].startswith("fingerprints differ in")

    def test_presentation_without_reference(self) -> None:
        target = IsoTarget(
            name="W(G2)",
            order=12,
            presentation=named_presentation("G2").as_presentation(),
        )
        evidence = iso_evidence(dihedral_group(6), target)
        assert evidence.level is EvidenceLevel.PRESENTATION_WITNESS
        assert any("no reference table" in note for note in evidence.notes)

    def test_failed_witness_keeps_order_level(self) -> None:
        target = IsoTarget(
            name="W(G2)",
            order=12,
            presentation=named_presentation("G2").as_presentation(),
        )
        evidence = iso_evidence(
            cyclic_group(12), target, requested=EvidenceLevel.PRESENTATION_WITNESS
        )
        assert evidence.level is EvidenceLevel.ORDER_MATCH
        assert evidence.witness is None

    @pytest.mark.parametrize("level", list(EvidenceLevel))
    def test_levels_are_ordered(self, level: EvidenceLevel) -> None:
        assert EvidenceLevel.NONE <= level <= EvidenceLevel.EXPLICIT_ISOMORPHISM
