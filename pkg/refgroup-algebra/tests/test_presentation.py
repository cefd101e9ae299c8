import pytest

from refgroup_core.exceptions import ParseError
from refgroup_algebra.coxeter import dihedral_group
from refgroup_algebra.presentation import (
    Presentation,
    evaluate_word,
    format_word,
    inverse_word,
    parse_relations,
    parse_word,
    power_word,
    relators_hold,
    search_witness,
    verify_witness,
)
from refgroup_algebra.references import cyclic_group

G2 = "x1^2=x2^2=(x1x2)^6=1"


class TestWords:
    def test_single_letters(self) -> None:
        assert parse_word("x1x2") == ((0, 1), (1, 1))

    def test_powers_merge(self) -> None:
        assert parse_word("x1^2x1") == ((0, 3),)

    def test_cancellation(self) -> None:
        assert parse_word("x1x1^-1") == ()

    def test_bracketed_power(self) -> None:
        assert parse_word("(x2^-1x1)^3") == ((1, -1), (0, 1)) * 3

    def test_negative_bracketed_power(self) -> None:
        assert parse_word("(x1x2)^-1") == ((1, -1), (0, -1))

    def test_latex_style_indices(self) -> None:
        assert parse_word("x_{2}x_1^{2}") == ((1, 1), (0, 2))

    def test_nested_brackets(self) -> None:
        assert parse_word("((x1x2)^2x3)^2") == ((0, 1), (1, 1)) * 2 + (
            (2, 1),
        ) + ((0, 1), (1, 1)) * 2 + ((2, 1),)

    @pytest.mark.parametrize(
        ("text", "match"),
        [
            ("x0", "numbered from 1"),
            ("(x1", "unclosed"),
            ("x1)", "unbalanced"),
            ("^2", "exponent without a base"),
            ("y1", "unexpected"),
        ],
    )
    def test_malformed(self, text: str, match: str) -> None:
        with pytest.raises(ParseError, match=match):
            parse_word(text)

    def test_format(self) -> None:
        assert format_word(((0, 1), (1, 2))) == "x1x2^2"
        assert format_word(()) == "1"

    def test_inverse(self) -> None:
        assert inverse_word(((0, 1), (1, 2))) == ((1, -2), (0, -1))

    def test_power(self) -> None:
        assert power_word(((0, 1), (1, 1)), -2) == ((1, -1), (0, -1)) * 2
        assert power_word(((0, 1),), 0) == ()


class TestPresentation:
    def test_relation_chain(self) -> None:
        assert parse_relations(G2) == (((0, 2),), ((1, 2),), ((0, 1), (1, 1)) * 6)

    def test_generator_count(self) -> None:
        p = Presentation.from_text("G2", G2)
        assert p.generators == 2
        assert len(p.relators) == 3

    def test_power_bound(self) -> None:
        p = Presentation.from_text("G2", G2)
        assert p.power_bound(0) == 2
        assert Presentation.from_text("w", "(x1x2)^3=1").power_bound(0) is None

    def test_relator_texts(self) -> None:
        p = Presentation.from_text("G2", G2)
        assert p.relator_texts()[0] == "x1^2"


class TestEvaluation:
    def test_additive_group(self) -> None:
        value = evaluate_word(
            ((0, 3), (1, -1)),
            (1, 2),
            mul=lambda a, b: (a + b) % 5,
            inverse=lambda a: -a % 5,
            unit=0,
        )
        assert value == 1

    def test_relators_hold_in_dihedral(self) -> None:
        dih = dihedral_group(6)
        p = Presentation.from_text("G2", G2)
        assert relators_hold(dih, p, dih.generators)


class TestWitnessSearch:
    def test_dihedral_witness(self) -> None:
        dih = dihedral_group(6)
        p = Presentation.from_text("G2", G2)
        search = search_witness(dih, p, expected_order=12)
        assert search.witness is not None
        assert search.reason == "found"
        assert search.witness.group_order == 12
        assert verify_witness(dih, p, search.witness.images)

    def test_order_mismatch(self) -> None:
        p = Presentation.from_text("G2", G2)
        search = search_witness(dihedral_group(4), p, expected_order=12)
        assert search.witness is None
        assert "differs" in search.reason

    def test_relators_never_hold(self) -> None:
        p = Presentation.from_text("G2", G2)
        search = search_witness(cyclic_group(3), p)
        assert search.witness is None
        assert search.reason == "no tuple satisfies the relators"

    def test_no_generating_tuple(self) -> None:
        p = Presentation.from_text("G2", G2)
        search = search_witness(cyclic_group(12), p)
        assert search.witness is None
        assert "none generates Z12" in search.reason

    def test_quotient_is_not_a_witness(self) -> None:
        # Dih3 satisfies the G2 relations but is a proper quotient.
        p = Presentation.from_text("G2", G2)
        search = search_witness(dihedral_group(3), p)
        assert search.witness is not None
        assert search.witness.group_order == 6
        assert search_witness(dihedral_group(3), p, expected_order=12).witness is None

    def test_budget(self) -> None:
        p = Presentation.from_text("G2", G2)
        search = search_witness(dihedral_group(6), p, budget=1)
        assert search.witness is None
        assert "budget" in search.reason

    def test_wrong_length_is_rejected(self) -> None:
        dih = dihedral_group(6)
        p = Presentation.from_text("G2", G2)
        assert not verify_witness(dih, p, (1,))
