import pytest

from refgroup_core.constants import Backing, GateName
from refgroup_core.exceptions import (
    DimensionMismatchError,
    GroupTooLargeError,
    NotNormalError,
)
from refgroup_core.matrix import ExactMatrix, standard_gate
from refgroup_core.permutation import derived_subgroup
from refgroup_algebra.exceptions import InvalidSpecError
from refgroup_algebra.fingerprint import fingerprint_of
from refgroup_algebra.quantum import (
    GROUP_NAMES,
    SplitStatus,
    aut_group_of_pauli,
    aut_of_central_quotient,
    bell_group,
    central_quotient_routes,
    clifford_group,
    clifford_mod_pauli,
    embed_table,
    magic_group,
    named_group,
    non_normality_witness,
    pauli_matrix_subgroup,
    split_check,
    unsigned_image_order,
    yang_baxter_check,
)
from refgroup_algebra.references import (
    cyclic_group,
    direct_product,
    general_linear_group,
    symmetric_table,
)


class TestOneQubit:
    def test_clifford(self, clifford_one) -> None:
        assert clifford_one.backing is Backing.TABLE
        assert clifford_one.order == 192
        assert clifford_one.generators == ("H", "P")
        assert clifford_one.center_order() == 8

    def test_pauli_inside_clifford(self, clifford_one) -> None:
        table = clifford_one.require_table()
        paulis = pauli_matrix_subgroup(table, 1)
        assert paulis.order == 16
        assert table.is_normal(paulis)

    def test_clifford_mod_pauli(self, clifford_one) -> None:
        quotient = clifford_mod_pauli(1, clifford=clifford_one)
        assert quotient.order == 12
        assert quotient.name == "C1/P1"

    def test_unsigned_image(self, clifford_one) -> None:
        assert unsigned_image_order(clifford_one) == 6

    def test_central_quotient_routes_agree(self, clifford_one) -> None:
        assert central_quotient_routes(clifford_one) == (24, 24)

    def test_magic_group(self, clifford_one) -> None:
        magic = magic_group()
        assert magic.order == 48
        assert magic.generators == ("T", "H")
        embedded = embed_table(clifford_one.require_table(), magic.require_table())
        assert embedded.order == 48
        gl23 = general_linear_group(2, 3)
        assert fingerprint_of(magic.require_table()).matches(fingerprint_of(gl23))


class TestNamedGroups:
    def test_names(self) -> None:
        assert set(GROUP_NAMES) == {
            "C1", "C2", "C3", "B2", "B3", "P1", "P2", "P3", "magic"
        }

    def test_pauli(self) -> None:
        handle = named_group("P2")
        assert handle.order == 64
        assert handle.center_order() == 4
        assert handle.derived_order() == 2

    def test_unknown(self) -> None:
        with pytest.raises(InvalidSpecError, match="unknown group 'C4'"):
            named_group("C4")

    def test_out_of_range(self) -> None:
        with pytest.raises(InvalidSpecError):
            clifford_group(4)
        with pytest.raises(InvalidSpecError):
            bell_group(1)


class TestYangBaxter:
    def test_bell_matrix(self) -> None:
        report = yang_baxter_check(standard_gate(GateName.R))
        assert report.holds
        assert report.unitary

    def test_identity(self) -> None:
        assert yang_baxter_check(ExactMatrix.identity(4)).holds

    def test_controlled_z_fails(self) -> None:
        report = yang_baxter_check(standard_gate(GateName.CZ))
        assert not report.holds
        assert report.unitary

    def test_wrong_size(self) -> None:
        with pytest.raises(DimensionMismatchError):
            yang_baxter_check(ExactMatrix.identity(2))


class TestPauliAutomorphisms:
    def test_one_qubit(self) -> None:
        aut = aut_group_of_pauli(1)
        assert (aut.order, aut.inner, aut.outer) == (48, 4, 12)
        assert aut.witness is not None
        assert aut.witness.witness is not None
        assert aut.outer_witness is not None
        assert aut.outer_witness.witness is not None

    @pytest.mark.slow
    @pytest.mark.timeout(300)
    def test_two_qubits(self) -> None:
        aut = aut_group_of_pauli(2)
        assert aut.order == 23040
        assert aut.inner == 16
        assert aut.derived_order == 5760
        assert aut.derived_fingerprint is not None
        assert aut.derived_fingerprint.order == 5760

    def test_central_quotient(self) -> None:
        assert aut_of_central_quotient(1) == 6
        assert aut_of_central_quotient(1, direct=True) == 6
        assert aut_of_central_quotient(2) == 20160
        assert aut_of_central_quotient(3) == 20158709760

    def test_central_quotient_too_large(self) -> None:
        with pytest.raises(GroupTooLargeError, match="direct=False"):
            aut_of_central_quotient(3, direct=True)


class TestSplitCheck:
    def test_direct_product(self) -> None:
        s3 = symmetric_table(3)
        product = direct_product(s3, cyclic_group(4))
        factor = product.subgroup(product.generators[: len(s3.generators)])
        assert factor.order == 6
        result = split_check(product, factor)
        assert result.status is SplitStatus.SPLIT
        assert result.complement is not None
        assert product.subgroup(result.complement).order == 4

    def test_whole_group(self, pauli_one) -> None:
        result = split_check(pauli_one, pauli_one.subgroup(pauli_one.generators))
        assert result.status is SplitStatus.SPLIT
        assert result.complement == ()

    def test_clifford_over_pauli(self, clifford_one) -> None:
        table = clifford_one.require_table()
        result = split_check(table, pauli_matrix_subgroup(table, 1))
        assert result.status is SplitStatus.NON_SPLIT
        assert result.tried > 0

    def test_budget(self, clifford_one) -> None:
        table = clifford_one.require_table()
        result = split_check(table, pauli_matrix_subgroup(table, 1), budget=3)
        assert result.status is SplitStatus.UNKNOWN
        assert result.tried == 3

    def test_not_normal(self, pauli_one) -> None:
        x = pauli_one.subgroup([pauli_one.generators[0]])
        assert x.order == 2
        with pytest.raises(NotNormalError):
            split_check(pauli_one, x)


class TestPermutationHandles:
    def test_table_only(self) -> None:
        handle = named_group("magic")
        assert handle.require_table().order == 48

    @pytest.mark.slow
    @pytest.mark.timeout(300)
    def test_clifford_three(self) -> None:
        handle = clifford_group(3)
        assert handle.backing is Backing.PERMUTATION
        assert handle.order is None
        assert handle.center_order() is None
        assert "scalars" in handle.action
        assert unsigned_image_order(handle) == 1451520
        assert handle.central_quotient_order() == 92897280
        with pytest.raises(InvalidSpecError):
            handle.require_table()

    @pytest.mark.slow
    @pytest.mark.timeout(300)
    def test_bell_three(self) -> None:
        handle = bell_group(3)
        assert handle.central_quotient_order() == 1658880
        unsigned = handle.action_image(signed=False)
        assert derived_subgroup(unsigned).order() == 25920


@pytest.mark.slow
class TestTwoQubits:
    @pytest.mark.timeout(600)
    def test_clifford(self, clifford_two) -> None:
        assert clifford_two.order == 92160
        assert clifford_mod_pauli(2, clifford=clifford_two).order == 1440
        assert unsigned_image_order(clifford_two) == 720

    @pytest.mark.timeout(600)
    def test_central_quotient(self, clifford_two) -> None:
        table = clifford_two.require_table()
        assert table.central_quotient().order == 11520
        assert central_quotient_routes(clifford_two) == (11520, 11520)

    @pytest.mark.timeout(600)
    def test_bell_inside_clifford(self, clifford_two) -> None:
        bell = bell_group(2)
        assert bell.central_quotient_order() == 1920
        clifford = clifford_two.require_table()
        embedded = embed_table(clifford, bell.require_table())
        assert embedded.order == bell.order
        assert not clifford.is_normal(embedded)
        witness = non_normality_witness(clifford, embedded)
        assert witness is not None
        g, h = witness
        assert not embedded.contains_parent_id(int(clifford.conjugate_ids(h, g)[0]))
