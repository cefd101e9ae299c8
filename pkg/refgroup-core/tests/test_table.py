import numpy as np
import pytest

from refgroup_core.backends import ElementBackend, MatrixBackend
from refgroup_core.constants import EnumerationMode, GateName
from refgroup_core.dyadic import from_exact
from refgroup_core.exceptions import (
    CapExceededError,
    ClosureViolationError,
    GroupTooLargeError,
    NotNormalError,
    NotSubgroupError,
)
from refgroup_core.matrix import standard_gate
from refgroup_core.table import enumerate_group, table_from_elements


def cyclic(n: int, name: str = "Z"):
    backend = ElementBackend[int](
        mul=lambda a, b: (a + b) % n, inv=lambda a: -a % n, unit=0
    )
    return enumerate_group(backend, [1], name=f"{name}{n}")


def klein():
    backend = ElementBackend[tuple[int, int]](
        mul=lambda a, b: (a[0] ^ b[0], a[1] ^ b[1]),
        inv=lambda a: a,
        unit=(0, 0),
    )
    return enumerate_group(backend, [(1, 0), (0, 1)], name="V4")


def symmetric(n: int):
    def compose(a, b):
        return tuple(b[i] for i in a)

    def invert(a):
        out = [0] * len(a)
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    backend = ElementBackend[tuple[int, ...]](
        mul=compose, inv=invert, unit=tuple(range(n))
    )
    swap = (1, 0, *range(2, n))
    cycle = (*range(1, n), 0)
    return enumerate_group(backend, [swap, cycle], name=f"S{n}")


def clifford_one(mode=EnumerationMode.FULL):
    gates = [standard_gate(GateName.H), standard_gate(GateName.P)]
    backend = MatrixBackend(dim=2, mode=mode)
    return enumerate_group(backend, from_exact(gates), name="C1", mode=mode)


class TestEnumeration:
    def test_cyclic_order(self) -> None:
        assert cyclic(12).order == 12

    def test_identity_is_id_zero(self) -> None:
        g = symmetric(4)
        assert g.keys[0] == (0, 1, 2, 3)
        assert g.multiply(0, 5) == 5

    def test_deterministic_ids(self) -> None:
        assert clifford_one().keys == clifford_one().keys

    def test_cap(self) -> None:
        with pytest.raises(CapExceededError) as info:
            enumerate_group(
                ElementBackend[int](
                    mul=lambda a, b: (a + b) % 50, inv=lambda a: -a % 50, unit=0
                ),
                [1],
                name="Z50",
                cap=10,
            )
        assert info.value.cap == 10

    def test_generator_ids(self) -> None:
        g = symmetric(4)
        assert g.keys[g.generators[0]] == (1, 0, 2, 3)

    def test_audit_passes(self) -> None:
        clifford_one().audit(samples=1000)

    def test_left_action_is_a_permutation(self) -> None:
        g = symmetric(4)
        for row in g.left_action:
            assert sorted(row.tolist()) == list(range(24))


class TestMatrixGroups:
    def test_clifford_order(self) -> None:
        assert clifford_one().order == 192

    def test_projective_classes(self) -> None:
        full = clifford_one()
        projective = clifford_one(EnumerationMode.PROJECTIVE)
        assert projective.order == 24
        assert projective.order * full.center().order == full.order

    def test_pauli_x(self) -> None:
        backend = MatrixBackend(dim=2)
        g = enumerate_group(backend, from_exact([standard_gate(GateName.X)]), name="X")
        assert g.order == 2
        assert g.center().order == 2


class TestStructure:
    def test_center_of_clifford_is_cyclic_of_order_8(self) -> None:
        center = clifford_one().center()
        assert center.order == 8
        assert center.exponent == 8

    def test_derived_of_clifford(self) -> None:
        assert clifford_one().derived().order == 24

    def test_derived_of_abelian_is_trivial(self) -> None:
        assert cyclic(6).derived().order == 1
        assert klein().is_abelian()

    def test_derived_series_of_s4(self) -> None:
        assert symmetric(4).derived_series() == (24, 12, 4, 1)

    def test_central_quotient(self) -> None:
        g = clifford_one()
        assert g.central_quotient().order == g.order // g.center().order

    def test_quotient_by_itself_is_trivial(self) -> None:
        g = symmetric(3)
        whole = g.subgroup(list(g.generators))
        assert g.quotient(whole).order == 1

    def test_quotient_of_s4_by_klein(self) -> None:
        g = symmetric(4)
        a4 = g.derived()
        v4 = g.subgroup_from_members(a4.embedding[a4.derived().embedding])
        q = g.quotient(v4)
        assert q.order == 6
        assert not q.is_abelian()

    def test_coset_keys_are_smallest_member_keys(self) -> None:
        g = symmetric(4)
        backend = g.cosets(g.derived())
        for coset in range(len(backend.representatives)):
            members = backend.members(coset).tolist()
            assert backend.canonical_key(coset) == min(g.keys[i] for i in members)

    def test_quotient_keys_ignore_generator_order(self) -> None:
        gates = [standard_gate(GateName.H), standard_gate(GateName.P)]
        tables = [
            enumerate_group(MatrixBackend(dim=2), from_exact(gens), name="C1")
            for gens in (gates, gates[::-1])
        ]
        first, second = (t.central_quotient() for t in tables)
        assert first.order == second.order == 24
        assert set(first.keys) == set(second.keys)
        center = tables[0].center().embedding.tolist()
        assert first.keys[0] == min(tables[0].keys[i] for i in center)

    def test_non_normal_quotient_refused(self) -> None:
        g = symmetric(3)
        h = g.subgroup([g.generators[0]])
        assert not g.is_normal(h)
        with pytest.raises(NotNormalError):
            g.quotient(h)

    def test_foreign_subgroup_refused(self) -> None:
        with pytest.raises(NotSubgroupError):
            symmetric(3).quotient(cyclic(2))

    def test_subgroup_from_members(self) -> None:
        g = cyclic(12)
        h = g.subgroup_from_members([0, 3, 6, 9])
        assert h.order == 4
        with pytest.raises(NotSubgroupError):
            g.subgroup_from_members([0, 1, 2])

    def test_normal_closure_of_transposition(self) -> None:
        g = symmetric(4)
        assert g.normal_closure([g.generators[0]]).order == 24

    def test_element_orders(self) -> None:
        assert symmetric(3).order_histogram() == ((1, 1), (2, 3), (3, 2))
        assert symmetric(4).exponent == 12


class TestIndexTwo:
    @pytest.mark.parametrize(
        ("group", "count"),
        [(cyclic(4), 1), (klein(), 3), (cyclic(3), 0), (symmetric(4), 1)],
    )
    def test_count(self, group, count) -> None:
        assert group.count_index2() == count
        assert len(group.index2_subgroups()) == count

    def test_kernels_have_half_the_elements(self) -> None:
        g = klein()
        for members in g.index2_subgroups():
            assert len(members) == 2
            assert 0 in members.tolist()


class TestAbelianInvariants:
    @pytest.mark.parametrize(
        ("group", "invariants"),
        [
            (cyclic(12), (3, 4)),
            (klein(), (2, 2)),
            (symmetric(4), (2,)),
            (cyclic(1), ()),
        ],
    )
    def test_invariants(self, group, invariants) -> None:
        assert group.abelian_invariants() == invariants


class TestCayley:
    def test_table_matches_products(self) -> None:
        g = symmetric(3)
        table = g.cayley_table()
        assert table.shape == (6, 6)
        assert table[2, 3] == g.multiply(2, 3)
        assert np.array_equal(table[:, 0], np.arange(6))

    def test_limit(self) -> None:
        with pytest.raises(GroupTooLargeError):
            symmetric(4).cayley_table(limit=10)

    def test_embedding_needs_parent(self) -> None:
        with pytest.raises(NotSubgroupError):
            _ = cyclic(3).embedding


class TestTableFromElements:
    def test_same_ids_as_enumeration(self) -> None:
        g = clifford_one()
        gates = [standard_gate(GateName.H), standard_gate(GateName.P)]
        generators = from_exact(gates)
        rebuilt = table_from_elements(g.backend, g.elements, generators, name="C1")
        assert rebuilt.keys == g.keys
        assert rebuilt.generators == g.generators
        assert np.array_equal(rebuilt.left_action, g.left_action)
        assert rebuilt.center().order == 8

    def test_missing_element_refused(self) -> None:
        g = cyclic(6)
        with pytest.raises(ClosureViolationError, match="permute"):
            table_from_elements(g.backend, g.elements[:5], [1], name="Z6")

    def test_identity_must_come_first(self) -> None:
        g = cyclic(6)
        rotated = [*g.elements[1:], g.elements[0]]
        with pytest.raises(ClosureViolationError, match="identity"):
            table_from_elements(g.backend, rotated, [1], name="Z6")

    def test_repeated_element_refused(self) -> None:
        g = cyclic(6)
        with pytest.raises(ClosureViolationError, match="repeated"):
            table_from_elements(g.backend, [*g.elements, 3], [1], name="Z6")
