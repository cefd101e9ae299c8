import pytest

from refgroup_algebra.references import (
    alternating_group,
    cyclic_group,
    direct_product,
    general_linear_group,
    general_linear_order,
    special_linear_group,
    symmetric_group,
    symmetric_table,
)


class TestPermutationGroups:
    @pytest.mark.parametrize(("n", "order"), [(1, 1), (3, 6), (5, 120), (6, 720)])
    def test_symmetric(self, n: int, order: int) -> None:
        assert symmetric_group(n).order() == order

    @pytest.mark.parametrize(("n", "order"), [(2, 1), (4, 12), (5, 60), (6, 360)])
    def test_alternating(self, n: int, order: int) -> None:
        assert alternating_group(n).order() == order

    def test_symmetric_table(self) -> None:
        table = symmetric_table(4)
        assert table.order == 24
        assert table.derived_series() == (24, 12, 4, 1)


class TestLinearGroups:
    @pytest.mark.parametrize(
        ("n", "p", "order"), [(2, 2, 6), (2, 3, 48), (3, 2, 168), (2, 5, 480)]
    )
    def test_general_linear(self, n: int, p: int, order: int) -> None:
        assert general_linear_group(n, p).order == order
        assert general_linear_order(n, p) == order

    def test_special_linear(self) -> None:
        assert special_linear_group(2, 3).order == 24

    def test_gl23_center(self) -> None:
        assert general_linear_group(2, 3).center().order == 2

    @pytest.mark.parametrize(
        ("n", "order"), [(2, 6), (4, 20160), (6, 20158709760)]
    )
    def test_order_formula_over_f2(self, n: int, order: int) -> None:
        assert general_linear_order(n, 2) == order


class TestSmallGroups:
    def test_cyclic(self) -> None:
        assert cyclic_group(12).order == 12
        assert cyclic_group(1).order == 1

    def test_direct_product(self) -> None:
        product = direct_product(cyclic_group(2), symmetric_table(3))
        assert product.order == 12
        assert not product.is_abelian()
        assert product.center().order == 2

    def test_abelian_product(self) -> None:
        product = direct_product(cyclic_group(2), cyclic_group(3), name="Z6")
        assert product.name == "Z6"
        assert product.is_abelian()
        assert product.exponent == 6
