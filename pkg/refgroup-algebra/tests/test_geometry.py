import pytest

from refgroup_core.constants import GateName
from refgroup_core.matrix import standard_gate, tensor_product
from refgroup_core.pauli import all_classes, clifford_action_permutation, parse_pauli
from refgroup_core.permutation import Permutation
from refgroup_algebra.exceptions import (
    NotAGridError,
    NotIndependentError,
    TooManyPointsError,
)
from refgroup_algebra.geometry import (
    HyperplaneKind,
    IncidenceGeometry,
    check_gq_axioms,
    collinearity_edges,
    collineation_count,
    entangled_grid,
    enumerate_hyperplanes,
    find_hyperplane,
    independent_set_chain,
    is_entangled,
    iter_independent_sets,
    line_pair_analysis,
    mermin_square_signs,
    observable_group,
    preserves_lines,
    sub_geometry_group_analysis,
)

# IX has symplectic index 4.
IX = 3


@pytest.fixture(scope="module")
def hyperplanes(geometry):
    return enumerate_hyperplanes(geometry)


def point_of(geometry, word: str) -> int:
    return geometry.points.index(parse_pauli(word))


class TestGeometry:
    def test_size(self, geometry) -> None:
        assert len(geometry.points) == 15
        assert len(geometry.lines) == 15

    def test_labels(self, geometry) -> None:
        assert geometry.label(0) == "IZ"
        assert geometry.label(IX) == "IX"

    def test_lines_are_commuting_triples(self, geometry) -> None:
        for line in geometry.lines:
            a, b, c = (geometry.points[p] for p in line)
            assert a.commutes_with(b)
            assert b.commutes_with(c)

    def test_axioms(self, geometry) -> None:
        assert check_gq_axioms(geometry, 2, 2).passed

    def test_wrong_parameters(self, geometry) -> None:
        report = check_gq_axioms(geometry, 2, 1)
        assert report.line_size
        assert not report.point_degree
        assert not report.passed

    def test_collinearity(self, geometry) -> None:
        adjacency = geometry.collinearity()
        assert (adjacency.sum(axis=1) == 6).all()
        assert len(collinearity_edges(geometry)) == 45

    def test_lines_through(self, geometry) -> None:
        assert all(len(geometry.lines_through(p)) == 3 for p in range(15))


class TestHyperplanes:
    def test_census(self, hyperplanes) -> None:
        kinds = [h.kind for h in hyperplanes]
        assert kinds.count(HyperplaneKind.PERP_SET) == 15
        assert kinds.count(HyperplaneKind.GRID) == 10
        assert kinds.count(HyperplaneKind.OVOID) == 6
        assert HyperplaneKind.OTHER not in kinds

    def test_sizes(self, hyperplanes) -> None:
        sizes = {h.kind: {len(h.points)} for h in hyperplanes}
        assert sizes[HyperplaneKind.PERP_SET] == {7}
        assert sizes[HyperplaneKind.GRID] == {9}
        assert sizes[HyperplaneKind.OVOID] == {5}

    def test_perp_set_center(self, geometry, hyperplanes) -> None:
        perp = find_hyperplane(
            hyperplanes, HyperplaneKind.PERP_SET, lambda h: h.center == IX
        )
        assert len(perp.lines) == 3
        for p in perp.points:
            assert geometry.points[p].commutes_with(geometry.points[IX])

    def test_ovoids_are_anticommuting(self, geometry, hyperplanes) -> None:
        ovoid = find_hyperplane(
            hyperplanes, HyperplaneKind.OVOID, lambda h: IX in h.points
        )
        chosen = [geometry.points[p] for p in ovoid.points]
        assert len(independent_set_chain(chosen, 2)) == 1

    def test_missing(self, hyperplanes) -> None:
        with pytest.raises(LookupError, match="no ovoid"):
            find_hyperplane(hyperplanes, HyperplaneKind.OVOID, lambda h: False)

    def test_point_limit(self) -> None:
        big = IncidenceGeometry(points=tuple(all_classes(3)), lines=())
        with pytest.raises(TooManyPointsError):
            enumerate_hyperplanes(big)


class TestMerminSquares:
    def test_entangled_grid(self, geometry, hyperplanes) -> None:
        grid = entangled_grid(geometry, hyperplanes)
        assert all(is_entangled(geometry.points[p]) for p in grid.points)
        signs = mermin_square_signs(geometry, grid)
        assert signs.signs == ((-1, -1, -1), (1, 1, 1))
        assert signs.product == -1

    def test_every_grid_is_contextual(self, geometry, hyperplanes) -> None:
        grids = [h for h in hyperplanes if h.kind is HyperplaneKind.GRID]
        results = [mermin_square_signs(geometry, g) for g in grids]
        assert all(r.product == -1 for r in results)
        split = [r for r in results if r.signs == ((-1, -1, -1), (1, 1, 1))]
        assert len(split) == 1

    def test_not_a_grid(self, geometry, hyperplanes) -> None:
        perp = find_hyperplane(hyperplanes, HyperplaneKind.PERP_SET, lambda h: True)
        with pytest.raises(NotAGridError):
            mermin_square_signs(geometry, perp)

    def test_is_entangled(self) -> None:
        assert is_entangled(parse_pauli("i^0 XZ"))
        assert not is_entangled(parse_pauli("i^0 IX"))


class TestObservableGroups:
    def test_line_pair_is_dihedral(self, geometry) -> None:
        a = point_of(geometry, "i^0 XI")
        b = point_of(geometry, "i^0 ZI")
        pair = line_pair_analysis(geometry, a, b)
        assert pair.order == 8
        assert pair.center().order == 2
        assert pair.name == "<XI,ZI>"

    def test_collinear_pair(self, geometry) -> None:
        line = geometry.lines[0]
        with pytest.raises(NotIndependentError):
            line_pair_analysis(geometry, line[0], line[1])

    def test_chain_orders(self) -> None:
        chosen = next(iter_independent_sets(2, 4))
        chain = independent_set_chain(chosen, 4)
        assert [g.name for g in chain] == ["g2", "g3", "g4"]
        assert [g.order for g in chain] == [8, 16, 32]

    def test_chain_bounds(self) -> None:
        chosen = next(iter_independent_sets(2, 3))
        with pytest.raises(ValueError, match="outside"):
            independent_set_chain(chosen, 4)

    def test_commuting_points(self) -> None:
        points = [parse_pauli("i^0 XI"), parse_pauli("i^0 IX")]
        with pytest.raises(NotIndependentError, match="commute"):
            independent_set_chain(points, 2)

    def test_independent_sets(self) -> None:
        sets = list(iter_independent_sets(2, 5))
        assert len(sets) == 6
        assert all(
            not a.commutes_with(b) for s in sets for a in s for b in s if a != b
        )
        assert len(list(iter_independent_sets(2, 6))) == 0

    def test_single_qubit_paulis(self) -> None:
        words = ["i^0 XI", "i^1 YI", "i^0 ZI"]
        group = observable_group([parse_pauli(w) for w in words])
        assert group.order == 16


class TestSubGeometries:
    def test_lines_by_sign(self, geometry) -> None:
        orders = set()
        for line in geometry.lines:
            report = sub_geometry_group_analysis(geometry, line)
            orders.add((report.order, report.automorphisms))
        assert orders <= {(4, 6), (8, 168)}
        assert (8, 168) in orders

    def test_sign_and_order_agree(self, geometry, hyperplanes) -> None:
        grid = entangled_grid(geometry, hyperplanes)
        signs = mermin_square_signs(geometry, grid)
        negative, positive = signs.classes
        assert sub_geometry_group_analysis(
            geometry, geometry.lines[negative[0]]
        ).order == 8
        assert sub_geometry_group_analysis(
            geometry, geometry.lines[positive[0]]
        ).order == 4

    def test_entangled_grid_group(self, geometry, hyperplanes) -> None:
        grid = entangled_grid(geometry, hyperplanes)
        report = sub_geometry_group_analysis(geometry, grid.points)
        assert report.order == 32
        assert report.outer == 72


class TestCollineations:
    @pytest.mark.timeout(60)
    def test_count(self, geometry) -> None:
        assert collineation_count(geometry) == 720

    def test_clifford_generators_preserve_lines(self, geometry) -> None:
        g = GateName
        gates = [
            tensor_product(standard_gate(g.H), standard_gate(g.I)),
            tensor_product(standard_gate(g.I), standard_gate(g.P)),
            standard_gate(g.CZ),
        ]
        for gate in gates:
            assert preserves_lines(geometry, clifford_action_permutation(gate, 2))

    def test_transposition_breaks_lines(self, geometry) -> None:
        swap = Permutation.from_cycles([(0, 1)], 15)
        assert not preserves_lines(geometry, swap)
