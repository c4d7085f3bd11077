import random

import pytest

from positroid_hstar.core import ExactPolynomial
from positroid_hstar.positroid import validate_necklace
from positroid_hstar.tree import (
    SubdivisionError,
    arcs,
    circular_extensions,
    h_rep_from_subdivision,
    hstar_tree,
    positroid_from_subdivision,
    random_subdivision,
    tau_order,
    validate_subdivision,
)
from positroid_hstar.positroid import zero_one_points
from positroid_hstar.triangulation import enumerate_labels, hstar_shelling

SQUARE = validate_subdivision(4, [("black", [1, 2, 3]), ("white", [1, 3, 4])])
PENTAGON = validate_subdivision(
    5, [("black", [1, 2, 3]), ("white", [1, 3, 4]), ("black", [1, 4, 5])])


class TestValidation:
    def test_square_type(self):
        assert (SQUARE.type_count, SQUARE.n) == (1, 4)

    def test_pentagon_type(self):
        assert (PENTAGON.type_count, PENTAGON.n) == (2, 5)

    def test_same_color_shared_edge_rejected(self):
        with pytest.raises(SubdivisionError, match="equal color"):
            validate_subdivision(4, [("black", [1, 2, 3]), ("black", [1, 3, 4])])

    def test_crossing_chords_rejected(self):
        with pytest.raises(SubdivisionError, match="cross"):
            validate_subdivision(4, [("black", [1, 2, 3]), ("white", [1, 3, 4]),
                                     ("white", [2, 4])])

    def test_non_partition_rejected(self):
        with pytest.raises(SubdivisionError):
            validate_subdivision(5, [("black", [1, 2, 3]), ("white", [1, 3, 4])])

    def test_vertex_order_is_immaterial(self):
        tau = validate_subdivision(4, [("black", [3, 1, 2]), ("white", [4, 3, 1])])
        assert tau == SQUARE

    def test_all_white_polygon(self):
        tau = validate_subdivision(5, [("white", [1, 2, 3, 4, 5])])
        assert tau.type_count == 0 and tau.rank == 1


class TestArcs:
    def test_square_arc_1_to_3(self):
        info = {(a.start, a.end): a for a in arcs(SQUARE)}
        assert info[(1, 3)].compatible and info[(1, 3)].facet_defining
        assert info[(1, 3)].area == 1

    def test_square_arc_2_to_4_not_compatible(self):
        info = {(a.start, a.end): a for a in arcs(SQUARE)}
        assert not info[(2, 4)].compatible and not info[(2, 4)].facet_defining

    def test_polygon_edge_of_white_cell(self):
        info = {(a.start, a.end): a for a in arcs(SQUARE)}
        assert info[(3, 4)].compatible and info[(3, 4)].area == 0

    def test_opposite_areas_split_the_type(self):
        for tau in (SQUARE, PENTAGON):
            info = {(a.start, a.end): a for a in arcs(tau)}
            for (i, j), a in info.items():
                if a.compatible:
                    assert a.area + info[(j, i)].area == tau.type_count


class TestHRep:
    def test_square_gives_pyramid(self):
        points = set(zero_one_points(h_rep_from_subdivision(SQUARE)))
        assert points == {(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1),
                          (0, 1, 1, 0), (0, 1, 0, 1)}

    def test_pentagon_gives_eight_vertices(self):
        necklace, bases = positroid_from_subdivision(PENTAGON)
        assert necklace == validate_necklace(
            [[1, 2, 4], [2, 3, 4], [1, 3, 4], [1, 4, 5], [1, 2, 5]])
        assert len(bases.bases) == 8

    def test_all_white_is_standard_simplex(self):
        tau = validate_subdivision(5, [("white", [1, 2, 3, 4, 5])])
        points = zero_one_points(h_rep_from_subdivision(tau))
        assert points == tuple(sorted(
            tuple(1 if k == i else 0 for k in range(1, 6)) for i in range(1, 6)))


class TestTauOrder:
    def test_square_chains(self):
        assert tau_order(SQUARE) == ((1, 3, 4), (3, 2, 1))

    def test_pentagon_chains(self):
        assert tau_order(PENTAGON) == ((1, 3, 4), (3, 2, 1), (5, 4, 1))

    def test_triangulated_polygon_has_length3_chains(self):
        tau = validate_subdivision(5, [("black", [1, 2, 3]), ("white", [1, 3, 4]),
                                       ("black", [1, 4, 5])])
        assert all(len(c) == 3 for c in tau_order(tau))


class TestCircularExtensions:
    def test_square_extensions(self):
        assert set(circular_extensions(tau_order(SQUARE), 4)) == {
            (2, 1, 3, 4), (1, 3, 2, 4)}

    def test_pentagon_extensions_match_labels(self):
        necklace, _ = positroid_from_subdivision(PENTAGON)
        ext = tuple(sorted(circular_extensions(tau_order(PENTAGON), 5)))
        assert ext == tuple(lab.word for lab in enumerate_labels(necklace))

    def test_empty_chain_set_gives_all_cycles(self):
        assert len(circular_extensions((), 5)) == 24

    def test_short_chains_impose_nothing(self):
        assert circular_extensions(((1, 2),), 4) == circular_extensions((), 4)


class TestHstarTree:
    def test_square(self):
        assert hstar_tree(SQUARE) == ExactPolynomial.from_coefficients([1, 1])

    def test_pentagon(self):
        assert hstar_tree(PENTAGON) == ExactPolynomial.from_coefficients([1, 3, 1])

    def test_all_white_is_simplex(self):
        tau = validate_subdivision(6, [("white", [1, 2, 3, 4, 5, 6])])
        assert hstar_tree(tau) == ExactPolynomial.one()

    def test_base_point_free(self):
        ext = circular_extensions(tau_order(PENTAGON), 5)
        values = {hstar_tree(PENTAGON, base=w).coefficients for w in ext}
        assert values == {(1, 3, 1)}


class TestRandomSubdivisions:
    def test_generator_agrees_with_necklace_pipeline(self):
        rng = random.Random(123)
        for _ in range(25):
            n = rng.randrange(4, 8)
            tau = random_subdivision(n, rng)
            necklace, _ = positroid_from_subdivision(tau)
            ext = tuple(sorted(circular_extensions(tau_order(tau), n)))
            assert ext == tuple(lab.word for lab in enumerate_labels(necklace))
            assert hstar_tree(tau) == hstar_shelling(necklace)

    def test_generator_produces_valid_subdivisions(self):
        rng = random.Random(99)
        seen_types = set()
        for _ in range(40):
            tau = random_subdivision(6, rng)
            assert sum(len(vs) - 2 for _, vs in tau.cells) == 4
            seen_types.add(tau.type_count)
        assert len(seen_types) > 2
