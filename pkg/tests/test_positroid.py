import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroid_hstar.positroid import (
    DecoratedPermutation,
    NecklaceError,
    PositroidBases,
    bases_from_necklace,
    decompose_direct_sum,
    decorated_from_necklace,
    h_representation,
    is_connected,
    is_matroid,
    is_stabilized_interval_free,
    necklace_from_bases,
    necklace_from_decorated,
    polytope_dimension,
    rank_of,
    validate_necklace,
    vertices,
    zero_one_points,
)

PYRAMID = validate_necklace([[1, 2], [2, 3], [1, 3], [1, 4]])
UNIFORM25 = validate_necklace([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
PRISM = validate_necklace([[1, 2, 4], [2, 3, 4], [1, 3, 4], [1, 4, 5], [1, 2, 5]])


def decorated_permutations(n):
    for perm in itertools.permutations(range(1, n + 1)):
        fixed = [i for i, v in enumerate(perm, 1) if v == i]
        for mask in range(1 << len(fixed)):
            white = frozenset(f for k, f in enumerate(fixed) if mask >> k & 1)
            yield DecoratedPermutation(perm, white)


class TestNecklaceValidation:
    def test_pyramid_type(self):
        assert (PYRAMID.n, PYRAMID.rank) == (4, 2)

    def test_wheel_type(self):
        J = validate_necklace([[1, 2, 3], [2, 3, 5], [3, 4, 5], [1, 4, 5], [1, 2, 5]])
        assert (J.n, J.rank) == (5, 3)

    def test_truncated_rejected(self):
        with pytest.raises(NecklaceError):
            validate_necklace([[1, 2], [3, 4]], n=4)

    def test_successor_violation_names_index(self):
        with pytest.raises(NecklaceError, match="index 2"):
            validate_necklace([[1, 2], [2, 3], [2, 4], [1, 4]])

    def test_unequal_sizes_rejected(self):
        with pytest.raises(NecklaceError):
            validate_necklace([[1, 2], [2], [1, 3], [1, 4]])

    def test_out_of_range_rejected(self):
        with pytest.raises(NecklaceError):
            validate_necklace([[1, 7], [2, 7], [1, 3], [1, 4]])


class TestBasesFromNecklace:
    def test_pyramid(self):
        assert bases_from_necklace(PYRAMID).sorted_bases() == (
            (1, 2), (1, 3), (1, 4), (2, 3), (2, 4))

    def test_uniform(self):
        assert len(bases_from_necklace(UNIFORM25).bases) == 10

    def test_rank3_example(self):
        assert bases_from_necklace(PRISM).sorted_bases() == (
            (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5),
            (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5))


class TestNecklaceFromBases:
    def test_pyramid_round_trip(self):
        assert necklace_from_bases(bases_from_necklace(PYRAMID)) == PYRAMID

    def test_uniform_gale_minima(self):
        all_pairs = frozenset(frozenset(c) for c in itertools.combinations(range(1, 6), 2))
        J = necklace_from_bases(PositroidBases(5, 2, all_pairs))
        assert J == validate_necklace([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
        assert J.sorted_subset(5) == (5, 1)

    def test_direct_sum_round_trip(self):
        B = PositroidBases(4, 2, frozenset(
            frozenset(b) for b in [(1, 3), (1, 4), (2, 3), (2, 4)]))
        J = necklace_from_bases(B)
        assert bases_from_necklace(J).bases == B.bases

    def test_non_positroid_matroid_grows(self):
        # direct sum over the crossing pair {1,3} | {2,4}: a matroid, not a positroid
        B = PositroidBases(4, 2, frozenset(
            frozenset(b) for b in [(1, 2), (1, 4), (2, 3), (3, 4)]))
        assert is_matroid(B)
        J = necklace_from_bases(B)
        assert bases_from_necklace(J).bases > B.bases


class TestDecoratedBijection:
    def test_pyramid_forward(self):
        dec = decorated_from_necklace(PYRAMID)
        assert dec.perm == (3, 1, 4, 2) and not dec.fixed_points

    def test_coloop_and_loop(self):
        J = validate_necklace([[1], [1]])
        dec = decorated_from_necklace(J)
        assert dec.perm == (1, 2)
        assert dec.colors() == {1: "white", 2: "black"}

    def test_uniform_forward(self):
        dec = decorated_from_necklace(UNIFORM25)
        assert dec.perm == (3, 4, 5, 1, 2)
        assert necklace_from_decorated(dec) == UNIFORM25

    def test_all_white_identity(self):
        n = 4
        dec = DecoratedPermutation(tuple(range(1, n + 1)), frozenset(range(1, n + 1)))
        J = necklace_from_decorated(dec)
        assert all(s == frozenset(range(1, n + 1)) for s in J.subsets)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_round_trips_exhaustive(self, n):
        for dec in decorated_permutations(n):
            J = necklace_from_decorated(dec)
            assert decorated_from_necklace(J) == dec
            assert necklace_from_decorated(decorated_from_necklace(J)) == J

    def test_colors_must_cover_fixed_points(self):
        with pytest.raises(ValueError):
            DecoratedPermutation((2, 1, 3), frozenset({1}))


class TestRankAndConnectivity:
    def test_rank_examples(self):
        B = bases_from_necklace(PYRAMID)
        assert rank_of(range(1, 5), B) == 2
        assert rank_of((), B) == 0
        assert rank_of({3, 4}, B) == 1

    def test_connected_examples(self):
        assert is_connected(bases_from_necklace(PYRAMID))
        assert is_connected(bases_from_necklace(UNIFORM25))
        disco = PositroidBases(4, 2, frozenset(
            frozenset(b) for b in [(1, 3), (1, 4), (2, 3), (2, 4)]))
        assert not is_connected(disco)

    def test_connected_polytopes_have_full_dimension(self):
        for n in range(2, 6):
            for dec in decorated_permutations(n):
                B = bases_from_necklace(necklace_from_decorated(dec))
                if is_connected(B):
                    assert polytope_dimension(B) == n - 1

    @pytest.mark.parametrize("n", range(1, 6))
    def test_sif_agrees_with_rank_split(self, n):
        for dec in decorated_permutations(n):
            B = bases_from_necklace(necklace_from_decorated(dec))
            conn = is_connected(B)
            if n == 1:
                assert conn
                continue
            sif = not dec.fixed_points and is_stabilized_interval_free(dec.perm)
            assert conn == sif, dec

    @pytest.mark.parametrize("n", range(2, 6))
    def test_sif_wrapping_convention_is_immaterial(self, n):
        for perm in itertools.permutations(range(1, n + 1)):
            assert (is_stabilized_interval_free(perm, wrapping=True)
                    == is_stabilized_interval_free(perm, wrapping=False))


class TestDecomposition:
    def test_two_blocks(self):
        B = PositroidBases(4, 2, frozenset(
            frozenset(b) for b in [(1, 3), (1, 4), (2, 3), (2, 4)]))
        parts = decompose_direct_sum(B)
        assert [g for g, _ in parts] == [(1, 2), (3, 4)]
        for _, comp in parts:
            assert comp.sorted_bases() == ((1,), (2,))

    def test_connected_is_single_component(self):
        parts = decompose_direct_sum(bases_from_necklace(PYRAMID))
        assert len(parts) == 1 and parts[0][0] == (1, 2, 3, 4)

    def test_all_coloops(self):
        n = 4
        J = necklace_from_decorated(
            DecoratedPermutation(tuple(range(1, n + 1)), frozenset(range(1, n + 1))))
        parts = decompose_direct_sum(bases_from_necklace(J))
        assert [g for g, _ in parts] == [(1,), (2,), (3,), (4,)]
        assert all(comp.r == 1 for _, comp in parts)

    def test_loop_components_have_rank_zero(self):
        # 1 and 3 swapped, 2 is a black fixed point (a loop)
        dec = DecoratedPermutation((3, 2, 1), frozenset())
        B = bases_from_necklace(necklace_from_decorated(dec))
        parts = decompose_direct_sum(B)
        assert [(g, comp.r) for g, comp in parts] == [((1, 3), 1), ((2,), 0)]


class TestHRepresentation:
    def test_pyramid_inequalities(self):
        H = h_representation(PYRAMID)
        stored = {(q.start, q.stop, q.bound) for q in H.inequalities}
        assert stored == {(1, 2, 1), (2, 3, 1), (3, 1, 1), (4, 1, 1)}
        assert all(q.sense == "<=" for q in H.inequalities)

    def test_uniform_is_box(self):
        H = h_representation(UNIFORM25)
        stored = {(q.start, q.stop, q.bound) for q in H.inequalities}
        assert stored == {(i, i % 5 + 1, 1) for i in range(1, 6)}

    def test_rank3_contains_expected_inequalities(self):
        H = h_representation(PRISM)
        stored = {(q.start, q.stop, q.bound) for q in H.inequalities}
        assert (3, 1, 2) in stored  # x_3+x_4+x_5 <= 2, i.e. x_1+x_2 >= 1
        assert (1, 4, 2) in stored  # x_1+x_2+x_3 <= 2
        assert zero_one_points(H) == vertices(bases_from_necklace(PRISM))

    @pytest.mark.parametrize("necklace", [PYRAMID, UNIFORM25, PRISM])
    def test_zero_one_points_match_vertices(self, necklace):
        assert zero_one_points(h_representation(necklace)) == \
            vertices(bases_from_necklace(necklace))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_zero_one_points_match_vertices_exhaustive(self, n):
        for dec in decorated_permutations(n):
            J = necklace_from_decorated(dec)
            assert zero_one_points(h_representation(J)) == \
                vertices(bases_from_necklace(J))


class TestVertices:
    def test_pyramid_vertices(self):
        assert set(vertices(bases_from_necklace(PYRAMID))) == {
            (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)}

    def test_uniform_count(self):
        assert len(vertices(bases_from_necklace(UNIFORM25))) == 10

    def test_single_basis(self):
        B = PositroidBases(4, 2, frozenset([frozenset({1, 2})]))
        assert vertices(B) == ((1, 1, 0, 0),)


@settings(max_examples=40)
@given(st.integers(min_value=2, max_value=6), st.data())
def test_random_decorated_round_trip(n, data):
    perm = tuple(data.draw(st.permutations(list(range(1, n + 1)))))
    fixed = sorted(i for i, v in enumerate(perm, 1) if v == i)
    white = frozenset(data.draw(st.sets(st.sampled_from(fixed)))) if fixed else frozenset()
    dec = DecoratedPermutation(perm, white)
    assert decorated_from_necklace(necklace_from_decorated(dec)) == dec
