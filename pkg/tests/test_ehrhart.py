import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroid_hstar.core import ExactPolynomial
from positroid_hstar.ehrhart import (
    CountProfile,
    EhrhartPolynomial,
    closed_profile,
    count_points,
    ehrhart_interpolate,
    ehrhart_of_positroid,
    ehrhart_product,
    face_hstar,
    hstar_by_counting,
    hstar_from_counts,
    hstar_from_ehrhart,
)
from positroid_hstar.positroid import (
    HRepresentation,
    IntervalInequality,
    PositroidBases,
    h_representation,
    validate_necklace,
)

PYRAMID = validate_necklace([[1, 2], [2, 3], [1, 3], [1, 4]])
UNIFORM25 = validate_necklace([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
PRISM = validate_necklace([[1, 2, 4], [2, 3, 4], [1, 3, 4], [1, 4, 5], [1, 2, 5]])


class TestCountPoints:
    def test_uniform_first_dilate(self):
        assert count_points(h_representation(UNIFORM25), 1) == 10

    def test_uniform_second_dilate(self):
        assert count_points(h_representation(UNIFORM25), 2) == 45

    def test_pyramid_vertices(self):
        assert count_points(h_representation(PYRAMID), 1) == 5

    def test_zero_dilate_is_origin(self):
        assert count_points(h_representation(PYRAMID), 0) == 1

    def test_monotone_in_dilate(self):
        H = h_representation(PRISM)
        counts = [count_points(H, t) for t in range(5)]
        assert counts == sorted(counts)

    def test_strict_flags_only_shrink(self):
        H = h_representation(PYRAMID)
        strict = HRepresentation(H.n, H.r, tuple(
            IntervalInequality(q.start, q.stop, q.bound, q.sense, strict=True)
            for q in H.inequalities))
        for t in range(4):
            assert count_points(strict, t) <= count_points(H, t)


class TestInterpolation:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_standard_simplex(self, n):
        # vertices e_1..e_n: E(t) = C(t+n-1, n-1)
        J = validate_necklace([[i] for i in range(1, n + 1)])
        ehr = ehrhart_interpolate(closed_profile(h_representation(J), n - 1))
        for t in range(2 * n):
            assert ehr(t) == math.comb(t + n - 1, n - 1)

    def test_pyramid_cubic(self):
        profile = closed_profile(h_representation(PYRAMID), 3)
        assert profile.counts == (1, 5, 14, 30)
        ehr = ehrhart_interpolate(profile)
        expected = ExactPolynomial.from_coefficients(
            [1, Fraction(13, 6), Fraction(3, 2), Fraction(1, 3)])
        assert ehr.poly == expected

    def test_prism_face(self):
        ehr = ehrhart_interpolate(CountProfile(3, (1, 6, 18, 40)))
        for t in range(6):
            assert ehr(t) == math.comb(t + 2, 2) * (1 + t)

    def test_wrong_count_length_rejected(self):
        with pytest.raises(ValueError):
            CountProfile(3, (1, 2))


class TestHstarTransform:
    def test_standard_simplex_is_one(self):
        profile = CountProfile(3, tuple(math.comb(t + 3, 3) for t in range(4)))
        assert hstar_from_counts(profile) == ExactPolynomial.one()

    def test_uniform(self):
        assert hstar_from_counts(closed_profile(h_representation(UNIFORM25), 4)) == \
            ExactPolynomial.from_coefficients([1, 5, 5])

    def test_half_open_pyramid_profile(self):
        assert hstar_from_counts(CountProfile(3, (0, 0, 2, 8))) == \
            ExactPolynomial.from_coefficients([0, 0, 2])

    def test_negative_coefficient_flagged(self):
        with pytest.raises(ArithmeticError):
            hstar_from_counts(CountProfile(2, (1, 1, 1)))


class TestProducts:
    def test_triangle_times_segment(self):
        triangle = EhrhartPolynomial(
            ExactPolynomial.from_coefficients([1, Fraction(3, 2), Fraction(1, 2)]), 2)
        segment = EhrhartPolynomial(ExactPolynomial.from_coefficients([1, 1]), 1)
        prism = ehrhart_product([triangle, segment])
        assert prism.dim == 3
        assert hstar_from_ehrhart(prism) == ExactPolynomial.from_coefficients([1, 2])

    def test_unit_factor(self):
        seg = EhrhartPolynomial(ExactPolynomial.from_coefficients([1, 1]), 1)
        point = EhrhartPolynomial(ExactPolynomial.one(), 0)
        assert ehrhart_product([seg, point]).poly == seg.poly

    def test_square_from_two_segments(self):
        seg = EhrhartPolynomial(ExactPolynomial.from_coefficients([1, 1]), 1)
        assert hstar_from_ehrhart(ehrhart_product([seg, seg])) == \
            ExactPolynomial.from_coefficients([1, 1])


class TestFaceHstar:
    def test_prism_facet(self):
        assert face_hstar(h_representation(PRISM), [(1, 4, 2)], 3) == \
            ExactPolynomial.from_coefficients([1, 2])

    def test_square_face(self):
        assert face_hstar(h_representation(PRISM), [(1, 2, 1), (1, 4, 2)], 2) == \
            ExactPolynomial.from_coefficients([1, 1])

    def test_vertex_face(self):
        # apex of the pyramid: x_1 = 1 and x_2 = 1
        assert face_hstar(h_representation(PYRAMID), [(1, 2, 1), (2, 3, 1)], 0) == \
            ExactPolynomial.one()

    def test_empty_face_rejected(self):
        with pytest.raises(ValueError):
            face_hstar(h_representation(PYRAMID), [(1, 2, 1), (1, 3, 0)], 1)


class TestDrivers:
    def test_oracle_matches_known_values(self):
        assert hstar_by_counting(PYRAMID) == ExactPolynomial.from_coefficients([1, 1])
        assert hstar_by_counting(PRISM) == ExactPolynomial.from_coefficients([1, 3, 1])

    def test_volume_counts_simplices(self):
        ehr = ehrhart_interpolate(closed_profile(h_representation(UNIFORM25), 4))
        assert ehr.leading_coefficient * math.factorial(4) == 11

    def test_disconnected_product(self):
        B = PositroidBases(4, 2, frozenset(
            frozenset(b) for b in [(1, 3), (1, 4), (2, 3), (2, 4)]))
        ehr = ehrhart_of_positroid(B)
        assert ehr.dim == 2
        assert ehr.poly == ExactPolynomial.from_coefficients([1, 2, 1])

    def test_point_polytopes(self):
        loop = validate_necklace([[]])
        coloop = validate_necklace([[1]])
        for J in (loop, coloop):
            assert hstar_by_counting(J) == ExactPolynomial.one()

    @pytest.mark.parametrize("n", range(2, 6))
    def test_product_hstar_equals_ambient_count_for_every_direct_sum(self, n):
        # the factored pipeline must agree with counting the ambient polytope
        # on its own affine hull, for every disconnected positroid
        import itertools

        from positroid_hstar.ehrhart import hstar_of_positroid_by_counting
        from positroid_hstar.positroid import (
            DecoratedPermutation,
            bases_from_necklace,
            is_connected,
            necklace_from_decorated,
            polytope_dimension,
        )
        for perm in itertools.permutations(range(1, n + 1)):
            fixed = [i for i, v in enumerate(perm, 1) if v == i]
            for mask in range(1 << len(fixed)):
                white = frozenset(f for k, f in enumerate(fixed) if mask >> k & 1)
                necklace = necklace_from_decorated(DecoratedPermutation(perm, white))
                bases = bases_from_necklace(necklace)
                if is_connected(bases):
                    continue
                dim = polytope_dimension(bases)
                profile = CountProfile(dim, tuple(
                    count_points(h_representation(necklace), t) for t in range(dim + 1)))
                assert hstar_from_counts(profile) == hstar_of_positroid_by_counting(bases), \
                    necklace.compact()


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=3), st.integers(min_value=2, max_value=4))
def test_simplex_counts_match_binomial(t, n):
    J = validate_necklace([[i] for i in range(1, n + 1)])
    assert count_points(h_representation(J), t) == math.comb(t + n - 1, n - 1)
