from fractions import Fraction

import pytest

from positroid_hstar.core import ExactPolynomial
from positroid_hstar.ehrhart import count_points
from positroid_hstar.halfopen import (
    canonical_facets,
    face_poset_of_uppers,
    half_open_profile,
    half_open_simplex,
    hstar_closed_via_inclusion_exclusion,
    hstar_half_open,
    hstar_half_open_by_counting,
    moebius,
)
from positroid_hstar.positroid import validate_necklace
from positroid_hstar.triangulation import (
    enumerate_labels,
    label_from_word,
    phi_inverse_point,
    simplex_vertices,
)

PYRAMID = validate_necklace([[1, 2], [2, 3], [1, 3], [1, 4]])
UNIFORM25 = validate_necklace([[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]])
PRISM = validate_necklace([[1, 2, 4], [2, 3, 4], [1, 3, 4], [1, 4, 5], [1, 2, 5]])


def facet_strings(necklace, upper):
    return [str(f) for f in canonical_facets(necklace) if f.upper == upper]


class TestCanonicalFacets:
    def test_pyramid(self):
        assert facet_strings(PYRAMID, True) == [
            "x_1 <= 1", "x_1+x_2+x_3 <= 2", "x_2 <= 1"]
        assert facet_strings(PYRAMID, False) == ["x_1+x_2 >= 1", "x_3 >= 0"]

    def test_rank3(self):
        assert facet_strings(PRISM, True) == [
            "x_1 <= 1", "x_1+x_2+x_3 <= 2", "x_2 <= 1", "x_4 <= 1"]
        lowers = facet_strings(PRISM, False)
        assert "x_1+x_2 >= 1" in lowers and "x_3 >= 0" in lowers

    def test_uniform(self):
        assert facet_strings(UNIFORM25, True) == [
            "x_1 <= 1", "x_1+x_2+x_3+x_4 <= 2", "x_2 <= 1", "x_3 <= 1", "x_4 <= 1"]

    def test_redundant_inequalities_pruned(self):
        # x_1+x_2+x_3 >= 1 holds on the pyramid but is not a facet
        assert "x_1+x_2+x_3 >= 1" not in facet_strings(PYRAMID, False)


class TestHalfOpenDescents:
    def test_values(self):
        assert hstar_half_open(PYRAMID) == ExactPolynomial.from_coefficients([0, 0, 2])
        assert hstar_half_open(PRISM) == ExactPolynomial.from_coefficients([0, 0, 1, 4])
        assert hstar_half_open(UNIFORM25) == ExactPolynomial.from_coefficients([0, 0, 10, 1])

    def test_matches_strict_counting(self):
        for necklace in (PYRAMID, PRISM, UNIFORM25):
            assert hstar_half_open(necklace) == hstar_half_open_by_counting(necklace)

    def test_zero_constant_term_and_simplex_count(self):
        for necklace in (PYRAMID, PRISM, UNIFORM25):
            poly = hstar_half_open(necklace)
            assert poly.coefficients[0] == 0
            assert poly(1) == len(enumerate_labels(necklace))

    def test_half_open_profile_starts_at_zero(self):
        assert half_open_profile(PYRAMID).counts == (0, 0, 2, 8)


class TestHalfOpenSimplex:
    def test_identity_label_only_top_facet_strict(self):
        H = half_open_simplex(label_from_word((1, 2, 3, 4)))
        strict = {(q.start, q.stop) for q in H.inequalities if q.strict}
        assert strict == {(1, 4)}

    def test_strictness_matches_chain_of_3241(self):
        # points of the projected simplex lie in the half-open simplex exactly
        # when their fractional image satisfies 0 < y_3 < y_2 <= y_4 < y_1 <= 1
        lab = label_from_word((3, 2, 4, 1, 5))
        H = half_open_simplex(lab)
        verts = [v[:-1] for v in simplex_vertices(lab)]
        import random
        rng = random.Random(11)
        points = [tuple(v) for v in verts]
        for _ in range(40):
            weights = [Fraction(rng.randrange(0, 4)) for _ in verts]
            if sum(weights) == 0:
                continue
            total = sum(weights)
            points.append(tuple(
                sum(w * Fraction(v[k]) for w, v in zip(weights, verts)) / total
                for k in range(4)))
        for p in points:
            y = phi_inverse_point(p)
            y = [v if v != 0 else Fraction(1) for v in y]  # wrap 0 to 1 on the circle
            in_chain = (0 < y[2] < y[1] <= y[3] < y[0] <= 1)
            lifted = p + (lab.rank - sum(p),)
            assert H.contains(lifted) == in_chain, p

    def test_half_open_simplices_partition_the_half_open_polytope(self):
        labels = enumerate_labels(PRISM)
        profile = half_open_profile(PRISM)
        for t in range(5):
            total = sum(count_points(half_open_simplex(lab), t) for lab in labels)
            assert total == profile.counts[t]

    def test_pyramid_partition(self):
        labels = enumerate_labels(PYRAMID)
        profile = half_open_profile(PYRAMID)
        for t in range(4):
            assert sum(count_points(half_open_simplex(lab), t) for lab in labels) \
                == profile.counts[t]


class TestFacePoset:
    def test_pyramid_poset_shape(self):
        poset = face_poset_of_uppers(PYRAMID)
        dims = sorted(node.dim for node in poset.nodes)
        assert dims == [0, 1, 1, 2, 2, 2, 3]

    def test_pyramid_moebius(self):
        poset = face_poset_of_uppers(PYRAMID)
        mu = moebius(poset)
        by_dim = {}
        for node, value in mu.items():
            by_dim.setdefault(node.dim, []).append(value)
        assert sorted(by_dim[2]) == [-1, -1, -1]
        assert sorted(by_dim[1]) == [1, 1]
        assert by_dim[0] == [0]

    def test_rank3_poset_shape(self):
        poset = face_poset_of_uppers(PRISM)
        dims = sorted(node.dim for node in poset.nodes)
        assert dims == [0, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4]
        sizes = sorted(len(node.vertex_set) for node in poset.nodes if node.dim == 3)
        assert sizes == [5, 5, 5, 6]  # three pyramids and one prism

    def test_rank3_moebius(self):
        mu = moebius(face_poset_of_uppers(PRISM))
        by_dim = {}
        for node, value in mu.items():
            by_dim.setdefault(node.dim, []).append(value)
        assert sorted(by_dim[3]) == [-1, -1, -1, -1]
        assert sorted(by_dim[2]) == [1, 1, 1, 1, 1]
        assert sorted(by_dim[1]) == [-1, -1, 0]
        assert by_dim[0] == [0]

    def test_antichain_when_uppers_disjoint(self):
        # rank-1 simplex: single upper facet, poset is top plus that facet
        J = validate_necklace([[1], [2], [3]])
        poset = face_poset_of_uppers(J)
        assert sorted(node.dim for node in poset.nodes) == [1, 2]
        assert moebius(poset)[poset.nodes[1]] == -1

    @pytest.mark.parametrize("necklace", [PYRAMID, PRISM, UNIFORM25])
    def test_moebius_rows_sum_to_zero(self, necklace):
        poset = face_poset_of_uppers(necklace)
        mu = moebius(poset)
        for node in poset.nodes:
            if node == poset.top:
                continue
            total = mu[node] + sum(mu[g] for g in poset.nodes
                                   if node.vertex_set < g.vertex_set)
            assert total == 0


class TestInclusionExclusion:
    @pytest.mark.parametrize("necklace,coeffs", [
        (PYRAMID, [1, 1]), (PRISM, [1, 3, 1]), (UNIFORM25, [1, 5, 5]),
    ])
    def test_values(self, necklace, coeffs):
        assert hstar_closed_via_inclusion_exclusion(necklace) == \
            ExactPolynomial.from_coefficients(coeffs)

    def test_methods_agree_on_random_seven_element_instances(self):
        import random

        from positroid_hstar.ehrhart import hstar_by_counting
        from positroid_hstar.positroid import (
            DecoratedPermutation,
            bases_from_necklace,
            is_connected,
            necklace_from_decorated,
        )
        from positroid_hstar.triangulation import hstar_shelling

        rng = random.Random(77)
        found = 0
        while found < 3:
            perm = list(range(1, 8))
            rng.shuffle(perm)
            necklace = necklace_from_decorated(DecoratedPermutation(tuple(perm)))
            if not is_connected(bases_from_necklace(necklace)):
                continue
            found += 1
            closed = hstar_shelling(necklace)
            assert hstar_closed_via_inclusion_exclusion(necklace) == closed
            assert hstar_by_counting(necklace) == closed
            assert hstar_half_open(necklace) == hstar_half_open_by_counting(necklace)

    def test_pyramid_identity_by_hand(self):
        # 2z^2 + 3(1-z) - 2(1-z)^2 = 1 + z
        z2 = ExactPolynomial.from_coefficients([0, 0, 2])
        omz = ExactPolynomial.from_coefficients([1, -1])
        assert z2 + 3 * omz - 2 * omz ** 2 == ExactPolynomial.from_coefficients([1, 1])
