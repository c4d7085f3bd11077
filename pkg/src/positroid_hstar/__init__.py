"""Exact Ehrhart h*-polynomials of positroid polytopes.

Four independent routes to the same polynomial, each cross-validating the
others:

- the cover statistic of a breadth-first shelling of the circuit
  triangulation (``triangulation.hstar_shelling``),
- permutation descents for the half-open polytope plus Moebius
  inclusion-exclusion over the removed upper facets
  (``halfopen.hstar_closed_via_inclusion_exclusion``),
- brute-force lattice-point counting and the binomial transform
  (``ehrhart.hstar_by_counting``),
- cover statistics over circular extensions of a bicolored subdivision's
  chain order, for tree positroids (``tree.hstar_tree``).
"""

from .core import ExactPolynomial
from .ehrhart import (
    CountProfile,
    EhrhartPolynomial,
    count_points,
    ehrhart_interpolate,
    ehrhart_of_positroid,
    ehrhart_product,
    face_hstar,
    hstar_by_counting,
    hstar_from_counts,
    hstar_of_positroid_by_counting,
)
from .halfopen import (
    CanonicalFacet,
    canonical_facets,
    face_poset_of_uppers,
    half_open_simplex,
    hstar_closed_via_inclusion_exclusion,
    hstar_half_open,
    hstar_half_open_by_counting,
    moebius,
)
from .positroid import (
    DecoratedPermutation,
    DisconnectedPositroidError,
    GrassmannNecklace,
    HRepresentation,
    IntervalInequality,
    NecklaceError,
    PositroidBases,
    bases_from_necklace,
    decompose_direct_sum,
    decorated_from_necklace,
    h_representation,
    is_connected,
    necklace_from_bases,
    necklace_from_decorated,
    rank_of,
    validate_necklace,
    vertices,
)
from .tree import (
    BicoloredSubdivision,
    SubdivisionError,
    arcs,
    circular_extensions,
    h_rep_from_subdivision,
    hstar_tree,
    random_subdivision,
    tau_order,
    validate_subdivision,
)
from .triangulation import (
    AffineLabelingReport,
    ShellingPoset,
    TriangulationGraph,
    TriangulationLabel,
    affine_consistency_check,
    build_graph,
    enumerate_labels,
    hstar_from_covers,
    hstar_shelling,
    phi_inverse_point,
    shelling_poset,
    simplex_facets,
    simplex_vertices,
)

__all__ = [name for name in dir() if not name.startswith("_")]
