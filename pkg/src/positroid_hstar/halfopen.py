"""Half-open positroid polytopes: descents, upper facets, inclusion-exclusion.

Project the polytope onto the first n-1 coordinates (eliminating x_n through
the sum equality) and write every facet as a bound on a contiguous block
x_lo + ... + x_{hi-1}.  A facet is *upper* when its canonical sense is <=.
Removing all upper facets leaves the half-open polytope, whose h*-polynomial
is the descent generating function z^(des+1) over triangulation labels.  The
closed h* is then recovered by Moebius inclusion-exclusion over the poset of
intersections of upper facets, with each face's h* supplied by the lattice
counting oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._linalg import affine_rank
from .core import ExactPolynomial, descent_count
from .ehrhart import CountProfile, count_constrained, face_hstar, hstar_from_counts, _scaled_bounds
from .positroid import (
    DisconnectedPositroidError,
    GrassmannNecklace,
    HRepresentation,
    IntervalInequality,
    bases_from_necklace,
    h_representation,
    is_connected,
    vertices,
)
from .triangulation import TriangulationLabel, enumerate_labels, simplex_facets


@dataclass(frozen=True)
class CanonicalFacet:
    """A facet written as a bound on x_lo + ... + x_{hi-1} with 1 <= lo < hi <= n.

    The block never touches x_n (wrapping sums are rewritten through the sum
    equality first); ``upper`` records the canonical sense <=.
    """

    lo: int
    hi: int
    bound: int
    upper: bool

    def support(self) -> tuple[int, ...]:
        return tuple(range(self.lo, self.hi))

    def __str__(self):
        func = "x_" + "+x_".join(str(k) for k in self.support())
        return f"{func} {'<=' if self.upper else '>='} {self.bound}"


def _projected_candidates(hrep: HRepresentation) -> set[tuple[int, int, int, bool]]:
    """All inequalities rewritten into non-wrapping (lo, hi, bound, upper) form."""
    n, r = hrep.n, hrep.r
    cands = set()
    for i in range(1, n):
        cands.add((i, i + 1, 0, False))        # x_i >= 0
    cands.add((1, n, r, True))                 # x_n >= 0
    for ineq in hrep.inequalities:
        upper = ineq.sense == "<="
        if ineq.start < ineq.stop:
            cands.add((ineq.start, ineq.stop, ineq.bound, upper))
        else:
            cands.add((ineq.stop, ineq.start, r - ineq.bound, not upper))
    return cands


def canonical_facets(necklace: GrassmannNecklace) -> tuple[CanonicalFacet, ...]:
    """Facets of the projected polytope in canonical interval form.

    Candidates come from the necklace inequalities plus nonnegativity; an
    inequality survives exactly when its tight vertex set has affine
    dimension one less than the polytope (this prunes redundant members of
    the raw list).  Sorted by (lo, hi, bound, upper).
    """
    n = necklace.n
    if n == 1:
        return ()
    bases = bases_from_necklace(necklace)
    if not is_connected(bases):
        raise DisconnectedPositroidError(
            "canonical facets are defined for connected positroids; decompose first")
    proj = [v[:-1] for v in vertices(bases)]
    facets = []
    for lo, hi, bound, upper in sorted(_projected_candidates(h_representation(necklace))):
        block = range(lo - 1, hi - 1)
        tight = [v for v in proj if sum(v[k] for k in block) == bound]
        if affine_rank(tight) == n - 2:
            facets.append(CanonicalFacet(lo, hi, bound, upper))
    return tuple(facets)


def hstar_half_open(necklace: GrassmannNecklace) -> ExactPolynomial:
    """h* of the projected polytope with all upper facets removed.

    Equals the descent generating function sum of z^(des(w_1..w_{n-1}) + 1)
    over the triangulation labels; the constant term is always zero.
    Defined for n >= 2 (a point has no projection to chop facets from).
    """
    if necklace.n == 1:
        raise ValueError("half-open form needs n >= 2")
    labels = enumerate_labels(necklace)
    top = 0
    coeffs = [0]
    for lab in labels:
        e = descent_count(lab.word[:-1]) + 1
        if e > top:
            coeffs.extend([0] * (e - top))
            top = e
        coeffs[e] += 1
    return ExactPolynomial.from_coefficients(coeffs)


def half_open_simplex(label: TriangulationLabel) -> HRepresentation:
    """The simplex facets with strict flags on the upper (<=) ones."""
    closed = simplex_facets(label)
    return HRepresentation(closed.n, closed.r, tuple(
        IntervalInequality(q.start, q.stop, q.bound, q.sense, strict=(q.sense == "<="))
        for q in closed.inequalities))


def half_open_profile(necklace: GrassmannNecklace) -> CountProfile:
    """Oracle counts of the half-open polytope at t = 0..n-1.

    Counting happens in the projected coordinates: the canonical facets cut
    out the projection exactly, and strict upper bounds tighten to
    <= t*bound - 1 on lattice points.
    """
    facets = canonical_facets(necklace)
    n = necklace.n
    dim = n - 1
    counts = []
    for t in range(dim + 1):
        constraints = []
        for f in facets:
            lo, hi = _scaled_bounds("<=" if f.upper else ">=", f.bound, f.upper, t)
            constraints.append((tuple(k - 1 for k in f.support()), lo, hi))
        counts.append(count_constrained(dim, constraints, t))
    return CountProfile(dim, tuple(counts))


def hstar_half_open_by_counting(necklace: GrassmannNecklace) -> ExactPolynomial:
    return hstar_from_counts(half_open_profile(necklace))


@dataclass(frozen=True)
class FaceNode:
    """A nonempty intersection of upper facets, identified by its vertex set."""

    vertex_set: frozenset[tuple[int, ...]]
    dim: int
    generators: frozenset[int]

    def __le__(self, other: "FaceNode") -> bool:
        return self.vertex_set <= other.vertex_set


@dataclass(frozen=True)
class FacePoset:
    """All faces of P obtained by intersecting upper facets, plus P on top."""

    top: FaceNode
    nodes: tuple[FaceNode, ...]  # includes top; sorted by (-dim, vertices)
    facet_list: tuple[CanonicalFacet, ...]


def face_poset_of_uppers(necklace: GrassmannNecklace) -> FacePoset:
    """Distinct nonempty intersections of upper facets with P, ordered by inclusion."""
    uppers = tuple(f for f in canonical_facets(necklace) if f.upper)
    proj = [v[:-1] for v in vertices(bases_from_necklace(necklace))]
    tight = []
    for f in uppers:
        block = range(f.lo - 1, f.hi - 1)
        tight.append(frozenset(v for v in proj if sum(v[k] for k in block) == f.bound))
    all_vertices = frozenset(proj)
    seen = {all_vertices}
    queue = [all_vertices]
    while queue:
        cur = queue.pop()
        for tf in tight:
            child = cur & tf
            if child and child not in seen:
                seen.add(child)
                queue.append(child)
    nodes = []
    for vs in seen:
        gens = frozenset(i for i, tf in enumerate(tight) if vs <= tf)
        nodes.append(FaceNode(vs, affine_rank(sorted(vs)), gens))
    nodes.sort(key=lambda f: (-f.dim, sorted(f.vertex_set)))
    top = next(f for f in nodes if f.vertex_set == all_vertices)
    return FacePoset(top, tuple(nodes), uppers)


def moebius(poset: FacePoset) -> dict[FaceNode, int]:
    """Moebius values mu(F, P): 1 on top, and -sum over everything above."""
    mu: dict[FaceNode, int] = {}
    for node in poset.nodes:  # decreasing dimension, so everything above is done
        if node == poset.top:
            mu[node] = 1
        else:
            mu[node] = -sum(mu[g] for g in poset.nodes
                            if node.vertex_set < g.vertex_set)
    return mu


def hstar_closed_via_inclusion_exclusion(necklace: GrassmannNecklace) -> ExactPolynomial:
    """Closed h* from the half-open one and the faces of the removed facets.

    h*(P) = h*(half-open) - sum over proper faces F of
    mu(F, P) (1-z)^(dim P - dim F) h*(F), where each face h* comes from the
    lattice-point oracle.  The result must have nonnegative integer
    coefficients and constant term 1.
    """
    n = necklace.n
    if n == 1:
        return ExactPolynomial.one()
    poset = face_poset_of_uppers(necklace)
    mu = moebius(poset)
    hrep = h_representation(necklace)
    one_minus_z = ExactPolynomial.from_coefficients([1, -1])
    total = hstar_half_open(necklace)
    dim_p = n - 1
    for node in poset.nodes:
        if node == poset.top or mu[node] == 0:
            continue
        eqs = [(poset.facet_list[i].lo, poset.facet_list[i].hi, poset.facet_list[i].bound)
               for i in sorted(node.generators)]
        h_face = face_hstar(hrep, eqs, node.dim)
        total = total - mu[node] * (one_minus_z ** (dim_p - node.dim)) * h_face
    coeffs = total.integer_coefficients()
    if any(c < 0 for c in coeffs) or (coeffs and coeffs[0] != 1):
        raise ArithmeticError(f"inclusion-exclusion produced invalid h* {coeffs}")
    return total
