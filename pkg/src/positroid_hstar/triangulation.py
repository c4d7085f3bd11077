"""Circuit triangulations of connected positroid polytopes.

A triangulation label is a permutation w ending in n; its simplex has the
indicator vectors of the cyclic-descent sets of the rotations of w as
vertices, listed in circuit order.  The labels whose circuit subsets are all
bases triangulate the polytope.  Two simplices share a facet exactly when the
cycles differ by one adjacent transposition of non-cyclically-adjacent
values, and breadth-first search from any base label turns the dual graph
into a shelling: summing z^(number of already-shelled neighbors) over labels
gives the h*-polynomial.

The module also carries the affine-permutation relabeling of the dual graph
(windows, produced by geometric wall-crossing in prefix-sum coordinates) and
the fractional inverse of the volume-preserving cube map, both used purely as
consistency checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ._linalg import hyperplane_through
from .core import ExactPolynomial, Word, circuit_subsets, restricted_cdes
from .positroid import (
    DisconnectedPositroidError,
    GrassmannNecklace,
    HRepresentation,
    IntervalInequality,
    bases_from_necklace,
    is_connected,
)


@dataclass(frozen=True)
class TriangulationLabel:
    """A permutation w with w_n = n together with its cached circuit."""

    word: Word
    circuit: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def rank(self) -> int:
        return len(self.circuit[0])


def label_from_word(word: Sequence[int]) -> TriangulationLabel:
    word = tuple(word)
    return TriangulationLabel(word, circuit_subsets(word))


# Circuits and restriction descent counts depend only on (n, word), never on
# the positroid, so they are memoized per ground-set size.
_CIRCUITS: dict[int, dict[Word, tuple[frozenset[int], ...]]] = {}
_RESTRICTED: dict[int, dict[Word, dict[tuple[int, int], int]]] = {}


def _all_labels(n: int) -> dict[Word, tuple[frozenset[int], ...]]:
    if n not in _CIRCUITS:
        table = {}
        for head in itertools.permutations(range(1, n)):
            word = head + (n,)
            table[word] = circuit_subsets(word)
        _CIRCUITS[n] = table
    return _CIRCUITS[n]


def _restriction_table(n: int) -> dict[Word, dict[tuple[int, int], int]]:
    if n not in _RESTRICTED:
        table = {}
        for word in _all_labels(n):
            table[word] = {(i, j): restricted_cdes(word, i, j)
                           for i in range(1, n + 1) for j in range(1, n + 1)}
        _RESTRICTED[n] = table
    return _RESTRICTED[n]


def enumerate_labels(necklace: GrassmannNecklace, cross_check: bool = True
                     ) -> tuple[TriangulationLabel, ...]:
    """Triangulation labels of a connected positroid polytope, sorted by word.

    A word w with w_n = n qualifies when it has exactly r cyclic left
    descents and every circuit subset is a basis.  With ``cross_check`` the
    equivalent restriction-descent criterion (every restriction of w to
    [i, a] with a the j-th <_i-element of J_i has at most j-1 cyclic
    descents) is evaluated too and any disagreement raises.
    """
    n, r = necklace.n, necklace.rank
    if n == 1:
        return (label_from_word((1,)),)
    bases = bases_from_necklace(necklace)
    if not is_connected(bases):
        raise DisconnectedPositroidError(
            "triangulation labels exist only for connected positroids; split with "
            "decompose_direct_sum and combine via ehrhart_product")
    basis_set = bases.bases
    sorted_js = [necklace.sorted_subset(i) for i in range(1, n + 1)]
    restricted = _restriction_table(n) if cross_check else None
    out = []
    for word, circuit in _all_labels(n).items():
        member = len(circuit[0]) == r and all(s in basis_set for s in circuit)
        if cross_check:
            table = restricted[word]
            alt = len(circuit[0]) == r and all(
                table[(i, sorted_js[i - 1][j - 1])] <= j - 1
                for i in range(1, n + 1) for j in range(1, r + 1))
            if alt != member:
                raise AssertionError(
                    f"label filters disagree on {word}: bases {member}, restriction {alt}")
        if member:
            out.append(TriangulationLabel(word, circuit))
    return tuple(sorted(out, key=lambda lab: lab.word))


def simplex_vertices(label: TriangulationLabel) -> tuple[tuple[int, ...], ...]:
    """Indicator vectors of the circuit subsets, in circuit order."""
    n = label.n
    return tuple(tuple(1 if k in s else 0 for k in range(1, n + 1)) for s in label.circuit)


def simplex_facets(label: TriangulationLabel) -> HRepresentation:
    """Facet inequalities of the projected simplex, one per circuit vertex.

    The facet opposite circuit vertex p is the affine hull of the other n-1
    projected vertices, computed exactly; every facet normal turns out to be
    the indicator of a contiguous block inside coordinates 1..n-1, so the
    inequality is stored in interval form.  Facets are listed in circuit
    order (entry p is opposite vertex p).
    """
    n = label.n
    verts = [v[:-1] for v in simplex_vertices(label)]
    if n == 1:
        return HRepresentation(1, label.rank, ())
    inequalities = []
    for p in range(n):
        others = [verts[q] for q in range(n) if q != p]
        normal, offset = hyperplane_through(others)
        lo, hi, sign = _as_interval_functional(normal)
        if sign < 0:
            normal = tuple(-c for c in normal)
            offset = -offset
        value_at_p = sum(a * b for a, b in zip(normal, verts[p]))
        sense = "<=" if value_at_p < offset else ">="
        if value_at_p == offset:
            raise AssertionError("degenerate simplex: opposite vertex on facet")
        inequalities.append(IntervalInequality(lo, hi, offset, sense))
    return HRepresentation(n, label.rank, tuple(inequalities))


def _as_interval_functional(normal: Sequence[int]) -> tuple[int, int, int]:
    """Recognize +-(indicator of a contiguous block) and return (lo, hi, sign).

    lo/hi are 1-based with the block covering coordinates lo..hi-1.
    """
    support = [k for k, c in enumerate(normal) if c != 0]
    if not support:
        raise ValueError("zero functional")
    values = {normal[k] for k in support}
    if values not in ({1}, {-1}):
        raise ValueError(f"facet normal {normal} is not an interval indicator")
    lo, hi = support[0], support[-1]
    if support != list(range(lo, hi + 1)):
        raise ValueError(f"facet normal {normal} has non-contiguous support")
    return lo + 1, hi + 2, 1 if values == {1} else -1


def simplex_is_unimodular(label: TriangulationLabel) -> bool:
    """Edge vectors from the first circuit vertex span the lattice (det +-1)."""
    verts = simplex_vertices(label)
    n = label.n
    if n == 1:
        return True
    rows = [[Fraction(verts[q][k] - verts[0][k]) for k in range(n - 1)] for q in range(1, n)]
    det = _det(rows)
    return det in (1, -1)


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = len(rows)
    rows = [row[:] for row in rows]
    det = Fraction(1)
    for c in range(m):
        pivot = next((k for k in range(c, m) if rows[k][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = rows[c][c]
        for k in range(c + 1, m):
            if rows[k][c] != 0:
                f = rows[k][c] / inv
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return det


@dataclass(frozen=True)
class TriangulationGraph:
    """Dual graph of the triangulation, edges annotated with swap positions.

    ``swap_position[(u, v)]`` is the cyclic position p in u's word such that
    exchanging the entries at positions p, p+1 (indices mod n) of the cycle
    of u yields the cycle of v.  The two directions of an edge can carry
    different positions when the swap moves the letter n.
    """

    labels: tuple[TriangulationLabel, ...]
    neighbors: Mapping[Word, tuple[Word, ...]]
    swap_position: Mapping[tuple[Word, Word], int]

    @property
    def words(self) -> tuple[Word, ...]:
        return tuple(lab.word for lab in self.labels)

    def edges(self) -> tuple[tuple[Word, Word], ...]:
        out = {tuple(sorted((u, v))) for u, vs in self.neighbors.items() for v in vs}
        return tuple(sorted(out))

    def is_connected(self) -> bool:
        words = self.words
        seen = {words[0]}
        stack = [words[0]]
        while stack:
            for v in self.neighbors[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(words)


def _canonical_cycle_word(cycle: Sequence[int]) -> Word:
    """Rotate a cyclic sequence so that it ends with its maximum (= n)."""
    k = cycle.index(max(cycle))
    return tuple(cycle[k + 1:]) + tuple(cycle[:k + 1])


def build_graph(labels: Sequence[TriangulationLabel]) -> TriangulationGraph:
    """Adjacency by the swap rule, restricted to the given label set.

    u and v are adjacent iff the cycle of v is that of u with entries at
    cyclic positions p, p+1 exchanged and the exchanged values are not
    cyclically consecutive.  For each resulting edge the simplices must share
    exactly n-1 circuit subsets; asserted.
    """
    labels = tuple(sorted(labels, key=lambda lab: lab.word))
    by_word = {lab.word: lab for lab in labels}
    ns = {lab.n for lab in labels}
    if len(ns) != 1:
        raise ValueError("labels have mixed ground-set sizes")
    n = ns.pop()
    neighbors: dict[Word, list[Word]] = {w: [] for w in by_word}
    swap_position: dict[tuple[Word, Word], int] = {}
    for word, label in by_word.items():
        for p in range(n):
            a, b = word[p], word[(p + 1) % n]
            if (a - b) % n in (1, n - 1):
                continue
            cycle = list(word)
            cycle[p], cycle[(p + 1) % n] = cycle[(p + 1) % n], cycle[p]
            other = _canonical_cycle_word(cycle)
            if other in by_word:
                shared = set(label.circuit) & set(by_word[other].circuit)
                if len(shared) != n - 1:
                    raise AssertionError(
                        f"swap rule joined {word} and {other} sharing {len(shared)} subsets")
                neighbors[word].append(other)
                swap_position[(word, other)] = p + 1
    return TriangulationGraph(
        labels,
        {w: tuple(sorted(vs)) for w, vs in neighbors.items()},
        swap_position,
    )


@dataclass(frozen=True)
class ShellingPoset:
    """BFS distances and cover counts from a base label.

    cover(w) counts the neighbors of w one layer closer to the base; any
    linear extension by distance shells the triangulation, and cover(w) is
    the number of facets of the simplex of w glued to earlier simplices.
    """

    base: Word
    dist: Mapping[Word, int]
    cover: Mapping[Word, int]


def shelling_poset(graph: TriangulationGraph, base: Word) -> ShellingPoset:
    if base not in graph.neighbors:
        raise ValueError(f"{base} is not a label of the graph")
    if not graph.is_connected():
        raise AssertionError("triangulation graph is disconnected")
    dist = {base: 0}
    frontier = [base]
    while frontier:
        nxt = []
        for u in frontier:
            for v in graph.neighbors[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = sorted(nxt)
    cover = {w: sum(1 for v in graph.neighbors[w] if dist[v] == dist[w] - 1)
             for w in dist}
    return ShellingPoset(base, dist, cover)


def hstar_from_covers(poset: ShellingPoset) -> ExactPolynomial:
    """Sum of z^cover(w) over all labels."""
    top = max(poset.cover.values())
    coeffs = [0] * (top + 1)
    for c in poset.cover.values():
        coeffs[c] += 1
    return ExactPolynomial.from_coefficients(coeffs)


def hstar_shelling(necklace: GrassmannNecklace, base: Word | None = None) -> ExactPolynomial:
    """h*-polynomial of a connected positroid polytope by the cover statistic."""
    labels = enumerate_labels(necklace)
    if len(labels) == 1:
        return ExactPolynomial.one()
    graph = build_graph(labels)
    if base is None:
        base = graph.words[0]
    return hstar_from_covers(shelling_poset(graph, base))


# ---------------------------------------------------------------------------
# Affine relabeling.  Working coordinates are prefix sums z_q = x_1 + ... +
# x_q for q = 0..n-1 (z_0 = 0); there the simplices are alcoves of the
# arrangement z_p - z_q in Z, whose reflections are coordinate swaps with an
# integer shift.  Wall types are fixed on the base alcove (wall p is the one
# opposite circuit vertex p) and transported along BFS by pulling each
# crossed hyperplane back through the alcove's transformation.
# ---------------------------------------------------------------------------

Window = tuple[int, ...]
_Hyperplane = tuple[int, int, int]  # (p, q, m) with p > q for z_p - z_q = m
_Transform = tuple[tuple[int, ...], tuple[int, ...]]  # T(z)_j = z[sigma[j]] + shift[j]


def window_times_s(window: Window, i: int) -> Window:
    """Right multiplication by the simple affine transposition with index i.

    For i < n this swaps window entries i and i+1; i = n wraps affinely:
    the first entry becomes w_n - n and the last w_1 + n.
    """
    n = len(window)
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} outside 1..{n}")
    out = list(window)
    if i < n:
        out[i - 1], out[i] = out[i], out[i - 1]
    else:
        out[0], out[-1] = window[-1] - n, window[0] + n
    return tuple(out)


def window_length(window: Window) -> int:
    """Coxeter length of an affine permutation from its window."""
    n = len(window)
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            total += abs((window[b] - window[a]) // n)
    return total


def is_valid_window(window: Window) -> bool:
    n = len(window)
    residues = {v % n for v in window}
    return len(residues) == n and sum(window) == n * (n + 1) // 2


def _z_vertices(label: TriangulationLabel) -> tuple[tuple[int, ...], ...]:
    out = []
    for vert in simplex_vertices(label):
        acc = 0
        row = [0]
        for v in vert[:-1]:
            acc += v
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _wall_through(points_on: Sequence[tuple[int, ...]], point_off: tuple[int, ...]) -> _Hyperplane:
    """The hyperplane z_p - z_q = m containing all of points_on but not point_off."""
    n = len(points_on[0])
    for p in range(1, n):
        for q in range(p):
            m = points_on[0][p] - points_on[0][q]
            if all(pt[p] - pt[q] == m for pt in points_on[1:]) and point_off[p] - point_off[q] != m:
                return (p, q, m)
    raise AssertionError("no difference hyperplane through the facet")


def _reflection(wall: _Hyperplane, n: int) -> _Transform:
    p, q, m = wall
    sigma = list(range(n))
    shift = [0] * n
    sigma[p], sigma[q] = q, p
    shift[p], shift[q] = m, -m
    return tuple(sigma), tuple(shift)


def _compose(t: _Transform, refl: _Transform) -> _Transform:
    """(t o refl)(z), i.e. apply the reflection first."""
    sigma_t, shift_t = t
    sigma_r, shift_r = refl
    sigma = tuple(sigma_r[sigma_t[j]] for j in range(len(sigma_t)))
    shift = tuple(shift_r[sigma_t[j]] + shift_t[j] for j in range(len(sigma_t)))
    return sigma, shift


def _apply(t: _Transform, z: tuple[int, ...]) -> tuple[int, ...]:
    """Apply the map and renormalize to the z_0 = 0 section of the quotient.

    The arrangement z_p - z_q in Z is invariant under diagonal translation,
    so points are identified up to adding a constant to all coordinates.
    """
    sigma, shift = t
    image = [z[sigma[j]] + shift[j] for j in range(len(sigma))]
    return tuple(v - image[0] for v in image)


def _pull_back(t: _Transform, wall: _Hyperplane) -> _Hyperplane:
    """Preimage of a hyperplane under the transformation: T^{-1}(H)."""
    sigma, shift = t
    a, b, m = wall
    p, q = sigma[a], sigma[b]
    m2 = m - shift[a] + shift[b]
    if p > q:
        return (p, q, m2)
    return (q, p, -m2)


@dataclass(frozen=True)
class AffineLabelingReport:
    """Result of the affine-window consistency check on a triangulation graph."""

    base: Word
    windows: Mapping[Word, Window]
    ok: bool
    problems: tuple[str, ...]


def affine_consistency_check(graph: TriangulationGraph, base: Word) -> AffineLabelingReport:
    """Assign windows along a BFS tree and verify them on every edge.

    The base label gets the identity window.  Walking an edge multiplies on
    the right by the simple affine transposition whose index is the type of
    the wall crossed; wall types are read off by pulling the crossed
    hyperplane back to the base alcove.  The check fails if a crossed
    hyperplane does not pull back to a base wall, if any (non-tree) edge
    relates its endpoint windows by the wrong generator, or if some window's
    Coxeter length differs from its BFS distance.
    """
    if base not in graph.neighbors:
        raise ValueError(f"{base} is not a label of the graph")
    if not graph.is_connected():
        raise AssertionError("triangulation graph is disconnected")
    n = len(base)
    if n == 1:
        return AffineLabelingReport(base, {base: (1,)}, True, ())
    by_word = {lab.word: lab for lab in graph.labels}
    problems: list[str] = []

    base_z = _z_vertices(by_word[base])
    base_walls: list[_Hyperplane] = []
    for p in range(n):
        others = [base_z[q] for q in range(n) if q != p]
        base_walls.append(_wall_through(others, base_z[p]))

    identity: _Transform = (tuple(range(n)), (0,) * n)
    windows: dict[Word, Window] = {base: tuple(range(1, n + 1))}
    transforms: dict[Word, _Transform] = {base: identity}
    z_verts: dict[Word, tuple[tuple[int, ...], ...]] = {base: base_z}
    dist = {base: 0}
    frontier = [base]
    while frontier:
        nxt = []
        for u in sorted(frontier):
            for v in graph.neighbors[u]:
                if v in windows:
                    continue
                if v not in z_verts:
                    z_verts[v] = _z_vertices(by_word[v])
                generator = _edge_generator(u, v, z_verts, transforms[u], base_walls, problems)
                if generator is None:
                    return AffineLabelingReport(base, windows, False, tuple(problems))
                windows[v] = window_times_s(windows[u], generator)
                transforms[v] = _compose(transforms[u], _reflection(base_walls[generator - 1], n))
                dist[v] = dist[u] + 1
                expected = {_apply(transforms[v], z) for z in base_z}
                if expected != set(z_verts[v]):
                    problems.append(f"alcove of {v} does not match its transformation")
                nxt.append(v)
        frontier = nxt

    for u, v in sorted(graph.swap_position):
        if v not in z_verts:
            z_verts[v] = _z_vertices(by_word[v])
        generator = _edge_generator(u, v, z_verts, transforms[u], base_walls, problems)
        if generator is None:
            continue
        if windows[v] != window_times_s(windows[u], generator):
            problems.append(
                f"edge {u} -> {v}: window {windows[v]} is not windows[{u}] * s_{generator}")

    for w, win in windows.items():
        if not is_valid_window(win):
            problems.append(f"window of {w} is not an affine permutation: {win}")
        if window_length(win) != dist[w]:
            problems.append(
                f"window length {window_length(win)} of {w} differs from BFS distance {dist[w]}")

    return AffineLabelingReport(base, windows, not problems, tuple(problems))


def _edge_generator(u, v, z_verts, transform_u, base_walls, problems):
    shared = set(z_verts[u]) & set(z_verts[v])
    off = next(iter(set(z_verts[u]) - shared))
    wall = _wall_through(sorted(shared), off)
    pulled = _pull_back(transform_u, wall)
    if pulled not in base_walls:
        problems.append(f"edge {u} -> {v}: crossed wall {wall} pulls back to "
                        f"{pulled}, not a base wall")
        return None
    return base_walls.index(pulled) + 1


def phi_inverse_point(x: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Fractional complement of the tail sums, landing in [0, 1)^n.

    y_i is 1 + floor(s) - s for the tail s = x_i + ... + x_n, folded to 0
    when s is an integer.  On a projected simplex this sorts interior points
    along the label's chain order; see the tests.
    """
    xs = [Fraction(v) for v in x]
    out = []
    tail = Fraction(0)
    for v in reversed(xs):
        tail += v
        frac = tail - (tail.numerator // tail.denominator)
        out.append(Fraction(0) if frac == 0 else 1 - frac)
    return tuple(reversed(out))
