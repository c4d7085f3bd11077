"""Positroids: necklaces, decorated permutations, bases, and the polytope.

A positroid on 1..n can be handed around in three equivalent forms:

- a Grassmann necklace (J_1, ..., J_n) of r-subsets obeying the one-step
  exchange rule  J_{i+1} = J_i - {i} + {j}  (when i is in J_i),
- a decorated permutation: a permutation with black/white colored fixed points,
- its set of bases.

This module validates and converts between the three, computes matroid rank,
connectivity and direct-sum decomposition, and produces the cyclic-interval
inequality description of the polytope conv{e_B : B a basis}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import affine_rank
from .core import cyclic_interval, gale_leq, i_order_key, interval_support, is_permutation_word


class NecklaceError(ValueError):
    """Raised when a sequence of subsets is not a Grassmann necklace."""


class DisconnectedPositroidError(ValueError):
    """Raised when a connected positroid is required.

    Callers holding a disconnected positroid should split it with
    ``decompose_direct_sum`` and combine per-component results with
    ``ehrhart.ehrhart_product``.
    """


@dataclass(frozen=True)
class GrassmannNecklace:
    """Sequence (J_1, ..., J_n) of equal-size subsets obeying the exchange rule.

    Rank 0 (all subsets empty) is admitted so that the loop-only positroid on
    a singleton ground set has a necklace; ranks 1..n are the usual case.
    """

    n: int
    subsets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise NecklaceError("ground set must be nonempty")
        if len(self.subsets) != self.n:
            raise NecklaceError(f"expected {self.n} subsets, got {len(self.subsets)}")
        sizes = {len(s) for s in self.subsets}
        if len(sizes) != 1:
            raise NecklaceError(f"subsets have unequal sizes {sorted(sizes)}")
        r = sizes.pop()
        if r > self.n:
            raise NecklaceError(f"rank {r} exceeds ground set size {self.n}")
        for i in range(1, self.n + 1):
            cur = self.subsets[i - 1]
            nxt = self.subsets[i % self.n]
            if any(not 1 <= v <= self.n for v in cur):
                raise NecklaceError(f"subset {i} has elements outside 1..{self.n}")
            if i in cur:
                if not cur - {i} <= nxt:
                    raise NecklaceError(f"exchange rule fails at index {i}")
            elif nxt != cur:
                raise NecklaceError(f"exchange rule fails at index {i}: J_{i} must repeat")

    @property
    def rank(self) -> int:
        return len(self.subsets[0])

    def sorted_subset(self, i: int) -> tuple[int, ...]:
        """Elements of J_i listed in increasing <_i order."""
        return tuple(sorted(self.subsets[i - 1], key=i_order_key(i, self.n)))

    def compact(self) -> str:
        """Digit-string form like '12,23,13,14' (only valid for n <= 9)."""
        if self.n > 9:
            raise ValueError("compact form needs single-digit labels")
        return ",".join("".join(str(v) for v in sorted(s)) for s in self.subsets)


def validate_necklace(raw: Sequence[Iterable[int]], n: int | None = None) -> GrassmannNecklace:
    """Validate raw subsets as a Grassmann necklace; n defaults to len(raw)."""
    subsets = tuple(frozenset(s) for s in raw)
    return GrassmannNecklace(len(subsets) if n is None else n, subsets)


@dataclass(frozen=True)
class PositroidBases:
    """Explicit basis collection of a matroid on 1..n, all of size r."""

    n: int
    r: int
    bases: frozenset[frozenset[int]]

    def __post_init__(self):
        if not self.bases:
            raise ValueError("basis set must be nonempty")
        for b in self.bases:
            if len(b) != self.r:
                raise ValueError(f"basis {sorted(b)} does not have size {self.r}")
            if any(not 1 <= v <= self.n for v in b):
                raise ValueError(f"basis {sorted(b)} has elements outside 1..{self.n}")

    def sorted_bases(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(tuple(sorted(b)) for b in self.bases))


def is_matroid(bases: PositroidBases) -> bool:
    """Exhaustive basis-exchange check (fine at desk scale)."""
    coll = bases.bases
    for left, right in itertools.product(coll, repeat=2):
        for i in left - right:
            if not any(left - {i} | {j} in coll for j in right - left):
                return False
    return True


def bases_from_necklace(necklace: GrassmannNecklace) -> PositroidBases:
    """All r-subsets Gale-above every J_i; the bases of the positroid of J."""
    n, r = necklace.n, necklace.rank
    keys = [i_order_key(i, n) for i in range(1, n + 1)]
    sorted_js = [necklace.sorted_subset(i) for i in range(1, n + 1)]
    found = []
    for comb in itertools.combinations(range(1, n + 1), r):
        ok = True
        for i in range(n):
            key = keys[i]
            cand = sorted(comb, key=key)
            if any(key(a) > key(b) for a, b in zip(sorted_js[i], cand)):
                ok = False
                break
        if ok:
            found.append(frozenset(comb))
    return PositroidBases(n, r, frozenset(found))


def necklace_from_bases(bases: PositroidBases) -> GrassmannNecklace:
    """Necklace of Gale-minimal bases; requires the input to be a matroid.

    J_i is the basis that is minimal in the Gale order for <_i.  For matroid
    input the <_i-lexicographic minimum is that Gale minimum; this is checked
    and a ValueError is raised if minimality fails (non-matroid input).
    """
    n = bases.n
    subsets = []
    for i in range(1, n + 1):
        key = i_order_key(i, n)
        best = min(bases.bases, key=lambda b: tuple(sorted(key(v) for v in b)))
        if not all(gale_leq(best, other, i, n) for other in bases.bases):
            raise ValueError(f"no Gale minimum for <_{i}; input is not a matroid")
        subsets.append(best)
    return GrassmannNecklace(n, tuple(subsets))


@dataclass(frozen=True)
class DecoratedPermutation:
    """Permutation of 1..n with each fixed point colored black or white."""

    perm: tuple[int, ...]
    white: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        if not is_permutation_word(self.perm):
            raise ValueError("not a permutation in one-line notation")
        if not self.white <= self.fixed_points:
            raise ValueError("white set contains non-fixed points")

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.perm, start=1) if v == i)

    @property
    def black(self) -> frozenset[int]:
        return self.fixed_points - self.white

    def colors(self) -> dict[int, str]:
        return {i: ("white" if i in self.white else "black") for i in sorted(self.fixed_points)}


def decorated_from_necklace(necklace: GrassmannNecklace) -> DecoratedPermutation:
    """The decorated permutation of a necklace: pi(i) is the element swapped in at step i."""
    n = necklace.n
    perm = [0] * n
    white = set()
    for i in range(1, n + 1):
        cur = necklace.subsets[i - 1]
        nxt = necklace.subsets[i % n]
        if nxt == cur:
            perm[i - 1] = i
            if i in cur:
                white.add(i)
        else:
            new = nxt - (cur - {i})
            assert len(new) == 1
            perm[i - 1] = next(iter(new))
    return DecoratedPermutation(tuple(perm), frozenset(white))


def _in_half_open_cyclic(m: int, a: int, b: int, n: int) -> bool:
    """Membership of m in the cyclic half-open interval (a, b], for a != b."""
    return 1 <= (m - a) % n <= (b - a) % n


def necklace_from_decorated(dec: DecoratedPermutation) -> GrassmannNecklace:
    """Inverse of ``decorated_from_necklace``.

    j belongs to J_m exactly when j is white-fixed or m lies in the cyclic
    interval (pi^{-1}(j), j]; this membership rule inverts the forward map
    (round trips are exercised exhaustively in the tests).
    """
    n = dec.n
    inv = {v: i for i, v in enumerate(dec.perm, start=1)}
    subsets = []
    for m in range(1, n + 1):
        members = set(dec.white)
        for j in range(1, n + 1):
            src = inv[j]
            if src != j and _in_half_open_cyclic(m, src, j, n):
                members.add(j)
        subsets.append(frozenset(members))
    return GrassmannNecklace(n, tuple(subsets))


def rank_of(subset: Iterable[int], bases: PositroidBases) -> int:
    """Matroid rank of a subset: the largest overlap with any basis."""
    s = frozenset(subset)
    return max(len(b & s) for b in bases.bases)


def is_connected(bases: PositroidBases) -> bool:
    """True iff no proper nonempty subset splits the rank additively."""
    n, r = bases.n, bases.r
    ground = frozenset(range(1, n + 1))
    for size in range(1, n // 2 + 1):
        for sub in itertools.combinations(range(1, n + 1), size):
            s = frozenset(sub)
            if size == n - size and 1 not in s:
                continue  # each half/complement pair once
            if rank_of(s, bases) + rank_of(ground - s, bases) == r:
                return False
    return True


def stabilized_intervals(perm: Sequence[int], wrapping: bool = True) -> list[tuple[int, ...]]:
    """Proper cyclic (or plain, if wrapping=False) intervals I with perm(I) = I."""
    n = len(perm)
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            interval = cyclic_interval(i, j, n)
            if len(interval) == n:
                continue
            if not wrapping and interval[-1] < interval[0]:
                continue
            members = set(interval)
            if {perm[v - 1] for v in members} == members:
                out.append(interval)
    return out


def is_stabilized_interval_free(perm: Sequence[int], wrapping: bool = True) -> bool:
    """No proper interval of 1..n is mapped onto itself.

    The cyclic and non-wrapping notions define the same class (a permutation
    fixing a wrapped interval also fixes its complement, which does not wrap);
    both are kept so the agreement can be asserted in tests.
    """
    return not stabilized_intervals(perm, wrapping=wrapping)


def _restrict_bases(bases: PositroidBases, ground: tuple[int, ...]) -> PositroidBases:
    """Component bases on ``ground``, relabeled order-preservingly to 1..m."""
    relabel = {v: k for k, v in enumerate(ground, start=1)}
    restricted = frozenset(frozenset(relabel[v] for v in b & set(ground)) for b in bases.bases)
    sizes = {len(b) for b in restricted}
    assert len(sizes) == 1, "rank split produced unequal restrictions"
    return PositroidBases(len(ground), sizes.pop(), restricted)


def decompose_direct_sum(bases: PositroidBases) -> list[tuple[tuple[int, ...], PositroidBases]]:
    """Finest direct-sum decomposition, as (ground subset, relabeled component) pairs.

    Components are ordered by their smallest ground element.  Loops and
    coloops come out as singleton components of rank 0 and 1.
    """
    n, r = bases.n, bases.r
    ground = frozenset(range(1, n + 1))
    for size in range(1, n // 2 + 1):
        for sub in itertools.combinations(range(1, n + 1), size):
            s = frozenset(sub)
            if rank_of(s, bases) + rank_of(ground - s, bases) == r:
                left = tuple(sorted(s))
                right = tuple(sorted(ground - s))
                parts = []
                for g in (left, right):
                    comp = _restrict_bases(bases, g)
                    for sub_ground, sub_comp in decompose_direct_sum(comp):
                        parts.append((tuple(g[k - 1] for k in sub_ground), sub_comp))
                return sorted(parts, key=lambda p: p[0])
    return [(tuple(range(1, n + 1)), bases)]


@dataclass(frozen=True)
class IntervalInequality:
    """A bound on the cyclic interval sum x_start + ... + x_{stop-1}."""

    start: int
    stop: int
    bound: int
    sense: str  # "<=" or ">="
    strict: bool = False

    def __post_init__(self):
        if self.sense not in ("<=", ">="):
            raise ValueError(f"bad sense {self.sense!r}")

    def support(self, n: int) -> tuple[int, ...]:
        return interval_support(self.start, self.stop, n)


@dataclass(frozen=True)
class HRepresentation:
    """Inequality description of a polytope in the simplex slice of [0,1]^n.

    The constraints x_1 + ... + x_n = r and x_i >= 0 are implicit; the listed
    interval inequalities come on top.  Every polytope handled here lies in
    the unit cube, which lattice counting relies on.
    """

    n: int
    r: int
    inequalities: tuple[IntervalInequality, ...]

    def contains(self, point: Sequence[int | Fraction], dilate: int = 1,
                 integer_strict: bool = False) -> bool:
        """Membership of a point in the ``dilate``-th dilate.

        Strict inequalities are taken literally on rational points; with
        ``integer_strict`` they are tightened to the integer form
        f <= dilate*bound - 1 (resp. >= +1) instead.
        """
        x = [Fraction(v) for v in point]
        if len(x) != self.n:
            raise ValueError("wrong dimension")
        if sum(x) != dilate * self.r:
            return False
        if any(v < 0 or v > dilate for v in x):
            return False
        for ineq in self.inequalities:
            total = sum(x[k - 1] for k in ineq.support(self.n))
            bound = Fraction(dilate * ineq.bound)
            if ineq.strict and integer_strict:
                bound += -1 if ineq.sense == "<=" else 1
                if (total > bound) if ineq.sense == "<=" else (total < bound):
                    return False
            elif ineq.strict:
                if (total >= bound) if ineq.sense == "<=" else (total <= bound):
                    return False
            else:
                if (total > bound) if ineq.sense == "<=" else (total < bound):
                    return False
        return True


def h_representation(necklace: GrassmannNecklace) -> HRepresentation:
    """Interval-sum inequalities of the positroid polytope of a necklace.

    For each i and each j = 1..r the sum x_i + ... + x_{a-1} with a the j-th
    element of J_i in <_i order is at most j-1; empty sums (a == i) are
    dropped as vacuous.
    """
    n, r = necklace.n, necklace.rank
    seen = set()
    inequalities = []
    for i in range(1, n + 1):
        sorted_j = necklace.sorted_subset(i)
        for j in range(1, r + 1):
            a = sorted_j[j - 1]
            if a == i:
                continue
            key = (i, a, j - 1)
            if key not in seen:
                seen.add(key)
                inequalities.append(IntervalInequality(i, a, j - 1, "<="))
    return HRepresentation(n, r, tuple(inequalities))


def vertices(bases: PositroidBases) -> tuple[tuple[int, ...], ...]:
    """Indicator vectors of the bases, sorted lexicographically."""
    return tuple(sorted(tuple(1 if k in b else 0 for k in range(1, bases.n + 1))
                        for b in bases.bases))


def zero_one_points(hrep: HRepresentation) -> tuple[tuple[int, ...], ...]:
    """All 0/1 vectors with coordinate sum r satisfying the representation."""
    out = []
    for comb in itertools.combinations(range(1, hrep.n + 1), hrep.r):
        point = tuple(1 if k in comb else 0 for k in range(1, hrep.n + 1))
        if hrep.contains(point):
            out.append(point)
    return tuple(sorted(out))


def polytope_dimension(bases: PositroidBases) -> int:
    """Affine dimension of the polytope (n-1 exactly when connected)."""
    return affine_rank(vertices(bases))
