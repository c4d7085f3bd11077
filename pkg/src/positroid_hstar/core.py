"""Permutation, cyclic-order and exact-polynomial primitives.

Conventions used package-wide:

- permutations are tuples in one-line notation with entries 1..n,
- the rotated order ``<_i`` on 1..n is  i < i+1 < ... < n < 1 < ... < i-1,
- the cyclic interval ``[i, j]`` is the totally ordered set {i, i+1, ..., j}
  taken mod n; it wraps through n exactly when i > j,
- the interval sum ``x_[i,j]`` covers the coordinates i, i+1, ..., j-1 mod n,
  so it is empty when j == i.

All arithmetic is exact (ints and Fractions); nothing here uses floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Word = tuple[int, ...]


def is_permutation_word(word: Sequence[int]) -> bool:
    """True if ``word`` is a permutation of 1..n in one-line notation."""
    return len(word) >= 1 and sorted(word) == list(range(1, len(word) + 1))


def i_order_key(i: int, n: int) -> Callable[[int], int]:
    """Sort key realising the total order i <_i i+1 <_i ... <_i i-1 on 1..n."""
    if not 1 <= i <= n:
        raise ValueError(f"base point {i} outside 1..{n}")
    return lambda x: (x - i) % n


def cyclic_interval(i: int, j: int, n: int) -> Word:
    """The totally ordered set [i, j], listed in increasing <_i order.

    >>> cyclic_interval(3, 1, 4)
    (3, 4, 1)
    >>> cyclic_interval(2, 2, 5)
    (2,)
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"interval endpoints ({i}, {j}) outside 1..{n}")
    span = (j - i) % n
    return tuple((i - 1 + s) % n + 1 for s in range(span + 1))


def interval_support(i: int, j: int, n: int) -> Word:
    """Coordinates of the sum x_i + ... + x_{j-1} (mod n); empty when j == i.

    >>> interval_support(3, 1, 4)
    (3, 4)
    >>> interval_support(1, 1, 4)
    ()
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"interval endpoints ({i}, {j}) outside 1..{n}")
    span = (j - i) % n
    return tuple((i - 1 + s) % n + 1 for s in range(span))


def gale_leq(s: Iterable[int], t: Iterable[int], i: int, n: int) -> bool:
    """Gale partial order on equal-size subsets of 1..n with respect to <_i.

    S <= T holds iff, after sorting both sides by <_i, every element of S
    is <=_i the element of T in the same position.

    >>> gale_leq({1, 3}, {2, 3}, 1, 4)
    True
    >>> gale_leq({1, 2}, {1, 3}, 2, 3), gale_leq({1, 3}, {1, 2}, 2, 3)
    (True, False)
    """
    s, t = frozenset(s), frozenset(t)
    if len(s) != len(t):
        raise ValueError(f"subsets have different sizes {len(s)} and {len(t)}")
    if any(not 1 <= v <= n for v in s | t):
        raise ValueError("subset elements outside 1..n")
    key = i_order_key(i, n)
    return all(key(a) <= key(b) for a, b in zip(sorted(s, key=key), sorted(t, key=key)))


def cyclic_left_descents(word: Sequence[int], order: Sequence[int] | None = None) -> frozenset[int]:
    """Cyclic left descent set of a word over a totally ordered ground set.

    ``order`` lists the ground set increasingly and defaults to sorted(word).
    A non-maximal letter a is a descent when it appears to the right of its
    successor; the maximal letter is a descent when the minimal letter
    appears to its left.  Singleton words have no descents.

    >>> sorted(cyclic_left_descents((2, 4, 1, 3, 5)))
    [1, 3, 5]
    >>> sorted(cyclic_left_descents((3, 4, 1, 5), order=(3, 4, 5, 1)))
    [1, 5]
    """
    ground = tuple(sorted(word)) if order is None else tuple(order)
    if len(word) != len(ground) or set(word) != set(ground) or len(set(word)) != len(word):
        raise ValueError("word is not a permutation of the ground set")
    if len(ground) <= 1:
        return frozenset()
    pos = {v: p for p, v in enumerate(word)}
    out = {a for a, b in zip(ground, ground[1:]) if pos[a] > pos[b]}
    if pos[ground[0]] < pos[ground[-1]]:
        out.add(ground[-1])
    return frozenset(out)


def restriction(word: Sequence[int], i: int, j: int) -> tuple[Word, Word]:
    """Restrict a permutation of 1..n to the cyclic interval [i, j].

    Returns (subword, ground) where the subword keeps the left-to-right order
    of ``word`` and ``ground`` lists [i, j] in increasing <_i order.

    >>> restriction((3, 2, 4, 1, 5), 1, 3)[0]
    (3, 2, 1)
    >>> restriction((3, 2, 4, 1, 5), 3, 1)[0]
    (3, 4, 1, 5)
    """
    if not is_permutation_word(word):
        raise ValueError("not a permutation word")
    ground = cyclic_interval(i, j, len(word))
    members = set(ground)
    return tuple(v for v in word if v in members), ground


def restricted_cdes(word: Sequence[int], i: int, j: int) -> int:
    """Number of cyclic left descents of the restriction of word to [i, j]."""
    sub, ground = restriction(word, i, j)
    return len(cyclic_left_descents(sub, order=ground))


def rotation_ending_at(word: Sequence[int], a: int) -> Word:
    """The cyclic rotation of ``word`` whose last letter is ``a``.

    >>> rotation_ending_at((3, 2, 4, 1, 5), 3)
    (2, 4, 1, 5, 3)
    """
    if a not in word:
        raise ValueError(f"letter {a} does not occur in the word")
    k = word.index(a)
    return tuple(word[k + 1:]) + tuple(word[:k + 1])


def circuit_subsets(word: Sequence[int]) -> tuple[frozenset[int], ...]:
    """Cyclic-descent sets of all rotations of ``word``, in circuit order.

    ``word`` must end with n.  Entry p is the descent set of the rotation
    ending at word[p]; all n sets are distinct and have equal size.

    >>> [''.join(map(str, sorted(s))) for s in circuit_subsets((3, 2, 4, 1, 5))]
    ['135', '235', '245', '124', '125']
    """
    if not is_permutation_word(word):
        raise ValueError("not a permutation word")
    if word[-1] != len(word):
        raise ValueError("circuit labels must end with n")
    return tuple(cyclic_left_descents(rotation_ending_at(word, a)) for a in word)


def descent_count(word: Sequence[int]) -> int:
    """Number of positions p with word[p] > word[p+1].

    >>> descent_count((2, 4, 1, 3))
    1
    """
    if not word:
        raise ValueError("empty word")
    return sum(1 for a, b in zip(word, word[1:]) if a > b)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    k = len(coeffs)
    while k > 0 and coeffs[k - 1] == 0:
        k -= 1
    return tuple(coeffs[:k])


@dataclass(frozen=True)
class ExactPolynomial:
    """Dense polynomial with exact rational coefficients, index = degree.

    The highest stored coefficient is nonzero unless the polynomial is zero.
    """

    coefficients: tuple[Fraction, ...]

    @staticmethod
    def from_coefficients(coeffs: Iterable[int | Fraction]) -> "ExactPolynomial":
        return ExactPolynomial(_trim([Fraction(c) for c in coeffs]))

    @staticmethod
    def zero() -> "ExactPolynomial":
        return ExactPolynomial(())

    @staticmethod
    def one() -> "ExactPolynomial":
        return ExactPolynomial((Fraction(1),))

    @staticmethod
    def monomial(degree: int, coefficient: int | Fraction = 1) -> "ExactPolynomial":
        return ExactPolynomial.from_coefficients([0] * degree + [coefficient])

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return ExactPolynomial(_trim(out))

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "ExactPolynomial") -> "ExactPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial(_trim([c * other for c in self.coefficients]))
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1 or 1)
        for k, a in enumerate(self.coefficients):
            for m, b in enumerate(other.coefficients):
                out[k + m] += a * b
        return ExactPolynomial(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ExactPolynomial":
        if k < 0:
            raise ValueError("negative power")
        out = ExactPolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t: int | Fraction) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * t + c
        return value

    def integer_coefficients(self) -> tuple[int, ...]:
        """Coefficients as ints; raises if any coefficient is non-integral."""
        if any(c.denominator != 1 for c in self.coefficients):
            raise ValueError(f"non-integer coefficients: {self.coefficients}")
        return tuple(int(c) for c in self.coefficients)

    def pretty(self, var: str = "z") -> str:
        """Human-readable form like ``1 + 4z + 3z^2``."""
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            term = f"{mag}{var}" if k == 1 else f"{mag}{var}^{k}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)
