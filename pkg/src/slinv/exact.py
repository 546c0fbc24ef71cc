"""Exact arithmetic primitives shared by every module.

All value-bearing arithmetic is exact: rationals are `fractions.Fraction`
(always in lowest terms, positive denominator), counters are Python ints.
Floating point never appears on a value-bearing path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

# Canonical exact scalar type.  Alias so call sites read as intent.
ExactScalar = Fraction

ScalarLike = Union[int, Fraction, str]


def as_scalar(x: ScalarLike) -> Fraction:
    """Coerce ints, Fractions, or 'p/q' strings to an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(x: Fraction) -> str:
    """Render `p/q`, with integers rendered as plain `p`."""
    x = as_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Permutation:
    """A bijection of [n], stored 1-based as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self∘other)(i) = self(other(i))."""
        if other.size != self.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    @property
    def sign(self) -> int:
        return perm_sign(self)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))


def sequence_sign(seq: Sequence[int]) -> int:
    """Parity of a sequence of distinct comparable values, +1 or -1.

    The sign is taken relative to the sorted order of the values, so any
    strictly increasing sequence has sign +1.
    """
    inversions = 0
    n = len(seq)
    for i in range(n):
        a = seq[i]
        for j in range(i + 1, n):
            if a > seq[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


def perm_sign(p: Union[Permutation, Sequence[int]]) -> int:
    """Sign of a permutation given as a Permutation or a 1-based image tuple."""
    images = p.images if isinstance(p, Permutation) else tuple(p)
    if sorted(images) != list(range(1, len(images) + 1)):
        raise ValueError(f"not a permutation: {images}")
    return sequence_sign(images)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts; the empty partition is ()."""

    parts: tuple[int, ...]

    def __post_init__(self):
        prev = None
        for p in self.parts:
            if not isinstance(p, int) or p <= 0:
                raise ValueError(f"parts must be positive integers: {self.parts}")
            if prev is not None and p > prev:
                raise ValueError(f"parts must be weakly decreasing: {self.parts}")
            prev = p

    @staticmethod
    def of(parts: Union["Partition", Iterable[int]]) -> "Partition":
        if isinstance(parts, Partition):
            return parts
        return Partition(tuple(int(p) for p in parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                cols[i] += 1
        return Partition(tuple(cols))

    @staticmethod
    def rectangle(rows: int, width: int) -> "Partition":
        """The partition with `rows` equal parts of size `width` (empty if either is 0)."""
        if rows < 0 or width < 0:
            raise ValueError("rectangle dimensions must be nonnegative")
        if rows == 0 or width == 0:
            return Partition(())
        return Partition((width,) * rows)


def partition_tuples(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n as descending tuples, reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None or max_part > n:
        max_part = n

    def gen(remaining: int, cap: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    yield from gen(n, max_part, ())


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, deterministic reverse-lexicographic order."""
    return [Partition(t) for t in partition_tuples(n)]


def partition_count(n: int) -> int:
    """p(n), via the bounded-part recurrence (cached)."""
    return _partition_count_cached(n)


_PCOUNT_CACHE: dict[int, int] = {}


def _partition_count_cached(n: int) -> int:
    if n < 0:
        return 0
    got = _PCOUNT_CACHE.get(n)
    if got is not None:
        return got
    # p(k) table via Euler's pentagonal recurrence up to n.
    table = [1]
    for k in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > k and g2 > k:
                break
            sign = -1 if j % 2 == 0 else 1
            if g1 <= k:
                total += sign * table[k - g1]
            if g2 <= k:
                total += sign * table[k - g2]
            j += 1
        table.append(total)
    for k, v in enumerate(table):
        _PCOUNT_CACHE[k] = v
    return table[n]


def centralizer_order(rho: Union[Partition, Iterable[int]]) -> int:
    """Order of the S_n centralizer of an element of cycle type rho.

    Equals prod_i i^{m_i} m_i! where m_i is the multiplicity of part i;
    n!/centralizer_order(rho) is the size of the conjugacy class.
    """
    parts = Partition.of(rho).parts
    mult: dict[int, int] = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for i, m in mult.items():
        z *= i**m * math.factorial(m)
    return z


def multinomial(alpha: Iterable[int]) -> int:
    """(sum alpha)! / prod(alpha_i!), the number of orderings of a multiset."""
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("entries must be nonnegative")
    total = sum(alpha)
    out = math.factorial(total)
    for a in alpha:
        out //= math.factorial(a)
    return out


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)
