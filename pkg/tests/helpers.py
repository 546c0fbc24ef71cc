"""Shared oracles and generators for the test suite.

Everything here is deliberately independent of the library's pruned
evaluators: plain full enumerations and textbook formulas, used to freeze
expected values and to cross-check the fast paths.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from slinv.exact import sequence_sign
from slinv.spaces import SparseTensor
from slinv.tableaux import Tableau


def random_fraction(rng: random.Random, zero_ok: bool = False) -> Fraction:
    num = rng.randint(-4, 4)
    if not zero_ok:
        while num == 0:
            num = rng.randint(-4, 4)
    return Fraction(num, rng.randint(1, 4))


def random_sparse_cubic(rng: random.Random, m: int, D: int, terms: int) -> SparseTensor:
    entries = {}
    for _ in range(terms):
        idx = tuple(rng.randint(1, m) for _ in range(D))
        entries[idx] = random_fraction(rng)
    return SparseTensor((m,) * D, entries)


def random_rational_matrix(rng: random.Random, n: int):
    return [[random_fraction(rng, zero_ok=True) for _ in range(n)] for _ in range(n)]


def random_invertible_matrix(rng: random.Random, n: int):
    while True:
        g = random_rational_matrix(rng, n)
        if leibniz_det(g) != 0:
            return g


def random_integer_matrix(rng: random.Random, n: int):
    return [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]


def leibniz_det(g) -> Fraction:
    n = len(g)
    total = Fraction(0)
    for images in itertools.permutations(range(n)):
        term = Fraction(sequence_sign([i + 1 for i in images]))
        for row, col in enumerate(images):
            term *= Fraction(g[row][col])
        total += term
    return total


def matrix_inverse(g):
    n = len(g)
    aug = [[Fraction(g[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def brute_tableau_invariant(T: Tableau, v: SparseTensor) -> Fraction:
    """Unpruned sum over all s-tuples of permutations; exponential, small inputs only."""
    m, s, d = T.m, T.s, T.d
    perms = list(itertools.permutations(range(1, m + 1)))
    occ = {i: T.occurrences(i) for i in range(1, d + 1)}
    total = Fraction(0)
    for sigmas in itertools.product(perms, repeat=s):
        sign = 1
        for sigma in sigmas:
            sign *= sequence_sign(sigma)
        product = Fraction(1)
        for i in range(1, d + 1):
            idx = tuple(sigmas[col - 1][row - 1] for row, col in occ[i])
            value = v.entries.get(idx)
            if value is None:
                product = Fraction(0)
                break
            product *= value
        if product:
            total += sign * product
    return total


def brute_signed_latin_squares(n: int) -> int:
    total = 0
    perms = list(itertools.permutations(range(1, n + 1)))
    for rows in itertools.product(perms, repeat=n):
        if all(sorted(rows[i][j] for i in range(n)) == list(range(1, n + 1)) for j in range(n)):
            sign = 1
            for j in range(n):
                sign *= sequence_sign([rows[i][j] for i in range(n)])
            total += sign
    return total


def brute_signed_latin_annuli(m: int, d: int) -> int:
    total = 0
    for cells in itertools.product(range(1, m + 1), repeat=m * d):
        M = [cells[i * d:(i + 1) * d] for i in range(m)]
        ok = all(sorted(M[k][j] for k in range(m)) == list(range(1, m + 1)) for j in range(d))
        if ok:
            for i in range(d):
                diag = [M[k][(i + k) % d] for k in range(m)]
                if sorted(diag) != list(range(1, m + 1)):
                    ok = False
                    break
        if ok:
            sign = 1
            for j in range(d):
                sign *= sequence_sign([M[k][j] for k in range(m)])
            total += sign
    return total


def enumerate_latin_cubes(n: int):
    """All slice-bijective labelings of [n]^3 with their signs (tiny n only)."""
    points = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]
    nsq = n * n
    for labels in itertools.product(range(1, nsq + 1), repeat=len(points)):
        ok = True
        sign = 1
        for axis in range(3):
            for s in range(n):
                seq = [labels[i] for i, p in enumerate(points) if p[axis] == s]
                if sorted(seq) != list(range(1, nsq + 1)):
                    ok = False
                    break
                sign *= sequence_sign(seq)
            if not ok:
                break
        if ok:
            yield labels, sign


def brute_signed_latin_cubes(n: int) -> int:
    return sum(sign for _, sign in enumerate_latin_cubes(n))


def brute_signed_admissible_tables(n: int, weighting: str) -> int:
    perms = list(itertools.permutations(range(1, n + 1)))
    nsq = n * n
    total = 0
    for srows in itertools.product(perms, repeat=nsq):
        for trows in itertools.product(perms, repeat=nsq):
            ok = True
            for j in range(n):
                pairs = [(srows[i][j], trows[i][j]) for i in range(nsq)]
                if len(set(pairs)) != nsq:
                    ok = False
                    break
            if not ok:
                continue
            sign = 1
            for j in range(n):
                codes = [(srows[i][j] - 1) * n + trows[i][j] for i in range(nsq)]
                sign *= sequence_sign(codes)
            if weighting == "det":
                for i in range(nsq):
                    sign *= sequence_sign(srows[i]) * sequence_sign(trows[i])
            total += sign
    return total
