import itertools
import math
import random

import pytest

from slinv.exact import Partition, partition_tuples, partitions_of
from slinv.kron import (
    character_value,
    exponent_monoid,
    k_rect,
    kronecker,
    kronecker_class_sum,
    pleth_upper_bound,
    sl_invariant_bound,
    triple_state_estimate,
)


def test_character_trivial_and_sign():
    for rho in partitions_of(6):
        assert character_value((6,), rho) == 1
        assert character_value((1,) * 6, rho) == (-1) ** (6 - len(rho))


def test_character_standard_representation_dimension():
    assert character_value((2, 1), (1, 1, 1)) == 2
    assert character_value((3, 1), (1, 1, 1, 1)) == 3


def test_character_orthogonality_row():
    # sum over classes of |class| * chi(rho)^2 = n! for an irreducible
    n = 6
    total = 0
    for rho in partitions_of(n):
        from slinv.exact import centralizer_order

        total += (math.factorial(n) // centralizer_order(rho)) * character_value((4, 2), rho) ** 2
    assert total == math.factorial(n)


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        character_value((3,), (2, 2))


def test_kronecker_with_trivial_shape():
    for n in range(1, 9):
        for lam in partition_tuples(n):
            assert kronecker(lam, lam, (n,)) == 1
    assert kronecker((1, 1), (1, 1), (2,)) == 1


def test_kronecker_strassen_uniqueness():
    assert kronecker((3, 3, 3), (3, 3, 3), (3, 3, 3)) == 1


def test_kronecker_size_mismatch():
    with pytest.raises(ValueError):
        kronecker((2,), (1, 1), (3,))


def test_kronecker_routes_agree():
    rng = random.Random(5)
    parts = list(partition_tuples(6))
    for _ in range(30):
        lam, mu, nu = (rng.choice(parts) for _ in range(3))
        assert kronecker(lam, mu, nu, method="triple") == kronecker_class_sum(lam, mu, nu)
    parts7 = list(partition_tuples(7))
    for _ in range(10):
        lam, mu, nu = (rng.choice(parts7) for _ in range(3))
        assert kronecker(lam, mu, nu, method="triple") == kronecker_class_sum(lam, mu, nu)


def test_kronecker_fully_symmetric():
    rng = random.Random(7)
    parts = list(partition_tuples(8))
    for _ in range(8):
        lam, mu, nu = (rng.choice(parts) for _ in range(3))
        reference = kronecker(lam, mu, nu)
        for perm in itertools.permutations((lam, mu, nu)):
            assert kronecker(*perm) == reference


def test_rectangle_complement_symmetry():
    # complements inside the 4 x 2 rectangle (the n = 2 case)
    rect_rows, rect_width = 4, 2
    rng = random.Random(11)

    def complement(lam):
        padded = list(lam) + [0] * (rect_rows - len(lam))
        return tuple(sorted((rect_width - x for x in padded), reverse=True))

    subs = []
    for lam in partition_tuples(4):
        if len(lam) <= rect_rows and all(x <= rect_width for x in lam):
            subs.append(lam)
    for lam, mu, nu in itertools.product(subs, repeat=3):
        comp = tuple(tuple(p for p in complement(x) if p) for x in (lam, mu, nu))
        assert kronecker(lam, mu, nu) == kronecker(*comp)


def test_rectangular_values_from_the_tables():
    assert [k_rect(3, d) for d in range(13)] == [1, 0, 1, 1, 2, 1, 3, 2, 4, 3, 5, 4, 7]
    assert k_rect(4, 2) == 1
    assert k_rect(2, 5) == 0
    assert [k_rect(2, d) for d in range(8)] == [1, 0, 1, 0, 1, 0, 1, 0]
    assert k_rect(9, 3) == 1
    assert k_rect(7, 4) == 14


def test_rectangular_monotonicity():
    positives = (2, 3)
    values = {d: k_rect(3, d) for d in range(14)}
    for d in range(11):
        for ell in positives:
            assert values[d] <= values[d + ell]


def test_exponent_monoid_small_m():
    report = exponent_monoid(3, 12)
    assert report.gaps == (1,)
    assert report.e_prime == 2
    assert report.gcd_positive == 1
    assert report.inferred == ()
    report = exponent_monoid(5, 6)
    assert report.gaps == (1, 2)
    assert report.e_prime == 3
    report = exponent_monoid(4, 8)
    assert report.gaps == (1,)
    assert report.e_prime == 2


def test_exponent_monoid_m2_caveat():
    report = exponent_monoid(2, 6)
    assert report.gaps == (1, 3, 5)
    assert report.e_prime == 2
    assert "divided by 2" in report.note


def test_pleth_upper_bound_examples():
    # no 3-subsets of a 2-set exist
    assert sl_invariant_bound(3, 3, 2) == 0
    # only one 3-subset of {1,2,3}: can't pick two distinct ones
    assert sl_invariant_bound(3, 2, 2) == 0
    assert pleth_upper_bound(Partition((3, 3)), 3, 2) == 0
    # degree-4 bound is positive, consistent with the binary-cubic discriminant
    assert sl_invariant_bound(3, 2, 4) == 75
    with pytest.raises(ValueError):
        sl_invariant_bound(4, 2, 2)
    with pytest.raises(ValueError):
        sl_invariant_bound(3, 5, 2)
    with pytest.raises(ValueError):
        pleth_upper_bound(Partition((3, 2)), 3, 2)


def test_pleth_upper_bound_degenerate():
    assert pleth_upper_bound(Partition(()), 3, 0) == 1


def test_triple_state_estimate_monotone_in_box():
    small = triple_state_estimate((2, 2), (2, 2), (2, 2))
    large = triple_state_estimate((4, 4), (4, 4), (4, 4))
    assert 0 < small < large
