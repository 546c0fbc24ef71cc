import math
import random
from fractions import Fraction

import pytest

from helpers import (
    brute_tableau_invariant,
    leibniz_det,
    random_integer_matrix,
    random_sparse_cubic,
)
from slinv.exact import binomial
from slinv.spaces import (
    ParseError,
    SparseForm,
    SparseTensor,
    apply_action,
    form_to_tensor,
    power_sum_form,
    product_form,
)
from slinv.tableaux import (
    Tableau,
    cyclic_tableau,
    eval_cyclic_invariant,
    eval_generic_invariant,
    eval_tableau_invariant,
    generic_tableau,
    parse_tableau,
    power_sum_tableau,
    serialize_tableau,
    tableau_positions,
)

# the 3 x 4 cyclic tableau used as the running positions example
CYCLIC_3 = Tableau(((1, 2, 3, 4), (4, 1, 2, 3), (3, 4, 1, 2)), d=4)


def _random_tableaux(rng, count):
    """Valid tableaux obtained from known families by column shuffles and relabelings."""
    base = [
        generic_tableau(3, 2),
        generic_tableau(2, 3),
        cyclic_tableau(3),
        power_sum_tableau(3, 2),
        CYCLIC_3,
    ]
    out = []
    for _ in range(count):
        T = rng.choice(base)
        cols = list(range(T.s))
        rng.shuffle(cols)
        relabel = list(range(1, T.d + 1))
        rng.shuffle(relabel)
        cells = tuple(tuple(relabel[T.cells[r][c] - 1] for c in cols) for r in range(T.m))
        out.append(Tableau(cells, d=T.d))
    return out


def test_tableau_validation():
    with pytest.raises(ValueError):  # symbol 1 repeats in column 1
        Tableau(((1, 2), (1, 2)), d=2)
    with pytest.raises(ValueError):  # unbalanced symbol counts
        Tableau(((1, 1), (2, 3)), d=3)
    T = CYCLIC_3
    assert (T.m, T.s, T.d, T.D) == (3, 4, 4, 3)


def test_positions_running_example():
    forward, inverse = tableau_positions(CYCLIC_3)
    # the second 4, scanning columns left to right, sits at row 3 column 2
    assert forward[(2, 4)] == (3, 2)
    assert inverse[(3, 2)] == (2, 4)


def test_positions_generic_tableau():
    T = generic_tableau(4, 3)
    forward, _ = tableau_positions(T)
    for i in range(1, 4):
        for iota in range(1, 5):
            assert forward[(iota, i)] == (i, iota)


def test_positions_mutually_inverse_on_random_tableaux():
    rng = random.Random(5)
    for T in _random_tableaux(rng, 20):
        forward, inverse = tableau_positions(T)
        assert len(forward) == T.D * T.d
        for key, cell in forward.items():
            assert inverse[cell] == key
        for cell, key in inverse.items():
            assert forward[key] == cell


def test_tableau_evaluator_matches_brute_force():
    rng = random.Random(9)
    for T in [generic_tableau(2, 2), generic_tableau(3, 2), cyclic_tableau(2), CYCLIC_3]:
        for _ in range(5):
            v = random_sparse_cubic(rng, T.m, T.D, terms=4)
            assert eval_tableau_invariant(T, v) == brute_tableau_invariant(T, v)


def test_generic_evaluator_matches_tableau_evaluator():
    rng = random.Random(13)
    for _ in range(20):
        D, m = rng.choice([(2, 2), (3, 2), (2, 3), (4, 2)])
        v = random_sparse_cubic(rng, m, D, terms=5)
        assert eval_generic_invariant(D, m, v) == eval_tableau_invariant(generic_tableau(D, m), v)


def test_generic_invariant_power_sum_values():
    for D, m in [(2, 2), (4, 2), (4, 3), (6, 2)]:
        v = form_to_tensor(power_sum_form(D, m))
        assert eval_generic_invariant(D, m, v) == math.factorial(m)


def test_generic_invariant_vanishes_for_odd_degree():
    rng = random.Random(17)
    for D, m in [(3, 2), (3, 3), (5, 2)]:
        for _ in range(5):
            v = random_sparse_cubic(rng, m, D, terms=6)
            assert eval_generic_invariant(D, m, v) == 0


def test_degree_two_reduces_to_determinant():
    rng = random.Random(21)
    for m in (2, 3, 4):
        g = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
        sym = [[(g[i][j] + g[j][i]) / 2 for j in range(m)] for i in range(m)]
        v = SparseTensor((m, m), {(i + 1, j + 1): sym[i][j] for i in range(m) for j in range(m)
                                  if sym[i][j] != 0})
        assert eval_generic_invariant(2, m, v) == math.factorial(m) * leibniz_det(sym)


def test_quadric_value_two():
    v = form_to_tensor(power_sum_form(2, 2))
    assert eval_generic_invariant(2, 2, v) == 2


def test_power_sum_tableau_evaluation_gives_m_factorial():
    T = power_sum_tableau(3, 2)
    v = form_to_tensor(power_sum_form(3, 2))
    assert eval_tableau_invariant(T, v) == 2


def test_homogeneity_in_the_tensor():
    rng = random.Random(29)
    T = generic_tableau(3, 2)
    v = random_sparse_cubic(rng, 2, 3, terms=4)
    doubled = SparseTensor(v.shape, {idx: 2 * val for idx, val in v.entries.items()})
    assert eval_tableau_invariant(T, doubled) == 2**T.d * eval_tableau_invariant(T, v)


def test_cyclic_invariant_shapes_and_values():
    # D = 1: the 1 x 2 tableau forces the square of the single entry
    v = SparseTensor((1,), {(1,): Fraction(3, 4)})
    assert eval_cyclic_invariant(1, v) == Fraction(9, 16)
    # even D vanishes on symmetric tensors (the sign-flip pairing permutes
    # the slots of one factor, so it needs index-permutation invariance;
    # general tensors can evaluate nonzero, e.g. the coefficient of M12^3)
    rng = random.Random(31)
    for _ in range(5):
        coeffs = {}
        for _ in range(3):
            a = rng.randint(0, 2)
            coeffs[(a, 2 - a)] = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        v = form_to_tensor(SparseForm(2, 2, coeffs))
        assert eval_cyclic_invariant(2, v) == 0
    # explicit non-symmetric witness: for D = 2 the columnwise-read sum
    # works out to (v12 - v21) * (v12*v21 - v11*v22)
    general = SparseTensor((2, 2), {(1, 2): 2, (2, 1): 1})
    assert eval_cyclic_invariant(2, general) == 2
    # frozen odd-degree value at (X+Y+Z)^3 + X^3 + Y^3 + Z^3, checked
    # against the unpruned 6^4-term reference sum
    coeffs = {}
    for a in range(4):
        for b in range(4 - a):
            c = 3 - a - b
            coeffs[(a, b, c)] = math.factorial(3) // (
                math.factorial(a) * math.factorial(b) * math.factorial(c))
    for i in range(3):
        key = tuple(3 if j == i else 0 for j in range(3))
        coeffs[key] = coeffs.get(key, 0) + 1
    v = form_to_tensor(SparseForm(3, 3, coeffs))
    value = eval_cyclic_invariant(3, v)
    assert value == -24
    assert value == brute_tableau_invariant(cyclic_tableau(3), v)


def test_cyclic_tableau_structure():
    T = cyclic_tableau(3)
    assert T.cells == CYCLIC_3.cells


def test_power_sum_tableau_matches_greedy_example():
    T = power_sum_tableau(3, 2)
    assert T.cells == ((1, 1, 1, 2, 2, 2), (3, 3, 4, 3, 4, 4))


def test_power_sum_tableau_bounds():
    T = power_sum_tableau(3, 10)  # 2m = 20 = C(6,3) exactly fills the subsets
    assert (T.m, T.s, T.d) == (10, 6, 20)
    with pytest.raises(ValueError):
        power_sum_tableau(3, 11)
    with pytest.raises(ValueError):
        power_sum_tableau(4, 2)
    T = power_sum_tableau(5, 3)
    assert (T.m, T.s, T.d, T.D) == (3, 10, 6, 5)
    assert 2 * 3 <= binomial(10, 5)


def test_relative_invariance_under_group_action():
    rng = random.Random(37)
    cases = [generic_tableau(2, 2), generic_tableau(4, 2), generic_tableau(2, 3), cyclic_tableau(3)]
    for T in cases:
        v = random_sparse_cubic(rng, T.m, T.D, terms=3)
        g = random_integer_matrix(rng, T.m)
        moved = apply_action(v, [g] * T.D)
        det = leibniz_det(g)
        assert eval_tableau_invariant(T, moved) == det**T.s * eval_tableau_invariant(T, v)


def test_generic_invariance_on_product_form():
    rng = random.Random(41)
    m = 3
    v = form_to_tensor(product_form(m))
    g = random_integer_matrix(rng, m)
    moved = apply_action(v, [g] * m)
    det = leibniz_det(g)
    assert eval_generic_invariant(m, m, moved) == det**m * eval_generic_invariant(m, m, v)


def test_symmetry_reduction_agrees_when_legal():
    for D, m in [(4, 3), (2, 4), (4, 4)]:
        v = form_to_tensor(power_sum_form(D, m))
        assert eval_generic_invariant(D, m, v, symmetry_reduction=True) == math.factorial(m)
    v = form_to_tensor(product_form(4))
    assert (eval_generic_invariant(4, 4, v, symmetry_reduction=True)
            == eval_generic_invariant(4, 4, v))


def test_symmetry_reduction_gates():
    v = form_to_tensor(power_sum_form(3, 2))
    with pytest.raises(ValueError):  # odd order twists orbit signs
        eval_generic_invariant(3, 2, v, symmetry_reduction=True)
    lopsided = SparseTensor((2, 2), {(1, 1): 1})
    with pytest.raises(ValueError):  # not relabeling-invariant
        eval_generic_invariant(2, 2, lopsided, symmetry_reduction=True)


def test_zero_tensor_evaluates_to_zero():
    zero = SparseTensor((2, 2, 2), {})
    assert eval_tableau_invariant(generic_tableau(3, 2), zero) == 0
    assert eval_generic_invariant(3, 2, zero) == 0


def test_shape_mismatch_rejected():
    v = random_sparse_cubic(random.Random(1), 3, 2, terms=2)
    with pytest.raises(ValueError):
        eval_generic_invariant(2, 2, v)
    with pytest.raises(ValueError):
        eval_tableau_invariant(generic_tableau(2, 2), v)


def test_tableau_file_roundtrip():
    text = serialize_tableau(CYCLIC_3)
    assert parse_tableau(text).cells == CYCLIC_3.cells
    assert serialize_tableau(parse_tableau(text)) == text
    with pytest.raises(ParseError):
        parse_tableau("tableau 2 2\n1 2\n")
