"""Tableau-indexed invariants of cubic tensors, evaluated exactly.

A tableau here is an m x s array over the symbols 1..d in which every
symbol appears exactly D = m*s/d times and no symbol repeats within a
column.  Reading it columnwise sets up a bijection between symbol
occurrences and cells, and each tableau T defines a degree-d polynomial
on order-D cubic tensors: a sum over s-tuples of permutations of [m],
signed by the product of the permutation signs, of products of d tensor
entries.  Scaling by any g in GL_m multiplies the value by det(g)^s,
which is what makes these useful as special-linear invariants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from .budget import as_deadline
from .exact import binomial, sequence_sign
from .spaces import ParseError, SparseTensor


@dataclass(frozen=True)
class Tableau:
    """m x s array over [d]; symbol multiplicity D = m*s/d; columns repeat-free."""

    cells: tuple[tuple[int, ...], ...]
    d: int

    def __post_init__(self):
        m = len(self.cells)
        if m == 0:
            raise ValueError("tableau needs at least one row")
        s = len(self.cells[0])
        if s == 0 or any(len(row) != s for row in self.cells):
            raise ValueError("rows must be nonempty and of equal length")
        if (m * s) % self.d != 0:
            raise ValueError(f"cell count {m * s} not divisible by symbol count {self.d}")
        D = (m * s) // self.d
        counts = [0] * (self.d + 1)
        for row in self.cells:
            for x in row:
                if not (1 <= x <= self.d):
                    raise ValueError(f"entry {x} outside 1..{self.d}")
                counts[x] += 1
        for i in range(1, self.d + 1):
            if counts[i] != D:
                raise ValueError(f"symbol {i} appears {counts[i]} times, expected {D}")
        for j in range(s):
            col = [self.cells[k][j] for k in range(m)]
            if len(set(col)) != m:
                raise ValueError(f"column {j + 1} repeats a symbol")

    @property
    def m(self) -> int:
        return len(self.cells)

    @property
    def s(self) -> int:
        return len(self.cells[0])

    @property
    def D(self) -> int:
        return (self.m * self.s) // self.d

    def occurrences(self, symbol: int) -> list[tuple[int, int]]:
        """Cells (row, col), 1-based, of a symbol in columnwise scan order."""
        out = []
        for j in range(self.s):
            for k in range(self.m):
                if self.cells[k][j] == symbol:
                    out.append((k + 1, j + 1))
        return out


def tableau_positions(T: Tableau):
    """The mutually inverse occurrence/cell maps of a tableau.

    forward[(iota, i)] = (row, col) of the iota-th occurrence of symbol i
    in columnwise scan order; inverse[(row, col)] = (iota, i) recovers the
    occurrence index and symbol of a cell.
    """
    forward: dict[tuple[int, int], tuple[int, int]] = {}
    inverse: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(1, T.d + 1):
        for iota, cell in enumerate(T.occurrences(i), start=1):
            forward[(iota, i)] = cell
            inverse[cell] = (iota, i)
    return forward, inverse


def generic_tableau(D: int, m: int) -> Tableau:
    """The m x D tableau with every cell of row i equal to i."""
    if D < 1 or m < 1:
        raise ValueError("need D >= 1 and m >= 1")
    return Tableau(tuple((i,) * D for i in range(1, m + 1)), d=m)


def cyclic_tableau(D: int) -> Tableau:
    """The D x (D+1) tableau with entry ((j - i + 1) mod (D+1)) at (i, j).

    The representative of the residue class is taken in 1..D+1.
    """
    if D < 1:
        raise ValueError("need D >= 1")
    mod = D + 1
    rows = []
    for i in range(1, D + 1):
        row = []
        for j in range(1, D + 2):
            e = (j - i + 1) % mod
            row.append(e if e != 0 else mod)
        rows.append(tuple(row))
    return Tableau(tuple(rows), d=D + 1)


def power_sum_tableau(D: int, m: int) -> Tableau:
    """m x 2D tableau over [2m] whose symbol pairs occupy complementary column sets.

    Symbols 2r-1 and 2r live in row r on complementary D-subsets of the 2D
    columns, all 2m subsets pairwise distinct.  Greedy construction, always
    taking the lexicographically smallest unused subset; possible exactly
    when 2m <= C(2D, D), and an error otherwise.
    """
    if D < 1 or D % 2 == 0:
        raise ValueError("D must be odd")
    if m < 1:
        raise ValueError("need m >= 1")
    if 2 * m > binomial(2 * D, D):
        raise ValueError(f"2m = {2 * m} exceeds C({2 * D},{D}) = {binomial(2 * D, D)}; no such tableau")
    used: set[frozenset[int]] = set()
    rows: list[list[int]] = []
    all_cols = frozenset(range(1, 2 * D + 1))
    for r in range(1, m + 1):
        chosen = None
        for combo in itertools.combinations(range(1, 2 * D + 1), D):
            J = frozenset(combo)
            if J in used or (all_cols - J) in used:
                continue
            chosen = J
            break
        # The counting bound above guarantees a free complementary pair.
        assert chosen is not None
        comp = all_cols - chosen
        used.add(chosen)
        used.add(comp)
        row = [2 * r - 1 if j in chosen else 2 * r for j in range(1, 2 * D + 1)]
        rows.append(row)
    return Tableau(tuple(tuple(row) for row in rows), d=2 * m)


def _check_cubic(v: SparseTensor, D: int, m: int) -> None:
    if v.shape != (m,) * D:
        raise ValueError(f"tensor shape {v.shape} does not match order {D} on C^{m}")


def eval_tableau_invariant(T: Tableau, v: SparseTensor, deadline=None) -> Fraction:
    """Exact value of the tableau invariant at an order-D cubic tensor.

    Depth-first search over columns, extending one column permutation cell
    by cell; a tensor factor is looked up as soon as its last occurrence is
    assigned, so branches hitting a zero entry are pruned immediately.
    """
    dl = as_deadline(deadline)
    m, s, d, D = T.m, T.s, T.d, T.D
    _check_cubic(v, D, m)
    if not v.entries:
        return Fraction(0)

    # Static cell plan in column-major order: symbol, slot within its factor,
    # and whether the cell completes the factor.
    forward, inverse = tableau_positions(T)
    plan = []  # (row0, col0, symbol0, slot0, completes)
    occ_total = {i: len(T.occurrences(i)) for i in range(1, d + 1)}
    for j in range(1, s + 1):
        for k in range(1, m + 1):
            iota, i = inverse[(k, j)]
            plan.append((k - 1, j - 1, i - 1, iota - 1, iota == occ_total[i]))

    entries = v.entries
    factor_idx: list[list[int]] = [[0] * D for _ in range(d)]
    col_values: list[list[int]] = [[0] * m for _ in range(s)]
    col_used = [0] * s
    ncells = len(plan)
    total = Fraction(0)
    node_counter = 0

    def dfs(t: int, sign: int, product: Fraction) -> None:
        nonlocal total, node_counter
        if t == ncells:
            total += sign * product
            return
        node_counter += 1
        if node_counter % 4096 == 0:
            dl.check()
        row, col, sym, slot, completes = plan[t]
        used = col_used[col]
        values = col_values[col]
        fi = factor_idx[sym]
        for val in range(1, m + 1):
            bit = 1 << val
            if used & bit:
                continue
            col_used[col] = used | bit
            values[row] = val
            fi[slot] = val
            new_sign = sign
            new_product = product
            if completes:
                w = entries.get(tuple(fi))
                if w is None:
                    continue
                new_product = product * w
            if row == m - 1:
                new_sign = sign * sequence_sign(values)
            dfs(t + 1, new_sign, new_product)
        col_used[col] = used

    dfs(0, 1, Fraction(1))
    return total


def _is_relabel_invariant(v: SparseTensor, m: int) -> bool:
    """True when v is fixed by every simultaneous relabeling of all indices."""
    swaps = [(a, a + 1) for a in range(1, m)]  # adjacent transpositions generate
    for a, b in swaps:
        relabel = {a: b, b: a}
        for idx, value in v.entries.items():
            moved = tuple(relabel.get(x, x) for x in idx)
            if v.entries.get(moved) != value:
                return False
    return True


def eval_generic_invariant(
    D: int, m: int, v: SparseTensor, deadline=None, symmetry_reduction: bool = False
) -> Fraction:
    """Exact value of the degree-m generic invariant on order-D tensors over C^m.

    Fast path for the all-i-in-row-i tableau: rather than walking columns,
    assemble for each i = 1..m the full D-tuple of column images directly
    from the nonzero entries of v, with one injectivity bitmask per column.
    Identical results to eval_tableau_invariant on the generic tableau.

    symmetry_reduction folds the simultaneous-relabeling orbit: the first
    index of the first factor is pinned and the sum scaled by m.  Only
    legal when D is even and v is invariant under relabeling all indices
    at once (checked; the relabeling twists each term by sign^D, so odd D
    would need signed orbit bookkeeping instead of a plain factor).
    """
    dl = as_deadline(deadline)
    if D < 1 or m < 1:
        raise ValueError("need D >= 1 and m >= 1")
    _check_cubic(v, D, m)
    support = sorted(v.entries.items())
    if not support:
        return Fraction(0)
    if symmetry_reduction:
        if D % 2 != 0:
            raise ValueError("symmetry reduction needs even order D")
        if not _is_relabel_invariant(v, m):
            raise ValueError("symmetry reduction needs a relabeling-invariant tensor")

    used = [0] * D  # bitmask of already-used images per column permutation
    sigma = [[0] * m for _ in range(D)]
    total = Fraction(0)
    node_counter = 0

    def dfs(i: int, product: Fraction) -> None:
        nonlocal total, node_counter
        node_counter += 1
        if node_counter % 4096 == 0:
            dl.check()
        if i == m:
            sign = 1
            for j in range(D):
                sign *= sequence_sign(sigma[j])
            total += sign * product
            return
        for nu, w in support:
            if i == 0 and symmetry_reduction and nu[0] != 1:
                continue  # pin sigma_1(1); the m relabel-orbit copies are equal
            ok = True
            for j in range(D):
                if used[j] & (1 << nu[j]):
                    ok = False
                    break
            if not ok:
                continue
            for j in range(D):
                used[j] |= 1 << nu[j]
                sigma[j][i] = nu[j]
            dfs(i + 1, product * w)
            for j in range(D):
                used[j] &= ~(1 << nu[j])

    dfs(0, Fraction(1))
    return m * total if symmetry_reduction else total


def eval_cyclic_invariant(D: int, v: SparseTensor, deadline=None) -> Fraction:
    """Exact value of the cyclic degree-(D+1) invariant on order-D tensors over C^D."""
    _check_cubic(v, D, D)
    return eval_tableau_invariant(cyclic_tableau(D), v, deadline=deadline)


# -- tableau text format -------------------------------------------------------


def parse_tableau(text: str) -> Tableau:
    lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] != "tableau":
        raise ParseError("expected header 'tableau <m> <s>'", lineno)
    try:
        m, s = int(fields[1]), int(fields[2])
    except ValueError:
        raise ParseError("m and s must be integers", lineno) from None
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} rows, got {len(lines) - 1}", lineno)
    rows = []
    for lineno, line in lines[1:]:
        try:
            row = tuple(int(x) for x in line.split())
        except ValueError:
            raise ParseError("row entries must be integers", lineno) from None
        if len(row) != s:
            raise ParseError(f"expected {s} entries, got {len(row)}", lineno)
        rows.append(row)
    d = max(max(row) for row in rows)
    try:
        return Tableau(tuple(rows), d=d)
    except ValueError as exc:
        raise ParseError(str(exc), lines[0][0]) from None


def serialize_tableau(T: Tableau) -> str:
    out = [f"tableau {T.m} {T.s}"]
    for row in T.cells:
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
