"""Signed enumeration of column-signed Latin squares, Latin annuli, Latin
cubes, and admissible tables.

Every counter returns (#even) - (#odd) as an exact Python int.  They all
follow the same pattern: backtracking in a fixed canonical cell order with
per-line bitmask constraint propagation, and permutation signs accumulated
incrementally as inversion counts against the already-placed prefix of
each line.  The enumeration is split into top-level subtrees (the choices
for the first column / first row / first slice row), which is what the
optional checkpointing and worker parallelism operate on; results merge by
integer addition, so parallel output is identical to serial output.
"""

from __future__ import annotations

import itertools
import time
from multiprocessing import Pool
from typing import Callable, Iterable, Optional

from .budget import BudgetExhausted, as_deadline
from .exact import perm_sign

_CHECK_MASK = 0x3FF  # deadline polling period in DFS nodes


def _expired(deadline_at: Optional[float]) -> bool:
    return deadline_at is not None and time.monotonic() > deadline_at


def _above(mask: int, value: int) -> int:
    """Number of set bits in `mask` at positions strictly greater than `value`."""
    return (mask >> (value + 1)).bit_count()


# ----------------------------------------------------------------------------
# Subtree enumerators.  Top-level module functions so they pickle for Pool.
# ----------------------------------------------------------------------------


def _squares_subtree(n: int, col0: tuple[int, ...], deadline_at: Optional[float]) -> int:
    """Signed count of Latin squares of order n whose first column is col0."""
    row_used = [1 << col0[r] for r in range(n)]
    inv0 = 0
    seen = 0
    for v in col0:
        inv0 += _above(seen, v)
        seen |= 1 << v
    total = 0
    nodes = 0

    def fill(col: int, row: int, col_used: int, inv: int) -> None:
        nonlocal total, nodes
        if col == n:
            total += -1 if inv & 1 else 1
            return
        nodes += 1
        if (nodes & _CHECK_MASK) == 0 and _expired(deadline_at):
            raise BudgetExhausted()
        if row == n:
            fill(col + 1, 0, 0, inv)
            return
        free = ~(row_used[row] | col_used)
        for v in range(1, n + 1):
            bit = 1 << v
            if free & bit:
                row_used[row] |= bit
                fill(col, row + 1, col_used | bit, inv + _above(col_used, v))
                row_used[row] &= ~bit

    fill(1, 0, 0, inv0)
    return total


def _annuli_subtree(m: int, d: int, col0: tuple[int, ...], deadline_at: Optional[float]) -> int:
    """Signed count of m x d Latin annuli whose first column is col0."""
    diag_used = [0] * d  # diagonal of cell (row k, col j), 0-based: (j - k) mod d
    for k, v in enumerate(col0):
        diag_used[(0 - k) % d] |= 1 << v
    inv0 = 0
    seen = 0
    for v in col0:
        inv0 += _above(seen, v)
        seen |= 1 << v
    total = 0
    nodes = 0

    def fill(col: int, row: int, col_used: int, inv: int) -> None:
        nonlocal total, nodes
        if col == d:
            total += -1 if inv & 1 else 1
            return
        nodes += 1
        if (nodes & _CHECK_MASK) == 0 and _expired(deadline_at):
            raise BudgetExhausted()
        if row == m:
            fill(col + 1, 0, 0, inv)
            return
        diag = (col - row) % d
        free = ~(diag_used[diag] | col_used)
        for v in range(1, m + 1):
            bit = 1 << v
            if free & bit:
                diag_used[diag] |= bit
                fill(col, row + 1, col_used | bit, inv + _above(col_used, v))
                diag_used[diag] &= ~bit

    fill(1, 0, 0, inv0)
    return total


def _cube_points(n: int) -> list[tuple[int, int, int]]:
    return [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]


def _cubes_subtree(n: int, first_labels: tuple[int, ...], deadline_at: Optional[float]) -> int:
    """Signed count of Latin cubes of size n whose first n points carry first_labels.

    Points are taken in lexicographic order on [n]^3; the first n points are
    (1,1,1..n).  The sign is the product of the 3n slice-permutation signs,
    each slice read in the induced lexicographic order.
    """
    points = _cube_points(n)
    x_used = [0] * n
    y_used = [0] * n
    z_used = [0] * n
    inv = 0
    for (x, y, z), lab in zip(points, first_labels):
        inv += _above(x_used[x], lab) + _above(y_used[y], lab) + _above(z_used[z], lab)
        bit = 1 << lab
        x_used[x] |= bit
        y_used[y] |= bit
        z_used[z] |= bit
    total = 0
    nodes = 0
    nsq = n * n
    npts = len(points)

    def fill(t: int, inv: int) -> None:
        nonlocal total, nodes
        if t == npts:
            total += -1 if inv & 1 else 1
            return
        nodes += 1
        if (nodes & _CHECK_MASK) == 0 and _expired(deadline_at):
            raise BudgetExhausted()
        x, y, z = points[t]
        ux, uy, uz = x_used[x], y_used[y], z_used[z]
        free = ~(ux | uy | uz)
        for lab in range(1, nsq + 1):
            bit = 1 << lab
            if free & bit:
                x_used[x] = ux | bit
                y_used[y] = uy | bit
                z_used[z] = uz | bit
                fill(t + 1, inv + _above(ux, lab) + _above(uy, lab) + _above(uz, lab))
        x_used[x], y_used[y], z_used[z] = ux, uy, uz

    fill(len(first_labels), inv)
    return total


def _tables_subtree(
    n: int, weighting: str, first_row: tuple[int, int], deadline_at: Optional[float]
) -> int:
    """Signed count of admissible tables with a fixed first row pair.

    first_row = (index into Sn for S's row 1, index for T's row 1).
    """
    perms = list(itertools.permutations(range(1, n + 1)))
    signs = [perm_sign(p) for p in perms]
    use_row_sign = weighting == "det"
    nsq = n * n
    col_used = [0] * n
    s0, t0 = first_row
    sigma0, tau0 = perms[s0], perms[t0]
    inv = 0
    row_sign0 = signs[s0] * signs[t0] if use_row_sign else 1
    for j in range(n):
        code = (sigma0[j] - 1) * n + tau0[j]
        inv += _above(col_used[j], code)
        col_used[j] |= 1 << code
    total = 0
    nodes = 0

    def fill(i: int, row_sign: int, inv: int) -> None:
        nonlocal total, nodes
        if i == nsq:
            sign = row_sign * (-1 if inv & 1 else 1)
            total += sign
            return
        nodes += 1
        if (nodes & _CHECK_MASK) == 0 and _expired(deadline_at):
            raise BudgetExhausted()
        for si, sigma in enumerate(perms):
            for ti, tau in enumerate(perms):
                codes = [(sigma[j] - 1) * n + tau[j] for j in range(n)]
                ok = True
                add_inv = 0
                for j in range(n):
                    if col_used[j] & (1 << codes[j]):
                        ok = False
                        break
                    add_inv += _above(col_used[j], codes[j])
                if not ok:
                    continue
                for j in range(n):
                    col_used[j] |= 1 << codes[j]
                rs = row_sign * signs[si] * signs[ti] if use_row_sign else row_sign
                fill(i + 1, rs, inv + add_inv)
                for j in range(n):
                    col_used[j] &= ~(1 << codes[j])

    fill(1, row_sign0, inv)
    return total


_SUBTREE_FNS: dict[str, Callable[..., int]] = {
    "squares": _squares_subtree,
    "annuli": _annuli_subtree,
    "cubes": _cubes_subtree,
    "tables": _tables_subtree,
}


def _pool_call(job: tuple) -> tuple[str, Optional[int]]:
    kind, args, key = job
    try:
        return key, _SUBTREE_FNS[kind](*args)
    except BudgetExhausted:
        return key, None


def _run_tasks(
    kind: str,
    tasks: list[tuple[str, tuple]],
    workers: int,
    deadline_at: Optional[float],
    checkpoint: Optional[dict[str, int]],
) -> int:
    """Run subtree tasks (serially or on a pool) and sum their signed counts.

    `checkpoint` maps canonical prefixes to finished subtree counts and is
    consulted before computing; on budget exhaustion the raise carries every
    completed subtree so the caller can persist them.
    """
    completed: dict[str, int] = dict(checkpoint or {})
    todo = [(key, args) for key, args in tasks if key not in completed]
    if workers <= 1 or len(todo) <= 1:
        for key, args in todo:
            if _expired(deadline_at):
                raise BudgetExhausted(completed=completed)
            try:
                completed[key] = _SUBTREE_FNS[kind](*args)
            except BudgetExhausted:
                raise BudgetExhausted(completed=completed) from None
    else:
        jobs = [(kind, args, key) for key, args in todo]
        exhausted = False
        with Pool(processes=workers) as pool:
            for key, value in pool.imap_unordered(_pool_call, jobs):
                if value is None:
                    exhausted = True
                else:
                    completed[key] = value
        if exhausted:
            raise BudgetExhausted(completed=completed)
    return sum(completed[key] for key, _ in tasks)


def _prefix_key(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def signed_latin_squares(
    n: int,
    *,
    workers: int = 1,
    deadline=None,
    checkpoint: Optional[dict[str, int]] = None,
) -> int:
    """(# column-even) - (# column-odd) Latin squares of order n."""
    if n < 1:
        raise ValueError("need n >= 1")
    dl = as_deadline(deadline)
    tasks = [(_prefix_key(p), (n, p, dl.at)) for p in itertools.permutations(range(1, n + 1))]
    return _run_tasks("squares", tasks, workers, dl.at, checkpoint)


def signed_latin_annuli(
    m: int,
    d: int,
    *,
    workers: int = 1,
    deadline=None,
    checkpoint: Optional[dict[str, int]] = None,
) -> int:
    """(# column-even) - (# column-odd) m x d Latin annuli.

    Columns and wrap-around diagonals each carry every symbol of [m]
    exactly once; column indices are taken modulo d, so d >= m is required.
    """
    if m < 1 or d < m:
        raise ValueError("need 1 <= m <= d")
    dl = as_deadline(deadline)
    tasks = [(_prefix_key(p), (m, d, p, dl.at)) for p in itertools.permutations(range(1, m + 1))]
    return _run_tasks("annuli", tasks, workers, dl.at, checkpoint)


def signed_latin_cubes(
    n: int,
    *,
    workers: int = 1,
    deadline=None,
    checkpoint: Optional[dict[str, int]] = None,
    force_enumerate: bool = False,
) -> int:
    """(# even) - (# odd) Latin cubes of size n, sign over all 3n slices.

    For odd n >= 3 the swap of two fixed symbols is a sign-reversing
    involution (each of the 3n slices picks up one transposition), so the
    count is 0 without enumeration; pass force_enumerate=True to count
    anyway.  n = 1 has a single, even cube.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n % 2 == 1 and n >= 3 and not force_enumerate:
        return 0
    dl = as_deadline(deadline)
    nsq = n * n
    tasks = []
    for labels in itertools.permutations(range(1, nsq + 1), n):
        tasks.append((_prefix_key(labels), (n, labels, dl.at)))
    return _run_tasks("cubes", tasks, workers, dl.at, checkpoint)


def signed_admissible_tables(
    n: int,
    weighting: str = "det",
    *,
    workers: int = 1,
    deadline=None,
    checkpoint: Optional[dict[str, int]] = None,
) -> int:
    """Signed count of admissible pairs (S, T) of n^2 x n row-permutation arrays.

    Columns of the pair jointly enumerate [n] x [n] (ordered
    lexicographically for the column sign).  weighting='det' uses
    row sign times column sign; weighting='per' uses the column sign only.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if weighting not in ("det", "per"):
        raise ValueError("weighting must be 'det' or 'per'")
    dl = as_deadline(deadline)
    nperm = len(list(itertools.permutations(range(1, n + 1))))
    tasks = []
    for si in range(nperm):
        for ti in range(nperm):
            tasks.append((f"{si}/{ti}", (n, weighting, (si, ti), dl.at)))
    return _run_tasks("tables", tasks, workers, dl.at, checkpoint)


# -- checkpoint file format ----------------------------------------------------


def parse_checkpoint(text: str) -> dict[str, int]:
    """Parse `subtree <canonical-prefix> <signed-count>` lines."""
    out: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3 or fields[0] != "subtree":
            raise ValueError(f"checkpoint line {lineno}: expected 'subtree <prefix> <count>'")
        out[fields[1]] = int(fields[2])
    return out


def serialize_checkpoint(completed: dict[str, int]) -> str:
    return "".join(f"subtree {key} {value}\n" for key, value in sorted(completed.items()))
