"""Symmetric-group characters, Kronecker coefficients, degree monoids, and
subset-family upper bounds on invariant-space dimensions.

Two independent exact routes produce Kronecker coefficients:

* a class sum: enumerate cycle types of S_N once, carrying a vector of
  border-strip character coefficients for each of the three shapes
  (Murnaghan-Nakayama transfers, parts consumed in descending order), and
  accumulate chi*chi*chi times the class size;
* a coupled strip recursion: remove one border strip of equal length from
  all three shapes at once and divide by the remaining size, memoized on
  the unordered shape triple.  Every memoized value is itself a Kronecker
  coefficient, so nonnegativity and divisibility are asserted at each node.

Both are exact; `kronecker` picks the cheaper route from partition-count
estimates, and the test suite cross-checks them against each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .budget import as_deadline
from .exact import Partition, partition_count

PartitionLike = Union[Partition, Iterable[int]]

# ----------------------------------------------------------------------------
# Interned shapes and border-strip tables
# ----------------------------------------------------------------------------

_SHAPES: list[tuple[int, ...]] = []
_SIZES: list[int] = []
_SID: dict[tuple[int, ...], int] = {}
_STRIPS: list[Optional[dict[int, tuple[tuple[int, int], ...]]]] = []


def _sid(shape: tuple[int, ...]) -> int:
    got = _SID.get(shape)
    if got is not None:
        return got
    sid = len(_SHAPES)
    _SID[shape] = sid
    _SHAPES.append(shape)
    _SIZES.append(sum(shape))
    _STRIPS.append(None)
    return sid


def _strips(sid: int) -> dict[int, tuple[tuple[int, int], ...]]:
    """Border strips removable from a shape: length -> ((sub_sid, sign), ...).

    Computed on first-column hook (beta) numbers: removing a strip of
    length l replaces some beta by beta - l when that value is free; the
    sign is (-1)^(rows crossed).
    """
    table = _STRIPS[sid]
    if table is not None:
        return table
    shape = _SHAPES[sid]
    r = len(shape)
    beta = [shape[i] + (r - 1 - i) for i in range(r)]
    beta_set = set(beta)
    out: dict[int, list[tuple[int, int]]] = {}
    for i, b in enumerate(beta):
        for new in range(b - 1, -1, -1):
            if new in beta_set:
                continue
            length = b - new
            height = sum(1 for x in beta if new < x < b)
            nb = sorted(beta_set - {b} | {new}, reverse=True)
            parts = tuple(nb[k] - (r - 1 - k) for k in range(r))
            parts = tuple(p for p in parts if p > 0)
            out.setdefault(length, []).append((_sid(parts), -1 if height & 1 else 1))
    frozen = {length: tuple(subs) for length, subs in out.items()}
    _STRIPS[sid] = frozen
    return frozen


def _as_shape(p: PartitionLike) -> tuple[int, ...]:
    return Partition.of(p).parts


# ----------------------------------------------------------------------------
# Characters via Murnaghan-Nakayama
# ----------------------------------------------------------------------------

_CHAR_MEMO: dict[tuple[int, tuple[int, ...]], int] = {}


def _char(sid: int, cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1
    key = (sid, cycles)
    got = _CHAR_MEMO.get(key)
    if got is not None:
        return got
    total = 0
    rest = cycles[1:]
    for sub, sign in _strips(sid).get(cycles[0], ()):
        total += sign * _char(sub, rest)
    _CHAR_MEMO[key] = total
    return total


def character_value(lam: PartitionLike, rho: PartitionLike) -> int:
    """Irreducible character of S_N of shape lam at cycle type rho, exactly.

    Border-strip recursion, memoized on (remaining shape, remaining cycle
    multiset), cycles consumed largest-first.
    """
    lam = _as_shape(lam)
    rho = _as_shape(rho)
    if sum(lam) != sum(rho):
        raise ValueError(f"|lam| = {sum(lam)} but |rho| = {sum(rho)}")
    return _char(_sid(lam), tuple(sorted(rho, reverse=True)))


# ----------------------------------------------------------------------------
# Kronecker coefficients
# ----------------------------------------------------------------------------

_TRIPLE_MEMO: dict[int, int] = {}

# Dispatch threshold on the estimated coupled-recursion state count.
TRIPLE_STATE_LIMIT = 30_000_000


def _triple(a: int, b: int, c: int) -> int:
    # canonical order: a <= b <= c
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
    if a > b:
        a, b = b, a
    key = a | (b << 21) | (c << 42)
    got = _TRIPLE_MEMO.get(key)
    if got is not None:
        return got
    return _triple_compute(a, b, c, key)


def _triple_compute(a: int, b: int, c: int, key: int) -> int:
    # callers guarantee a <= b <= c and a cache miss on key
    memo = _TRIPLE_MEMO
    s = _SIZES[a]
    if s == 0:
        memo[key] = 1
        return 1
    sa, sb, sc = _strips(a), _strips(b), _strips(c)
    if len(sb) < len(sa):
        sa, sb = sb, sa
    if len(sc) < len(sa):
        sa, sc = sc, sa
    total = 0
    for length, la in sa.items():
        lb = sb.get(length)
        if lb is None:
            continue
        lc = sc.get(length)
        if lc is None:
            continue
        for sub_a, sign_a in la:
            for sub_b, sign_b in lb:
                sign_ab = sign_a * sign_b
                for sub_c, sign_c in lc:
                    # inline canonicalization + memo probe of the child
                    x, y, z = sub_a, sub_b, sub_c
                    if x > y:
                        x, y = y, x
                    if y > z:
                        y, z = z, y
                    if x > y:
                        x, y = y, x
                    child_key = x | (y << 21) | (z << 42)
                    v = memo.get(child_key)
                    if v is None:
                        v = _triple_compute(x, y, z, child_key)
                    total += sign_ab * sign_c * v
    if total % s != 0:
        raise AssertionError(f"strip recursion sum {total} not divisible by {s}")
    value = total // s
    if value < 0:
        raise AssertionError(f"negative Kronecker value {value}")
    memo[key] = value
    return value


def _transfer(vec: dict[int, int], length: int) -> dict[int, int]:
    out: dict[int, int] = {}
    get = out.get
    for sid, coeff in vec.items():
        for sub, sign in _strips(sid).get(length, ()):
            out[sub] = get(sub, 0) + coeff * sign
    return {sid: c for sid, c in out.items() if c}


def _classsum(ids: tuple[int, ...]) -> int:
    """Sum over cycle types of prod_i chi_i(rho) / z_rho, exactly.

    Distinct shapes carry distinct coefficient vectors; repeated shapes are
    computed once and raised to their multiplicity at the leaves.  The
    accumulator holds sum over classes of prod chi * |class|, an integer,
    and is divided by N! at the end with an integrality assertion.
    """
    n = _SIZES[ids[0]]
    uniq: list[tuple[int, int]] = []  # (sid, multiplicity)
    for sid in ids:
        for k, (other, mult) in enumerate(uniq):
            if other == sid:
                uniq[k] = (other, mult + 1)
                break
        else:
            uniq.append((sid, 1))
    nfact = math.factorial(n)
    empty = _sid(())
    total = 0

    def descend(remaining: int, max_part: int, z: int, last: int, run: int,
                vecs: list[dict[int, int]]) -> None:
        nonlocal total
        if remaining == 0:
            term = nfact // z
            for (sid_, mult), vec in zip(uniq, vecs):
                chi = vec.get(empty, 0)
                if chi == 0:
                    return
                term *= chi**mult
            total += term
            return
        for length in range(min(max_part, remaining), 0, -1):
            new_vecs = []
            dead = False
            for vec in vecs:
                nv = _transfer(vec, length)
                if not nv:
                    dead = True
                    break
                new_vecs.append(nv)
            if dead:
                continue
            if length == last:
                nz = z * length * (run + 1)
                nrun = run + 1
            else:
                nz = z * length
                nrun = 1
            descend(remaining - length, length, nz, length, nrun, new_vecs)

    descend(n, n, 1, 0, 0, [{sid: 1} for sid, _ in uniq])
    if total % nfact != 0:
        raise AssertionError("class sum is not integral")
    value = total // nfact
    if value < 0:
        raise AssertionError(f"negative Kronecker value {value}")
    return value


def _contained_size_counts(shape: tuple[int, ...]) -> list[int]:
    """counts[s] = number of partitions of s contained in `shape` (pointwise)."""
    n = sum(shape)
    counts = [0] * (n + 1)
    rows = len(shape)

    def rec(i: int, cap: int, size: int) -> None:
        if i == rows:
            counts[size] += 1
            return
        top = min(cap, shape[i])
        for part in range(top, -1, -1):
            if part == 0:
                counts[size] += 1
                return
            rec(i + 1, part, size + part)

    rec(0, shape[0] if rows else 0, 0)
    return counts


def triple_state_estimate(lam: PartitionLike, mu: PartitionLike, nu: PartitionLike) -> int:
    """Upper estimate of coupled-recursion states (ordered triples, equal sizes)."""
    ca = _contained_size_counts(_as_shape(lam))
    cb = _contained_size_counts(_as_shape(mu))
    cc = _contained_size_counts(_as_shape(nu))
    top = min(len(ca), len(cb), len(cc))
    return sum(ca[s] * cb[s] * cc[s] for s in range(top))


def kronecker(lam: PartitionLike, mu: PartitionLike, nu: PartitionLike,
              method: str = "auto") -> int:
    """Kronecker coefficient of three partitions of the same N, exactly.

    Equal to the class sum over cycle types rho of
    chi_lam(rho) chi_mu(rho) chi_nu(rho) / z_rho, a nonnegative integer.
    method: 'auto' (cost-based), 'triple', or 'class'.
    """
    shapes = tuple(_as_shape(p) for p in (lam, mu, nu))
    sizes = {sum(s) for s in shapes}
    if len(sizes) != 1:
        raise ValueError(f"partitions must have equal sizes, got {sorted(sizes)}")
    if sizes == {0}:
        return 1
    ids = tuple(_sid(s) for s in shapes)
    if method == "triple":
        return _triple(*ids)
    if method == "class":
        return _classsum(ids)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    states = triple_state_estimate(*shapes)
    if states <= TRIPLE_STATE_LIMIT and states <= 60 * partition_count(next(iter(sizes))):
        return _triple(*ids)
    return _classsum(ids)


def kronecker_class_sum(lam: PartitionLike, mu: PartitionLike, nu: PartitionLike) -> int:
    """The class-sum route on its own (cross-check oracle for `kronecker`)."""
    return kronecker(lam, mu, nu, method="class")


def k_rect(m: int, delta: int) -> int:
    """Kronecker coefficient of three m x delta rectangles."""
    if m < 1 or delta < 0:
        raise ValueError("need m >= 1 and delta >= 0")
    rect = Partition.rectangle(m, delta)
    return kronecker(rect, rect, rect)


# ----------------------------------------------------------------------------
# Degree monoid scan
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MonoidReport:
    """Positivity scan of the rectangular Kronecker function for one m.

    values[delta] is the computed coefficient, or None where positivity
    was inferred from additivity (delta = a + b with a, b already positive)
    instead of computed; zeros are always computed, never inferred.
    """

    m: int
    delta_max: int
    values: dict[int, Optional[int]]
    positive: tuple[int, ...]
    inferred: tuple[int, ...]
    gaps: tuple[int, ...]
    e_prime: Optional[int]
    gcd_positive: Optional[int]
    note: str = ""


# direct computation is considered cheap below these sizes
_CHEAP_CLASSES = 30_000
_CHEAP_TRIPLE_STATES = 400_000


def exponent_monoid(m: int, delta_max: int = 12, deadline=None) -> MonoidReport:
    """Scan delta = 0..delta_max for positivity of the rectangular coefficients.

    For m > 2 the positive set is the exponent monoid of a generic cubic
    tensor; m = 2 is reported with the caveat that the exponent monoid is
    the positive set halved (positivity occurs exactly in even degrees).
    Positivity at delta = a + b with a, b already positive may be marked by
    inference (coefficients are monotone under adding positive triples);
    vanishing is always established by direct computation.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    if delta_max < 0:
        raise ValueError("need delta_max >= 0")
    dl = as_deadline(deadline)
    values: dict[int, Optional[int]] = {0: 1}
    positive: list[int] = [0]
    inferred: list[int] = []
    gaps: list[int] = []
    pos_set: set[int] = set()
    for delta in range(1, delta_max + 1):
        dl.check()
        rect = Partition.rectangle(m, delta)
        states = triple_state_estimate(rect, rect, rect)
        cheap = states <= _CHEAP_TRIPLE_STATES or partition_count(m * delta) <= _CHEAP_CLASSES
        inferable = any(delta - a in pos_set for a in pos_set if 0 < a < delta)
        if not cheap and inferable:
            values[delta] = None
            inferred.append(delta)
            positive.append(delta)
            pos_set.add(delta)
            continue
        k = k_rect(m, delta)
        values[delta] = k
        if k > 0:
            positive.append(delta)
            pos_set.add(delta)
        else:
            gaps.append(delta)
    pos_nonzero = [d for d in positive if d > 0]
    e_prime = min(pos_nonzero) if pos_nonzero else None
    gcd_pos = math.gcd(*pos_nonzero) if pos_nonzero else None
    note = ""
    if m == 2:
        note = ("positivity occurs exactly in even degrees; the exponent monoid "
                "of the m = 2 generic tensor is this set divided by 2")
    elif m == 1:
        note = "m = 1 is degenerate (every degree carries an invariant)"
    return MonoidReport(
        m=m,
        delta_max=delta_max,
        values=values,
        positive=tuple(positive),
        inferred=tuple(inferred),
        gaps=tuple(gaps),
        e_prime=e_prime,
        gcd_positive=gcd_pos,
        note=note,
    )


# ----------------------------------------------------------------------------
# Subset-family upper bounds (odd degree)
# ----------------------------------------------------------------------------


def pleth_upper_bound(lam: PartitionLike, D: int, d: int, deadline=None) -> int:
    """Number of d-element sets of D-subsets of {1..lam_1} with column counts lam^t.

    Requires odd D and |lam| = D*d.  Each number i must lie in exactly
    (conjugate of lam)_i of the chosen subsets.  This count bounds from
    above the multiplicity of the shape in degree-d covariants of degree-D
    forms, and is computed by exhaustive search over subsets in
    lexicographic order with occurrence-count pruning.
    """
    lam = Partition.of(lam)
    if D < 1 or D % 2 == 0:
        raise ValueError("D must be odd")
    if d < 0:
        raise ValueError("need d >= 0")
    if lam.n != D * d:
        raise ValueError(f"|lam| = {lam.n} must equal D*d = {D * d}")
    dl = as_deadline(deadline)
    if d == 0:
        return 1  # the empty set, only possible when lam is empty
    width = lam.parts[0]
    target = list(lam.conjugate().parts)  # occurrences required per number
    if width < D:
        return 0
    universe = list(itertools.combinations(range(1, width + 1), D))
    nuniv = len(universe)
    counts = [0] * (width + 1)
    total = 0
    nodes = 0

    def choose(start: int, chosen: int) -> None:
        nonlocal total, nodes
        nodes += 1
        if nodes % 2048 == 0:
            dl.check()
        if chosen == d:
            if all(counts[i] == target[i - 1] for i in range(1, width + 1)):
                total += 1
            return
        if nuniv - start < d - chosen:
            return
        for u in range(start, nuniv):
            subset = universe[u]
            ok = True
            for i in subset:
                if counts[i] + 1 > target[i - 1]:
                    ok = False
                    break
            if not ok:
                continue
            for i in subset:
                counts[i] += 1
            choose(u + 1, chosen + 1)
            for i in subset:
                counts[i] -= 1

    choose(0, 0)
    return total


def sl_invariant_bound(D: int, m: int, d: int, deadline=None) -> int:
    """Upper bound for the invariant-space dimension in degree d, odd degree D.

    Counts d-element sets of D-subsets of {1..dD/m} in which every number
    occurs in exactly m subsets (the rectangle case of pleth_upper_bound).
    """
    if D < 1 or D % 2 == 0:
        raise ValueError("D must be odd")
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    if (d * D) % m != 0:
        raise ValueError(f"m = {m} must divide d*D = {d * D}")
    width = d * D // m
    return pleth_upper_bound(Partition.rectangle(m, width), D, d, deadline=deadline)
