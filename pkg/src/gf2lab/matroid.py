"""Circuits of the binary matroid M(X) and degenerate sum-tuples."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from gf2lab.errors import ContainmentError, NotSimpleError, ScaleError
from gf2lab.gf2core import rank
from gf2lab.pointset import PointSet

MAX_CIRCUIT_SIZE = 7
# leaf budget for DFS enumeration and tuple budget for S0 brute force
MAX_COMBINATIONS = 50_000_000
MAX_TUPLES = 1 << 28
_CHUNK = 1 << 20


def require_simple(X: PointSet) -> None:
    if not X.is_simple:
        raise NotSimpleError("point set contains 0; M(X) is not simple")


@dataclass(frozen=True)
class Circuit:
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)


def is_circuit(elements: Iterable[int]) -> bool:
    """True iff the XOR is 0 and no proper nonempty subset XORs to 0."""
    els = list(elements)
    if any(e == 0 for e in els):
        raise NotSimpleError("circuits of a simple matroid never contain 0")
    if len(set(els)) != len(els):
        raise ValueError("circuit elements must be distinct")
    if not els:
        return False
    total = 0
    for e in els:
        total ^= e
    if total:
        return False
    k = len(els)
    if k > 8:
        # a zero-sum set is minimal iff its only linear relation is the all-ones one
        return rank(els) == k - 1
    sub = [0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        sub[mask] = sub[mask ^ low] ^ els[low.bit_length() - 1]
        if sub[mask] == 0 and mask != (1 << k) - 1:
            return False
    return True


def _check_k(k: int) -> None:
    if not 3 <= k <= MAX_CIRCUIT_SIZE:
        raise ScaleError(f"circuit size must lie in [3, {MAX_CIRCUIT_SIZE}], got {k}")


def _sorted_combos(pool_size: int, r: int) -> int:
    return math.comb(pool_size, r) if pool_size >= r else 0


def circuits_through(X: PointSet, x: int, k: int) -> list[Circuit]:
    """Every k-element circuit of M(X) containing x, each exactly once."""
    require_simple(X)
    _check_k(k)
    if x not in X:
        raise ContainmentError("x is not an element of X")
    pool = X.elements()
    pool = pool[pool != x]
    if _sorted_combos(len(pool), k - 2) > MAX_COMBINATIONS:
        raise ScaleError("circuit enumeration exceeds the combination budget")
    # k <= 5: distinct nonzero elements summing to 0 are automatically minimal,
    # since a zero-sum proper subset would leave a zero-sum complement of size <= 2
    need_check = k > 5
    out = []
    for tup in _circuit_tuples(pool, X.members, k - 1, x, need_check):
        out.append(Circuit(tuple(sorted((x, *tup)))))
    out.sort(key=lambda c: c.elements)
    return out


def _circuit_tuples(pool, member, size, x, need_check):
    """Sorted ``size``-subsets of pool (x excluded) summing to x.

    DFS over increasing indices with a running XOR; the final element is
    forced to x + sum(prefix) and must exceed its predecessor.
    """

    def rec(start, prefix, acc):
        left = size - len(prefix)
        if left == 2:
            cand = pool[start:]
            last = cand ^ (acc ^ x)
            ok = member[last] & (last > cand) & (last != x)
            for c, l in zip(cand[ok].tolist(), last[ok].tolist()):
                tup = (*prefix, c, l)
                if not need_check or is_circuit((x, *tup)):
                    yield tup
            return
        for i in range(start, len(pool) - left + 1):
            v = int(pool[i])
            prefix.append(v)
            yield from rec(i + 1, prefix, acc ^ v)
            prefix.pop()

    yield from rec(0, [], 0)


@dataclass
class CircuitCensus:
    k: int
    per_element: dict[int, int] = field(default_factory=dict)
    total_circuits: int = 0

    @property
    def max_count(self) -> int:
        return max(self.per_element.values(), default=0)

    @property
    def max_witness(self) -> int | None:
        best = self.max_count
        hits = [e for e, c in self.per_element.items() if c == best]
        return min(hits) if hits else None


def census(X: PointSet, k: int) -> CircuitCensus:
    """Per-element counts of k-circuits.

    Each circuit is enumerated once, anchored at its smallest element, then
    credited to all of its members.
    """
    require_simple(X)
    _check_k(k)
    els = X.elements()
    if _sorted_combos(len(els), k - 1) > MAX_COMBINATIONS:
        raise ScaleError("census exceeds the combination budget")
    counts = dict.fromkeys((int(e) for e in els), 0)
    total = 0
    need_check = k > 5
    for i, x in enumerate(els.tolist()):
        pool = els[i + 1:]
        for tup in _circuit_tuples(pool, X.members, k - 1, x, need_check):
            total += 1
            counts[x] += 1
            for e in tup:
                counts[e] += 1
    return CircuitCensus(k, counts, total)


# -- degenerate tuples ------------------------------------------------------


def _degenerate_mask(cols: list[np.ndarray]) -> np.ndarray:
    """Rows whose tuple has a proper nonempty sub-tuple XOR-ing to 0."""
    k = len(cols)
    full = (1 << k) - 1
    sub = [None] * (1 << k)
    sub[0] = np.zeros_like(cols[0])
    bad = np.zeros(cols[0].shape, dtype=bool)
    for mask in range(1, full):
        low = mask & -mask
        sub[mask] = sub[mask ^ low] ^ cols[low.bit_length() - 1]
        bad |= sub[mask] == 0
    return bad


def _tuple_blocks(elements: np.ndarray, r: int):
    """Yield column lists covering elements^r in row-major order, chunked."""
    m = len(elements)
    if r == 0:
        yield []
        return
    # split on the leading coordinates until a block fits the chunk size
    lead = 0
    while lead < r and m ** (r - lead) > _CHUNK:
        lead += 1
    tail = r - lead
    if tail:
        grids = np.meshgrid(*([elements] * tail), indexing="ij")
        tail_cols = [g.ravel() for g in grids]
    else:
        tail_cols = []
    rows = len(tail_cols[0]) if tail_cols else 1
    for head in itertools.product(elements.tolist(), repeat=lead):
        cols = [np.full(rows, h, dtype=np.int64) for h in head] + tail_cols
        yield cols


def count_S0_bruteforce(A: PointSet, k: int, x: int) -> int:
    """|S0(A,k;x)|: k-tuples over A summing to x with a proper nonempty zero-sum sub-tuple.

    Enumerates the free first k-1 entries; the last entry is forced.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    els = A.elements()
    m = len(els)
    if m == 0 or k == 1:
        return 0
    if m ** (k - 1) > MAX_TUPLES:
        raise ScaleError(f"|A|^(k-1) = {m}^{k - 1} exceeds the brute-force budget")
    count = 0
    for cols in _tuple_blocks(els, k - 1):
        acc = np.full(len(cols[0]), x, dtype=np.int64)
        for c in cols:
            acc = acc ^ c
        ok = A.members[acc]
        if not ok.any():
            continue
        sel = [c[ok] for c in cols] + [acc[ok]]
        count += int(_degenerate_mask(sel).sum())
    return count


def count_S0_all(A: PointSet, k: int) -> np.ndarray:
    """|S0(A,k;x)| for every x at once, by enumerating all of A^k."""
    n = A.ambient_dim
    els = A.elements()
    m = len(els)
    out = np.zeros(1 << n, dtype=np.int64)
    if m == 0 or k == 1:
        return out
    if m ** k > MAX_TUPLES:
        raise ScaleError(f"|A|^k = {m}^{k} exceeds the brute-force budget")
    for cols in _tuple_blocks(els, k):
        acc = np.zeros(len(cols[0]), dtype=np.int64)
        for c in cols:
            acc = acc ^ c
        bad = _degenerate_mask(cols)
        out += np.bincount(acc[bad], minlength=1 << n)
    return out
