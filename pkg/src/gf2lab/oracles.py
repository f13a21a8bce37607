"""Slow, transform-free reference computations used to cross-check the fast paths."""

from __future__ import annotations

import itertools

import numpy as np

from gf2lab.gf2core import character_parity, hyperplane_of
from gf2lab.matroid import is_circuit
from gf2lab.pointset import PointSet

# below this many tuples the count is a literal scan over A^(k-1)
LITERAL_LIMIT = 1 << 20


def sum_tuples(A: PointSet, k: int) -> np.ndarray:
    """N_k(x) for every x without any Fourier transform.

    Small cases list every (k-1)-tuple of A explicitly and histogram its sum;
    larger ones grow tuples one coordinate at a time, grouped by running sum.
    Either way N_k(x) = sum over a in A of #{(k-1)-tuples summing to x + a}.
    """
    n = A.ambient_dim
    els = A.elements()
    idx = np.arange(1 << n, dtype=np.int64)
    dtype = np.int64 if n * k <= 62 else object
    if k == 1:
        return A.members.astype(dtype)
    if len(els) ** (k - 1) <= LITERAL_LIMIT:
        grids = np.meshgrid(*([els] * (k - 1)), indexing="ij")
        acc = np.zeros(grids[0].size, dtype=np.int64)
        for g in grids:
            acc ^= g.ravel()
        prefix = np.bincount(acc, minlength=1 << n).astype(dtype)
    else:
        prefix = np.zeros(1 << n, dtype=dtype)
        prefix[0] = 1
        for _ in range(k - 1):
            nxt = np.zeros(1 << n, dtype=dtype)
            for a in els.tolist():
                nxt += prefix[idx ^ a]
            prefix = nxt
    out = np.zeros(1 << n, dtype=dtype)
    for a in els.tolist():
        out += prefix[idx ^ a]
    return out


def zero_triples(A1: PointSet, A2: PointSet, A3: PointSet) -> int:
    e1, e2 = A1.elements(), A2.elements()
    if not len(e1) or not len(e2):
        return 0
    return int(A3.members[e1[:, None] ^ e2[None, :]].sum())


def correlation(X: PointSet, gamma: int) -> int:
    """|X cap H| - |X minus H| counted directly over the hyperplane H of gamma."""
    if gamma == 0:
        return X.cardinality
    H = hyperplane_of(gamma, X.ambient_dim)
    inside = int(X.members[H.elements()].sum())
    return inside - (X.cardinality - inside)


def max_correlation(X: PointSet) -> int:
    return max((abs(correlation(X, g)) for g in range(1, 1 << X.ambient_dim)), default=0)


def parity_correlation(X: PointSet, gamma: int) -> int:
    odd = character_parity(gamma, X.ambient_dim)
    return int(X.members[~odd].sum()) - int(X.members[odd].sum())


def triangle_free(X: PointSet) -> bool:
    els = X.elements()
    if len(els) < 2:
        return True
    sums = els[:, None] ^ els[None, :]
    hit = X.members[sums]
    np.fill_diagonal(hit, False)
    return not hit.any()


def circuits_through(X: PointSet, x: int, k: int) -> int:
    rest = [e for e in X if e != x]
    return sum(1 for c in itertools.combinations(rest, k - 1) if is_circuit((x, *c)))


def degenerate_count(A: PointSet, k: int, x: int) -> int:
    """|S0(A,k;x)| by a literal scan of A^k."""
    els = A.elements().tolist()
    count = 0
    for t in itertools.product(els, repeat=k):
        s = 0
        for e in t:
            s ^= e
        if s != x:
            continue
        for mask in range(1, (1 << k) - 1):
            acc = 0
            for i in range(k):
                if (mask >> i) & 1:
                    acc ^= t[i]
            if acc == 0:
                count += 1
                break
    return count
