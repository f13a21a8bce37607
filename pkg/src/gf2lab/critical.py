"""Critical number: the least codimension of a subspace avoiding X."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gf2lab.errors import NotSimpleError, ScaleError
from gf2lab.gf2core import Subspace, annihilator, character_parity, enumerate_subspaces, full_space, rref_span
from gf2lab.pointset import PointSet
from gf2lab.spectral import fwht

MAX_EXACT_DIM = 14


@dataclass(frozen=True)
class CriticalResult:
    value: int
    witness: Subspace
    method: str
    nodes_expanded: int = 0


def _require_simple(X: PointSet) -> None:
    if not X.is_simple:
        raise NotSimpleError("critical number is undefined when 0 is in X")


def greedy_cover(X: PointSet) -> CriticalResult:
    """Cover X by cocycles greedily; return the common kernel as witness.

    Each round picks the character gamma hitting the most remaining points
    (<gamma, x> = 1), smallest gamma on ties.  The count of hits is
    (|R| - c_R(gamma)) / 2, so the best gamma minimises the correlation.
    """
    _require_simple(X)
    n = X.ambient_dim
    remaining = X.members.copy()
    chosen: list[int] = []
    while remaining.any():
        c = remaining.astype(np.int64)
        fwht(c)
        gamma = int(np.argmin(c[1:])) + 1
        chosen.append(gamma)
        remaining &= ~character_parity(gamma, n)
    W = annihilator(chosen, n)
    return CriticalResult(len(chosen), W, "greedy", len(chosen))


class _Search:
    """Branch and bound for the largest subspace disjoint from X.

    Each subspace is visited once, through its greedy basis b1 < b2 < ...,
    where every new generator is the minimum of its coset modulo the current
    span.  All span elements added after b_j exceed b_j, which gives the bound.
    """

    def __init__(self, X: PointSet, best_dim: int, best_basis: list[int]):
        self.member = X.members
        self.size = 1 << X.ambient_dim
        self.best_dim = best_dim
        self.best_basis = best_basis
        self.nodes = 0
        # free[y]: y avoids X; suffix counts let the bound read "free vectors above b"
        free = ~X.members
        free[0] = False
        self.free_above = np.concatenate([np.cumsum(free[::-1])[::-1], [0]])
        self.free = free

    def run(self) -> None:
        span = np.zeros(1, dtype=np.int64)
        self._extend(span, [], 0)

    def _extend(self, span: np.ndarray, basis: list[int], last: int) -> None:
        self.nodes += 1
        d = len(basis)
        if d > self.best_dim:
            self.best_dim = d
            self.best_basis = list(basis)
        avail = int(self.free_above[last + 1]) - int((span > last).sum())
        # m more generators add 2^d (2^m - 1) new elements, all above `last`
        m_max = ((avail >> d) + 1).bit_length() - 1
        if d + m_max <= self.best_dim:
            return
        for v in range(last + 1, self.size):
            if not self.free[v]:
                continue
            shifted = span ^ v
            if shifted.min() != v or self.member[shifted].any():
                continue
            self._extend(np.concatenate([span, shifted]), basis + [v], v)
            avail = int(self.free_above[v + 1]) - int((span > v).sum())
            m_max = ((avail >> d) + 1).bit_length() - 1
            if d + m_max <= self.best_dim:
                return


def critical_number(X: PointSet) -> CriticalResult:
    _require_simple(X)
    n = X.ambient_dim
    if n > MAX_EXACT_DIM:
        raise ScaleError(f"exact critical number capped at n <= {MAX_EXACT_DIM}")
    if X.cardinality == 0:
        return CriticalResult(0, full_space(n), "exact", 1)
    seed = greedy_cover(X)
    search = _Search(X, seed.witness.dim, list(seed.witness.basis))
    search.run()
    W = rref_span(search.best_basis, n)
    return CriticalResult(n - W.dim, W, "exact", search.nodes)


def critical_number_oracle(X: PointSet) -> int:
    """Minimum codimension over every subspace of GF(2)^n (n <= 6)."""
    _require_simple(X)
    n = X.ambient_dim
    for d in range(n, -1, -1):
        for W in enumerate_subspaces(n, d):
            if not X.members[W.elements()].any():
                return n - d
    raise AssertionError("the zero subspace always avoids a simple set")
