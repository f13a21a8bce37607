"""Exact Fourier analysis on GF(2)^n via the integer Walsh-Hadamard transform.

The character indexed by gamma is x -> (-1)^<gamma, x>.  For a point set X
the correlation c_X(gamma) = sum_{x in X} (-1)^<gamma, x> equals
|X cap H| - |X minus H| where H is the hyperplane killed by gamma, so the
largest nontrivial |c_X| measures how far X is from being uniform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from gf2lab.errors import DimensionMismatchError, ScaleError
from gf2lab.pointset import PointSet

# int64 is safe while every intermediate stays below 2^62
_INT64_BITS = 62
# beyond this many bits per entry we refuse rather than crawl through object arrays
MAX_BITS = 2048


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis, in place.

    Works for int64 and object (Python int) arrays.  Applying it twice
    multiplies every entry by the transform length.
    """
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("transform length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        x = v[..., 0, :].copy()
        y = v[..., 1, :]
        v[..., 0, :] += y
        v[..., 1, :] = x - y
        h *= 2
    return a


def _exact_div(a: np.ndarray, shift: int) -> np.ndarray:
    if a.dtype == object:
        q = np.array([int(t) >> shift for t in a], dtype=object)
        assert all(int(t) == int(s) << shift for t, s in zip(a, q)), "inexact division"
        return q
    assert not (a & ((1 << shift) - 1)).any(), "inexact division"
    return a >> shift


@dataclass(frozen=True)
class Spectrum:
    ambient_dim: int
    table: np.ndarray

    def __getitem__(self, gamma: int) -> int:
        return int(self.table[gamma])


@dataclass(frozen=True)
class UniformityReport:
    """U = max over nonzero gamma of |c_X(gamma)|, witnessed by the smallest such gamma."""

    ambient_dim: int
    max_abs_correlation: int | None
    witness: int | None
    epsilon_star: Fraction | None

    @property
    def vacuous(self) -> bool:
        return self.max_abs_correlation is None

    def is_uniform(self, eps) -> bool:
        if self.vacuous:
            return True
        eps = Fraction(eps)
        # U / 2^n <= p / q, cross-multiplied
        return self.max_abs_correlation * eps.denominator <= eps.numerator << self.ambient_dim


def correlations(X: PointSet) -> Spectrum:
    table = X.members.astype(np.int64)
    fwht(table)
    table.flags.writeable = False
    return Spectrum(X.ambient_dim, table)


def uniformity_from_table(table: np.ndarray, n: int) -> UniformityReport:
    if n == 0:
        return UniformityReport(0, None, None, None)
    mags = np.abs(table[1:])
    g = int(np.argmax(mags)) + 1
    U = int(mags[g - 1])
    return UniformityReport(n, U, g, Fraction(U, 1 << n))


def uniformity(X: PointSet) -> UniformityReport:
    return uniformity_from_table(correlations(X).table, X.ambient_dim)


def batch_uniformity(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Max nontrivial |correlation| and its smallest witness for each row of a 0/1 matrix."""
    t = rows.astype(np.int64)
    fwht(t)
    if t.shape[1] == 1:
        z = np.zeros(t.shape[0], dtype=np.int64)
        return z, z
    mags = np.abs(t[:, 1:])
    w = np.argmax(mags, axis=1)
    return mags[np.arange(len(w)), w], w + 1


def count_sum_tuples(A: PointSet, k: int) -> np.ndarray:
    """N_k(x) = number of k-tuples in A^k summing to x, for every x.

    Raises the spectrum to the k-th power pointwise and transforms back.
    Entries are int64 when they provably fit, Python ints otherwise.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = A.ambient_dim
    bits = n * (k + 1)
    if bits > MAX_BITS:
        raise ScaleError(f"2^(n(k+1)) = 2^{bits} exceeds the exact-count budget")
    spectrum = A.members.astype(np.int64)
    fwht(spectrum)
    if bits <= _INT64_BITS:
        powered = spectrum**k
    else:
        powered = np.array([int(c) ** k for c in spectrum], dtype=object)
    fwht(powered)
    return _exact_div(powered, n)


def count_zero_triples(A1: PointSet, A2: PointSet, A3: PointSet) -> int:
    """Number of (a1, a2, a3) in A1 x A2 x A3 with a1 + a2 + a3 = 0."""
    dims = {A1.ambient_dim, A2.ambient_dim, A3.ambient_dim}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed ambient dimensions {sorted(dims)}")
    n = dims.pop()
    cs = [correlations(A).table for A in (A1, A2, A3)]
    if 4 * n <= _INT64_BITS:
        total = int((cs[0] * cs[1] * cs[2]).sum())
    else:
        total = sum(int(a) * int(b) * int(c) for a, b, c in zip(*cs))
    assert total % (1 << n) == 0, "inexact division"
    return total >> n
