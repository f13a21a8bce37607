"""Exact linear algebra over GF(2) with vectors packed into Python ints.

Coordinate ``i`` of a vector is bit ``i``.  Text forms print the most
significant coordinate first, so ``"100"`` is the integer 4 in dimension 3.
Subspaces are kept in reduced row echelon form where the pivot of a row is
its highest set bit; rows are ordered by decreasing pivot.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from gf2lab.errors import (
    ContainmentError,
    DimensionMismatchError,
    InvalidCharacterError,
    ParseError,
    ScaleError,
)

MAX_DIM = 24
MAX_ENUM_DIM = 6


def dot(u: int, v: int) -> int:
    """Standard inner product <u, v> over GF(2)."""
    return (u & v).bit_count() & 1


def character_parity(gamma: int, n: int) -> np.ndarray:
    """Boolean table of <gamma, v> over all v in GF(2)^n."""
    v = np.arange(1 << n, dtype=np.int64) & gamma
    out = np.zeros(1 << n, dtype=bool)
    while v.any():
        out ^= (v & 1).astype(bool)
        v >>= 1
    return out


def to_bits(v: int, n: int) -> str:
    if n == 0:
        return ""
    return format(v, f"0{n}b")


def parse_bits(s: str, n: int | None = None) -> int:
    s = s.strip()
    if n is not None and len(s) != n:
        raise ParseError(f"expected {n} bits, got {len(s)} in {s!r}")
    if s and set(s) - {"0", "1"}:
        raise ParseError(f"not a 0/1 string: {s!r}")
    return int(s, 2) if s else 0


def check_dim(n: int) -> None:
    if not 0 <= n <= MAX_DIM:
        raise ScaleError(f"ambient dimension {n} outside [0, {MAX_DIM}]")


def _reduce(v: int, rows: Sequence[int]) -> int:
    for r in rows:
        if (v >> (r.bit_length() - 1)) & 1:
            v ^= r
    return v


def _rref(vectors: Iterable[int]) -> list[int]:
    rows: list[int] = []
    for v in vectors:
        v = _reduce(v, rows)
        if not v:
            continue
        p = v.bit_length() - 1
        rows = [r ^ v if (r >> p) & 1 else r for r in rows]
        rows.append(v)
        rows.sort(reverse=True)
    return rows


def rank(vectors: Iterable[int]) -> int:
    return len(_rref(vectors))


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^n held by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(b.bit_length() - 1 for b in self.basis)

    def __len__(self) -> int:
        return 1 << self.dim

    def __contains__(self, v: int) -> bool:
        return contains(self, v)

    def elements(self) -> np.ndarray:
        """All elements, indexed by their canonical coordinates."""
        tab = np.zeros(1, dtype=np.int64)
        for b in reversed(self.basis):
            tab = np.concatenate([tab, tab ^ b])
        return tab

    def to_text(self) -> str:
        return "".join(to_bits(b, self.ambient_dim) + "\n" for b in self.basis) + "\n"

    def __str__(self) -> str:
        body = ", ".join(to_bits(b, self.ambient_dim) for b in self.basis)
        return f"span{{{body}}} in GF(2)^{self.ambient_dim}"


def rref_span(vectors: Iterable[int], n: int) -> Subspace:
    check_dim(n)
    vs = list(vectors)
    for v in vs:
        if v < 0 or v >> n:
            raise DimensionMismatchError(f"vector {v} does not live in GF(2)^{n}")
    return Subspace(n, tuple(_rref(vs)))


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(1 << i for i in reversed(range(n))))


def zero_space(n: int) -> Subspace:
    return Subspace(n, ())


def contains(H: Subspace, v: int) -> bool:
    if v < 0 or v >> H.ambient_dim:
        raise DimensionMismatchError(f"vector {v} does not live in GF(2)^{H.ambient_dim}")
    return _reduce(v, H.basis) == 0


def hyperplane_of(gamma: int, n: int) -> Subspace:
    """The kernel {v : <gamma, v> = 0} of a nonzero character."""
    if gamma == 0:
        raise InvalidCharacterError("the zero character has no hyperplane")
    if gamma < 0 or gamma >> n:
        raise DimensionMismatchError(f"character {gamma} does not live in GF(2)^{n}")
    p = gamma.bit_length() - 1
    gens = [(1 << j) | (((gamma >> j) & 1) << p) for j in range(n) if j != p]
    return rref_span(gens, n)


def annihilator(gammas: Iterable[int], n: int) -> Subspace:
    """Common kernel of a family of characters."""
    rows = _rref(gammas)
    pivots = {r.bit_length() - 1: r for r in rows}
    gens = []
    for j in range(n):
        if j in pivots:
            continue
        v = 1 << j
        for p, r in pivots.items():
            if (r >> j) & 1:
                v |= 1 << p
        gens.append(v)
    return rref_span(gens, n)


def intersect_hyperplane(H: Subspace, gamma: int) -> Subspace:
    """H intersected with the kernel of ``gamma``."""
    odd = [b for b in H.basis if dot(b, gamma)]
    if not odd:
        return H
    pivot = odd[0]
    gens = [b for b in H.basis if not dot(b, gamma)] + [b ^ pivot for b in odd[1:]]
    return rref_span(gens, H.ambient_dim)


def gaussian_binomial(n: int, d: int) -> int:
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def enumerate_subspaces(n: int, d: int) -> Iterator[Subspace]:
    """Yield every d-dimensional subspace of GF(2)^n exactly once.

    Walks RREF shapes directly: a choice of pivot columns plus a fill of the
    free positions below each pivot.
    """
    if n > MAX_ENUM_DIM:
        raise ScaleError(f"exhaustive subspace enumeration capped at n <= {MAX_ENUM_DIM}")
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    for piv in itertools.combinations(range(n - 1, -1, -1), d):
        pset = set(piv)
        free = [[j for j in range(p) if j not in pset] for p in piv]
        nfree = [len(f) for f in free]
        for fill in itertools.product(*(range(1 << k) for k in nfree)):
            rows = []
            for p, f, bits in zip(piv, free, fill):
                row = 1 << p
                for t, j in enumerate(f):
                    if (bits >> t) & 1:
                        row |= 1 << j
                rows.append(row)
            yield Subspace(n, tuple(rows))


def coset_reps(H: Subspace) -> list[int]:
    """Minimal representative of each coset of H, in increasing order.

    The minimum of a coset is the unique element vanishing on every pivot
    column, so the representatives are exactly the vectors supported on the
    non-pivot coordinates.
    """
    pset = set(H.pivots)
    free = [j for j in range(H.ambient_dim) if j not in pset]
    reps = np.zeros(1, dtype=np.int64)
    for j in free:
        reps = np.concatenate([reps, reps | (1 << j)])
    return sorted(int(r) for r in reps)


def coset_rep_array(H: Subspace) -> np.ndarray:
    return np.array(coset_reps(H), dtype=np.int64)


class Coordinates:
    """A linear isomorphism between a subspace and GF(2)^d.

    ``basis[i]`` maps to the standard vector with bit ``d - 1 - i`` set, so the
    first basis vector is the leading character of the coordinate string.
    """

    def __init__(self, basis: Sequence[int], n: int):
        self.ambient_dim = n
        self.basis = tuple(basis)
        d = len(self.basis)
        if rank(self.basis) != d:
            raise ValueError("coordinate basis is linearly dependent")
        self.dim = d
        # RREF rows tagged with the coordinate vector they stand for
        rows: list[tuple[int, int]] = []
        for i, b in enumerate(self.basis):
            tag = 1 << (d - 1 - i)
            for r, t in rows:
                if (b >> (r.bit_length() - 1)) & 1:
                    b ^= r
                    tag ^= t
            p = b.bit_length() - 1
            rows = [(r ^ b, t ^ tag) if (r >> p) & 1 else (r, t) for r, t in rows]
            rows.append((b, tag))
            rows.sort(reverse=True)
        self._rows = rows

    def forward(self, v: int) -> int:
        c = 0
        for r, t in self._rows:
            if (v >> (r.bit_length() - 1)) & 1:
                v ^= r
                c ^= t
        if v:
            raise ContainmentError("vector is not in the subspace")
        return c

    def backward(self, c: int) -> int:
        if c < 0 or c >> self.dim:
            raise DimensionMismatchError(f"coordinate vector {c} outside GF(2)^{self.dim}")
        v = 0
        for i, b in enumerate(self.basis):
            if (c >> (self.dim - 1 - i)) & 1:
                v ^= b
        return v

    def lift_character(self, gamma: int) -> int:
        """Extend a character of the coordinate space to one of GF(2)^n.

        The result agrees with ``gamma`` on the subspace (through ``forward``)
        and vanishes on the standard vectors of the non-pivot columns.
        """
        out = 0
        for r, t in self._rows:
            if dot(t, gamma):
                out |= 1 << (r.bit_length() - 1)
        return out


def section_coordinates(H: Subspace) -> Coordinates:
    return Coordinates(H.basis, H.ambient_dim)


def load_subspace(text: str, n: int | None = None) -> Subspace:
    """Parse the basis text form: one 0/1 row per line, blank line ends it.

    An optional ``n=<dim>`` header line is accepted so that the zero subspace
    can carry its ambient dimension.
    """
    vecs = []
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            continue
        if line.startswith("n="):
            hdr = int(line[2:])
            if n is not None and hdr != n:
                raise DimensionMismatchError(f"subspace header n={hdr}, expected {n}")
            n = hdr
            continue
        if not line:
            if vecs or n is not None:
                break
            continue
        if n is None:
            n = len(line)
        vecs.append(parse_bits(line, n))
    if n is None:
        raise ParseError("cannot infer ambient dimension of an empty subspace file")
    return rref_span(vecs, n)
