"""Point sets X in GF(2)^n: the ground set of the binary matroid M(X)."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from gf2lab.errors import DimensionMismatchError, ParseError
from gf2lab.gf2core import (
    Coordinates,
    Subspace,
    character_parity,
    check_dim,
    parse_bits,
    section_coordinates,
    to_bits,
)

log = logging.getLogger(__name__)

GENERATOR_KINDS = ("projective", "affine-layer", "random-density", "random-triangle-free", "from-file")


class PointSet:
    """A subset of GF(2)^n stored as a boolean membership table of length 2^n."""

    __slots__ = ("ambient_dim", "members", "cardinality")

    def __init__(self, n: int, members: np.ndarray):
        check_dim(n)
        members = np.asarray(members, dtype=bool)
        if members.shape != (1 << n,):
            raise DimensionMismatchError(f"membership table must have length 2^{n}")
        members = members.copy()
        members.flags.writeable = False
        self.ambient_dim = n
        self.members = members
        self.cardinality = int(members.sum())

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> PointSet:
        check_dim(n)
        m = np.zeros(1 << n, dtype=bool)
        for e in elements:
            e = int(e)
            if e < 0 or e >> n:
                raise DimensionMismatchError(f"vector {e} does not live in GF(2)^{n}")
            m[e] = True
        return cls(n, m)

    @classmethod
    def empty(cls, n: int) -> PointSet:
        return cls(n, np.zeros(1 << n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> PointSet:
        return cls(n, np.ones(1 << n, dtype=bool))

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members).astype(np.int64)

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self):
        return (int(e) for e in self.elements())

    def __contains__(self, v: int) -> bool:
        return 0 <= v < len(self.members) and bool(self.members[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.members.tobytes()))

    def __repr__(self) -> str:
        n = self.ambient_dim
        if self.cardinality <= 8:
            body = ", ".join(to_bits(e, n) for e in self)
            return f"PointSet(n={n}, {{{body}}})"
        return f"PointSet(n={n}, |X|={self.cardinality})"

    @property
    def is_simple(self) -> bool:
        return not self.members[0]


def _same_dim(*sets: PointSet) -> int:
    dims = {s.ambient_dim for s in sets}
    if len(dims) != 1:
        raise DimensionMismatchError(f"mixed ambient dimensions {sorted(dims)}")
    return dims.pop()


def density(X: PointSet) -> Fraction:
    return Fraction(X.cardinality, 1 << X.ambient_dim)


def translate(X: PointSet, v: int) -> PointSet:
    n = X.ambient_dim
    if v < 0 or v >> n:
        raise DimensionMismatchError(f"vector {v} does not live in GF(2)^{n}")
    idx = np.arange(1 << n, dtype=np.int64) ^ v
    return PointSet(n, X.members[idx])


def intersect(X: PointSet, Y: PointSet) -> PointSet:
    _same_dim(X, Y)
    return PointSet(X.ambient_dim, X.members & Y.members)


@dataclass(frozen=True)
class SectionResult:
    """H_v(X) = {h in H : h + v in X}, expressed in the coordinates of H."""

    subspace: Subspace
    anchor: int
    points: PointSet
    coords: Coordinates


def section(X: PointSet, H: Subspace, v: int) -> SectionResult:
    if H.ambient_dim != X.ambient_dim:
        raise DimensionMismatchError("subspace and point set live in different spaces")
    if v < 0 or v >> X.ambient_dim:
        raise DimensionMismatchError(f"anchor {v} does not live in GF(2)^{X.ambient_dim}")
    pts = X.members[H.elements() ^ v]
    return SectionResult(H, v, PointSet(H.dim, pts), section_coordinates(H))


def section_table(X: PointSet, H: Subspace, anchors: np.ndarray) -> np.ndarray:
    """Boolean matrix whose row i is the membership table of H_{anchors[i]}(X)."""
    return X.members[np.asarray(anchors, dtype=np.int64)[:, None] ^ H.elements()[None, :]]


# -- generators -------------------------------------------------------------


def _parse_fraction(p) -> Fraction:
    return p if isinstance(p, Fraction) else Fraction(p)


def generate(kind: str, n: int, params: dict | None = None, seed: int = 0) -> PointSet:
    """Build a point set deterministically from ``(kind, n, params, seed)``.

    Randomised kinds draw from numpy's PCG64 generator seeded with ``seed``.
    """
    params = dict(params or {})
    check_dim(n)
    size = 1 << n
    if kind == "projective":
        m = np.ones(size, dtype=bool)
        m[0] = False
        return PointSet(n, m)
    if kind == "affine-layer":
        gamma = int(params.get("gamma", 1 << (n - 1) if n else 0))
        if gamma == 0 or gamma >> n:
            raise ValueError(f"affine layer needs a nonzero character in GF(2)^{n}")
        return PointSet(n, character_parity(gamma, n))
    if kind == "random-density":
        p = _parse_fraction(params.get("p", Fraction(1, 2)))
        if not 0 <= p <= 1:
            raise ValueError(f"density {p} outside [0, 1]")
        rng = np.random.Generator(np.random.PCG64(seed))
        draws = rng.integers(0, p.denominator, size=size)
        m = draws < p.numerator
        m[0] = False
        return PointSet(n, m)
    if kind == "random-triangle-free":
        rng = np.random.Generator(np.random.PCG64(seed))
        limit = params.get("max_points")
        order = rng.permutation(np.arange(1, size, dtype=np.int64))
        member = np.zeros(size, dtype=bool)
        # blocked[y] is set once y = a + b for some a, b already in X
        blocked = np.zeros(size, dtype=bool)
        blocked[0] = True
        chosen: list[int] = []
        for x in order:
            x = int(x)
            if blocked[x]:
                continue
            if limit is not None and len(chosen) >= int(limit):
                break
            if chosen:
                blocked[np.array(chosen, dtype=np.int64) ^ x] = True
            member[x] = True
            chosen.append(x)
        return PointSet(n, member)
    if kind == "from-file":
        X = load(params["path"])
        if X.ambient_dim != n:
            raise DimensionMismatchError(f"file has n={X.ambient_dim}, requested n={n}")
        return X
    raise ValueError(f"unknown generator kind {kind!r}; choose from {', '.join(GENERATOR_KINDS)}")


# -- .gf2set files ----------------------------------------------------------


def parse(text: str) -> PointSet:
    n = None
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise ParseError(f"line {lineno}: expected header 'n=<dim>'")
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            check_dim(n)
            continue
        try:
            v = parse_bits(line, n)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if v in seen:
            raise ParseError(f"line {lineno}: duplicate vector {line}")
        seen.add(v)
    if n is None:
        raise ParseError("missing header 'n=<dim>'")
    X = PointSet.from_elements(n, seen)
    if not X.is_simple:
        warnings.warn("point set contains the zero vector; M(X) is not simple", stacklevel=2)
    return X


def dumps(X: PointSet) -> str:
    n = X.ambient_dim
    return f"n={n}\n" + "".join(to_bits(e, n) + "\n" for e in X)


def load(path) -> PointSet:
    with open(path) as fh:
        return parse(fh.read())


def save(X: PointSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(X))
