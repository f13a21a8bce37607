"""Regular subspaces: an exact checker and a refinement search.

H is eps-regular for X when, for all but eps * 2^n anchors v, the section
H_v(X) is eps-uniform inside H.  Sections along one coset are translates of
each other, so one representative per coset suffices and each bad coset
contributes |H| bad anchors.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from gf2lab.errors import DimensionMismatchError
from gf2lab.gf2core import Subspace, coset_rep_array, full_space, intersect_hyperplane, section_coordinates
from gf2lab.pointset import PointSet, section_table
from gf2lab.spectral import batch_uniformity


@dataclass(frozen=True)
class BadCoset:
    rep: int
    witness: int  # character of H, in H-coordinates
    correlation: int


@dataclass(frozen=True)
class RegularityCert:
    subspace: Subspace
    epsilon: Fraction
    regular: bool
    bad_cosets: tuple[BadCoset, ...]
    bad_mass: int


@dataclass(frozen=True)
class Tower:
    """A tower of 2's of the given height; only ever handled symbolically."""

    height: int

    def __str__(self) -> str:
        return f"W({self.height})"


def tower_cap(eps: Fraction) -> Tower:
    eps = Fraction(eps)
    return Tower(math.ceil(1 / eps**3))


@dataclass
class RefinementStep:
    character: int
    codim: int
    bad_mass_before: int


@dataclass
class RefinementTrace:
    steps: list[RefinementStep] = field(default_factory=list)
    final: RegularityCert | None = None

    @property
    def codim(self) -> int:
        return self.final.subspace.codim

    @property
    def theoretical_cap(self) -> Tower:
        return tower_cap(self.final.epsilon)


def _as_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return eps


def is_regular(X: PointSet, H: Subspace, eps) -> RegularityCert:
    eps = _as_eps(eps)
    if H.ambient_dim != X.ambient_dim:
        raise DimensionMismatchError("subspace and point set live in different spaces")
    n, d = X.ambient_dim, H.dim
    reps = coset_rep_array(H)
    bad: list[BadCoset] = []
    if d > 0:
        U, wit = batch_uniformity(section_table(X, H, reps))
        # section at rep is bad iff U / 2^d > eps
        bad_rows = U * eps.denominator > eps.numerator << d
        for i in bad_rows.nonzero()[0]:
            bad.append(BadCoset(int(reps[i]), int(wit[i]), int(U[i])))
    bad_mass = len(bad) << d
    regular = bad_mass * eps.denominator <= eps.numerator << n
    return RegularityCert(H, eps, bool(regular), tuple(bad), bad_mass)


def find_regular_subspace(X: PointSet, eps) -> RefinementTrace:
    """Shrink H from the whole space until the checker certifies it.

    Every bad coset offers the character that breaks its uniformity; the most
    common one (lifted to GF(2)^n) cuts H down by one dimension.
    """
    eps = _as_eps(eps)
    H = full_space(X.ambient_dim)
    trace = RefinementTrace()
    while True:
        cert = is_regular(X, H, eps)
        if cert.regular:
            trace.final = cert
            return trace
        coords = section_coordinates(H)
        votes = Counter(coords.lift_character(b.witness) for b in cert.bad_cosets)
        top = max(votes.values())
        gamma = min(g for g, c in votes.items() if c == top)
        H = intersect_hyperplane(H, gamma)
        trace.steps.append(RefinementStep(gamma, H.codim, cert.bad_mass))
