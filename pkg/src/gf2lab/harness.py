"""Executable checks for the counting lemmas and the two structure procedures.

Every inequality is cross-multiplied into exact integers before comparison,
and reports keep both sides so a reader can re-derive the verdict.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from gf2lab.errors import CounterexampleError, InfeasibleError, NotSimpleError
from gf2lab.gf2core import Subspace, coset_rep_array, section_coordinates, to_bits
from gf2lab.matroid import MAX_COMBINATIONS, circuits_through, count_S0_bruteforce, is_circuit
from gf2lab.pointset import PointSet, density, section, section_table
from gf2lab.regularity import Tower, find_regular_subspace, tower_cap
from gf2lab.spectral import batch_uniformity, count_sum_tuples, count_zero_triples, uniformity

GRID_DEPTH = 64


@dataclass
class Inequality:
    label: str
    lhs: int
    relation: str
    rhs: int

    @property
    def holds(self) -> bool:
        return {">=": self.lhs >= self.rhs, "<=": self.lhs <= self.rhs,
                "==": self.lhs == self.rhs, ">": self.lhs > self.rhs}[self.relation]

    def to_dict(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "relation": self.relation,
                "rhs": str(self.rhs), "holds": self.holds}


@dataclass
class VerifierReport:
    statement: str
    instance: dict[str, Any]
    checks: list[Inequality] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self, timestamp: bool = True) -> dict:
        out = {
            "statement": self.statement,
            "instance": self.instance,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "details": self.details,
        }
        if timestamp:
            out["runtime"] = round(self.runtime, 6)
        return out


class _timed:
    def __init__(self, report: VerifierReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.runtime = time.perf_counter() - self.t0
        return False


# -- constants ---------------------------------------------------------------


def grid_select(pred, depth: int = GRID_DEPTH) -> Fraction:
    """Largest 2^-j (1 <= j <= depth) satisfying ``pred``."""
    for j in range(1, depth + 1):
        t = Fraction(1, 1 << j)
        if pred(t):
            return t
    raise InfeasibleError(f"no value 2^-j with j <= {depth} satisfies the constraint")


def exact_log2(q: Fraction) -> int | None:
    """log2(q) when q is an integral power of two, else None."""
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    if num == 1 and den & (den - 1) == 0:
        return -(den.bit_length() - 1)
    if den == 1 and num > 0 and num & (num - 1) == 0:
        return num.bit_length() - 1
    return None


@dataclass(frozen=True)
class ConstantsLedger:
    """Constants of the circuit-count dichotomy as functions of the tower height s0.

    r0 = s0 + r0_offset, c = max(r0, s0) = r0, and
    log2(beta) = beta_s0_coeff * s0 + log2(beta_tail) with
    beta_tail = (alpha0^(k-1) - eps^(k-3) - 2^(k-1-r0_offset)) / (k-1)!.
    """

    alpha: Fraction
    k: int
    epsilon: Fraction
    alpha0: Fraction
    s0: Tower
    r0_offset: int
    slack: Fraction  # alpha0^(k-1) - eps^(k-3)
    inner: Fraction  # slack - 2^(k-1-r0_offset)
    factorial: int

    @property
    def beta_s0_coeff(self) -> int:
        return 2 - self.k

    @property
    def beta_tail(self) -> Fraction:
        return self.inner / self.factorial

    def log2_beta_text(self) -> str:
        parts = [f"{self.beta_s0_coeff}*s0", f"- log2({self.factorial})"]
        e = exact_log2(self.inner)
        if e is None:
            parts.append(f"+ log2({self.inner})")
        elif e:
            parts.append(f"- {-e}" if e < 0 else f"+ {e}")
        return " ".join(parts)

    def beta(self, s: int) -> Fraction:
        """beta with a concrete integer substituted for s0."""
        return Fraction(1, 1 << ((self.k - 2) * s)) * self.beta_tail

    def r0_inequality(self, s: int) -> Fraction:
        """alpha0^(k-1) - eps^(k-3) - 2^(k-1+s-r0(s)), which must be positive."""
        r0 = s + self.r0_offset
        return self.slack - Fraction(2) ** (self.k - 1 + s - r0)

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha), "k": self.k, "epsilon": str(self.epsilon),
            "alpha0": str(self.alpha0), "s0": str(self.s0), "s0_tower_height": self.s0.height,
            "r0": f"s0 + {self.r0_offset}", "c": f"s0 + {self.r0_offset}",
            "log2_beta": self.log2_beta_text(),
            "log2_beta_s0_coeff": self.beta_s0_coeff,
            "log2_beta_constant_arg": str(self.beta_tail),
        }


def theorem_constants(alpha, k: int) -> ConstantsLedger:
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be an odd integer >= 5")
    eps = grid_select(lambda e: (alpha - e) > 0 and (alpha - e) ** (k - 1) > e ** (k - 3))
    alpha0 = alpha - eps
    slack = alpha0 ** (k - 1) - eps ** (k - 3)
    # least t with 2^(k-1-t) < slack; slack < 1 forces t >= k-1
    t = k - 1
    while Fraction(2) ** (k - 1 - t) >= slack:
        t += 1
    inner = slack - Fraction(2) ** (k - 1 - t)
    return ConstantsLedger(alpha, k, eps, alpha0, tower_cap(eps), t, slack, inner, math.factorial(k - 1))


# -- counting lemmas ---------------------------------------------------------


def _set_desc(A: PointSet, **extra) -> dict:
    return {"n": A.ambient_dim, "size": A.cardinality, **extra}


def verify_sum_bound(A: PointSet, k: int, instance: dict | None = None) -> VerifierReport:
    """2^n N_k(x) >= |A|^k - U^(k-2) 2^(2n) for every x, with U the measured uniformity."""
    if k < 3:
        raise ValueError("k must be at least 3")
    n = A.ambient_dim
    rep = VerifierReport("lemma22", instance or _set_desc(A, k=k))
    with _timed(rep):
        U = uniformity(A).max_abs_correlation or 0
        N = count_sum_tuples(A, k)
        rhs = A.cardinality ** k - U ** (k - 2) * (1 << (2 * n))
        lhs = [int(v) << n for v in N]
        worst = min(range(len(lhs)), key=lambda i: (lhs[i], i))
        violations = sum(1 for v in lhs if v < rhs)
        rep.checks.append(Inequality(f"2^n*N_k(x) at worst x={to_bits(worst, n)}", lhs[worst], ">=", rhs))
        rep.details = {"U": str(U), "worst_x": to_bits(worst, n), "violations": violations}
    return rep


def verify_degenerate_bound(A: PointSet, k: int, x: int | None = None,
                            instance: dict | None = None) -> VerifierReport:
    """|S0(A,k;x)| <= 2^k |A|^(k-2); with x=None every x is checked."""
    n = A.ambient_dim
    rep = VerifierReport("lemma23", instance or _set_desc(A, k=k))
    with _timed(rep):
        bound = (1 << k) * A.cardinality ** max(k - 2, 0)
        if x is None:
            from gf2lab.matroid import count_S0_all

            counts = count_S0_all(A, k)
            worst = int(np.argmax(counts))
            s0 = int(counts[worst])
            violations = int((counts > bound).sum())
        else:
            worst, s0 = x, count_S0_bruteforce(A, k, x)
            violations = int(s0 > bound)
        rep.checks.append(Inequality(f"|S0(A,k;x)| at x={to_bits(worst, n)}", s0, "<=", bound))
        rep.details = {"x": to_bits(worst, n), "violations": violations}
    return rep


def verify_triangle_bound(A1: PointSet, A2: PointSet, A3: PointSet,
                          instance: dict | None = None) -> VerifierReport:
    """2^n T >= |A1||A2||A3| - U1 2^(2n)."""
    n = A1.ambient_dim
    rep = VerifierReport("lemma41", instance or {"n": n, "sizes": [A1.cardinality, A2.cardinality, A3.cardinality]})
    with _timed(rep):
        T = count_zero_triples(A1, A2, A3)
        U1 = uniformity(A1).max_abs_correlation or 0
        rhs = A1.cardinality * A2.cardinality * A3.cardinality - U1 * (1 << (2 * n))
        rep.checks.append(Inequality("2^n*T", T << n, ">=", rhs))
        rep.details = {"T": str(T), "U1": str(U1)}
    return rep


# -- anchor selection ----------------------------------------------------------


@dataclass(frozen=True)
class Anchor:
    anchor: int
    points: PointSet  # H_a(X) in H-coordinates
    size: int
    max_abs_correlation: int
    scanned: int


def pick_anchor(X: PointSet, H: Subspace, eps, threshold=None) -> Anchor:
    """Find a coset whose section is eps-uniform in H and has density >= threshold.

    ``threshold`` defaults to density(X) - eps.  The zero coset is preferred,
    then the smallest coset representative.
    """
    eps = Fraction(eps)
    if threshold is None:
        threshold = density(X) - eps
    threshold = Fraction(threshold)
    if threshold <= 0:
        raise ValueError("anchor density threshold must be positive")
    d = H.dim
    reps = coset_rep_array(H)
    rows = section_table(X, H, reps)
    sizes = rows.sum(axis=1)
    total = int(sizes.sum()) << d
    if total != X.cardinality << d:
        raise CounterexampleError("sum of section sizes differs from |X||H|", X)
    if d:
        U, _ = batch_uniformity(rows)
    else:
        U = np.zeros(len(reps), dtype=np.int64)
    for i, rep in enumerate(reps.tolist()):
        big = int(sizes[i]) * threshold.denominator >= threshold.numerator << d
        uni = int(U[i]) * eps.denominator <= eps.numerator << d
        if big and uni:
            return Anchor(rep, PointSet(d, rows[i]), int(sizes[i]), int(U[i]), i + 1)
    raise CounterexampleError(
        "no eps-uniform section of the required density", X,
        {"subspace": [to_bits(b, H.ambient_dim) for b in H.basis], "eps": str(eps),
         "threshold": str(threshold), "sizes": sizes.tolist(), "U": np.asarray(U).tolist()},
    )


# -- circuit-count dichotomy ---------------------------------------------------


def dichotomy_experiment(X: PointSet, k: int, eps, instance: dict | None = None) -> VerifierReport:
    """Run the regularity/anchor/lifting chain and count the circuits it produces."""
    eps = Fraction(eps)
    if not X.is_simple:
        raise NotSimpleError("M(X) must be simple")
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be an odd integer >= 5")
    if X.cardinality == 0:
        raise ValueError("empty point set has density 0")
    n = X.ambient_dim
    rep = VerifierReport("dichotomy", instance or _set_desc(X, k=k, eps=str(eps)))
    with _timed(rep):
        trace = find_regular_subspace(X, eps)
        H = trace.final.subspace
        s = H.codim
        info: dict[str, Any] = {"codim": s, "refinement_steps": len(trace.steps),
                                "theoretical_codim_cap": str(trace.theoretical_cap)}
        meet = X.members[H.elements()]
        if not meet.any():
            info["branch"] = "critical"
            info["critical_number_at_most"] = s
            rep.checks.append(Inequality("|H cap X|", int(meet.sum()), "==", 0))
            rep.details = info
            return rep
        info["branch"] = "circuits"
        x = int(H.elements()[meet].min())
        anc = pick_anchor(X, H, eps)
        a = anc.anchor
        coords = section_coordinates(H)
        xc = coords.forward(x)
        N = int(count_sum_tuples(anc.points, k - 1)[xc])
        S0 = count_S0_bruteforce(anc.points, k - 1, xc)
        lifted = N - S0
        fact = math.factorial(k - 1)
        info.update({"x": to_bits(x, n), "anchor": to_bits(a, n), "N": str(N), "S0": str(S0),
                     "lifted_tuples": str(lifted), "circuits_from_tuples": str(Fraction(lifted, fact)),
                     "ratio_to_2^((k-2)n)": str(Fraction(lifted, fact * (1 << ((k - 2) * n))))})
        if math.comb(X.cardinality - 1, k - 2) <= MAX_COMBINATIONS:
            circs = circuits_through(X, x, k)
            in_coset = [c for c in circs
                        if all(e == x or (e ^ a) in H for e in c.elements)]
            info["circuits_through_x"] = len(circs)
            info["circuits_through_x_in_anchor_coset"] = len(in_coset)
            # lifting is a bijection onto these circuits only for a = 0; otherwise an
            # odd sub-tuple of w may sum to 0 while its lift sums to a != 0
            rep.checks.append(Inequality("lifted tuples vs (k-1)! * DFS circuits in coset a+H",
                                         lifted, "==" if a == 0 else "<=", fact * len(in_coset)))
            rep.checks.append(Inequality("(k-1)! * all circuits through x", fact * len(circs), ">=", lifted))
        try:
            info["theorem_constants"] = theorem_constants(density(X), k).to_dict()
        except InfeasibleError:
            info["theorem_constants"] = None
        rep.details = info
    return rep


# -- triangle-free flats ---------------------------------------------------------


@dataclass
class WeakerResult:
    kind: str  # "flat" or "triangle"
    delta: Fraction
    flat: Subspace | None = None
    points_in_flat: int | None = None
    triangle: tuple[int, int, int] | None = None
    codim: int = 0
    trace: Any = None


def select_delta(eps) -> Fraction:
    eps = Fraction(eps)
    return grid_select(lambda d: eps * (eps - d) ** 2 > d)


def weaker_procedure(X: PointSet, eps) -> WeakerResult:
    """Either a flat of bounded codimension sparse in X, or a triangle of X."""
    eps = Fraction(eps)
    if not X.is_simple:
        raise NotSimpleError("M(X) must be simple")
    n = X.ambient_dim
    delta = select_delta(eps)
    if X.cardinality * eps.denominator <= eps.numerator << n:
        from gf2lab.gf2core import full_space

        return WeakerResult("flat", delta, full_space(n), X.cardinality, codim=0)
    trace = find_regular_subspace(X, delta)
    H = trace.final.subspace
    anc = pick_anchor(X, H, delta, threshold=eps - delta)
    a = anc.anchor
    inside = section(X, H, 0).points
    if inside.cardinality * eps.denominator <= eps.numerator << H.dim:
        return WeakerResult("flat", delta, H, inside.cardinality, codim=H.codim, trace=trace)
    T = count_zero_triples(anc.points, anc.points, inside)
    if T <= 0:
        raise CounterexampleError("triangle count vanished in the dense case", X,
                                  {"delta": str(delta), "anchor": a, "codim": H.codim})
    coords = section_coordinates(H)
    A = anc.points.members
    Z = inside.elements()
    tri = None
    for y in anc.points.elements().tolist():
        hit = A[Z ^ y]
        if hit.any():
            z = int(Z[hit][0])
            tri = (coords.backward(y) ^ a, coords.backward(y ^ z) ^ a, coords.backward(z))
            break
    if tri is None or not all(t in X for t in tri) or len(set(tri)) != 3 or not is_circuit(tri):
        raise CounterexampleError("extracted triple is not a triangle of X", X, {"triple": tri})
    return WeakerResult("triangle", delta, triangle=tuple(sorted(tri)), codim=H.codim, trace=trace)


def weaker_report(X: PointSet, eps, instance: dict | None = None) -> VerifierReport:
    eps = Fraction(eps)
    n = X.ambient_dim
    rep = VerifierReport("weaker", instance or _set_desc(X, eps=str(eps)))
    with _timed(rep):
        res = weaker_procedure(X, eps)
        info: dict[str, Any] = {"outcome": res.kind, "delta": str(res.delta), "codim": res.codim}
        if res.kind == "flat":
            F = res.flat
            info["flat_basis"] = [to_bits(b, n) for b in F.basis]
            info["flat_dim"] = F.dim
            rep.checks.append(Inequality("q*|F cap X| vs p*2^dim(F)", res.points_in_flat * eps.denominator,
                                         "<=", eps.numerator << F.dim))
            rep.checks.append(Inequality("dim F vs n - codim", F.dim, ">=", n - res.codim))
        else:
            info["triangle"] = [to_bits(t, n) for t in res.triangle]
            rep.checks.append(Inequality("is_circuit(triangle)", int(is_circuit(res.triangle)), "==", 1))
        rep.details = info
    return rep
