"""Acceptance checks, runnable at full scale (pytest) or reduced scale (--self-test)."""

from __future__ import annotations

import io
import math
import time
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from gf2lab import oracles
from gf2lab.critical import critical_number, critical_number_oracle, greedy_cover
from gf2lab.harness import theorem_constants, weaker_procedure
from gf2lab.matroid import census, circuits_through, count_S0_bruteforce
from gf2lab.pointset import generate
from gf2lab.regularity import find_regular_subspace, is_regular
from gf2lab.spectral import count_sum_tuples
from gf2lab.suites import DENSITIES, build, lemma22_suite, lemma23_suite, lemma41_suite

# exhaustive C(14,4) scan over PG(3,2); every element lies on 56 five-circuits
PG4_K5_MAX_COUNT = 56


@dataclass
class Outcome:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _timed(name, fn, limit=None, **kw) -> Outcome:
    t0 = time.perf_counter()
    passed, detail = fn(**kw)
    seconds = time.perf_counter() - t0
    if limit is not None:
        detail += f"; limit {limit}s"
        passed = passed and seconds <= limit
    return Outcome(name, passed, detail, seconds)


def spectral_vs_bruteforce(per_cell=50, ns=(4, 6, 8), ks=(3, 4, 5), seed=101):
    rng = _rng(seed)
    bad = 0
    total = 0
    for n in ns:
        for k in ks:
            for _ in range(per_cell):
                A = build(n, DENSITIES[int(rng.integers(len(DENSITIES)))], int(rng.integers(2**63)))
                fast = count_sum_tuples(A, k)
                slow = oracles.sum_tuples(A, k)
                total += 1
                if any(int(a) != int(b) for a, b in zip(fast, slow)):
                    bad += 1
    return bad == 0, f"{total} sets, {bad} mismatches"


def _suite_outcome(reports):
    violations = sum(r.details.get("violations", 0) for r in reports)
    failed = sum(not r.passed for r in reports)
    return failed == 0 and violations == 0, f"{len(reports)} instances, {violations} violating x, {failed} failed reports"


def lemma22(trials=200, seed=202):
    return _suite_outcome(lemma22_suite(trials, range(1, 11), (3, 4, 5), seed))


def lemma23(trials=100, seed=303):
    return _suite_outcome(lemma23_suite(trials, range(1, 8), (3, 4), seed))


def lemma41(trials=100, seed=404):
    return _suite_outcome(lemma41_suite(trials, range(1, 11), seed))


def tuple_circuit_correspondence(trials=20, ns=(4, 5, 6, 7), k=5, seed=505):
    rng = _rng(seed)
    fact = math.factorial(k - 1)
    checked = bad = 0
    for _ in range(trials):
        n = int(rng.choice(ns))
        p = Fraction(int(rng.integers(2, 5)), 8)
        X = build(n, p, int(rng.integers(2**63)))
        N = count_sum_tuples(X, k - 1)
        for x in X:
            lhs = fact * len(circuits_through(X, x, k))
            rhs = int(N[x]) - count_S0_bruteforce(X, k - 1, x)
            checked += 1
            bad += lhs != rhs
    return bad == 0, f"{checked} (set, x) pairs, {bad} mismatches"


def pg_census():
    c3 = census(generate("projective", 3), 5)
    c4 = census(generate("projective", 4), 5)
    oracle = max(oracles.circuits_through(generate("projective", 4), x, 5) for x in range(1, 16))
    ok = (c3.max_count == 0 and c4.max_count <= 2 ** (3 * 4)
          and c4.max_count == PG4_K5_MAX_COUNT == oracle)
    return ok, f"PG(2,2) max {c3.max_count}; PG(3,2) max {c4.max_count} (oracle {oracle}, cap 4096)"


def critical_numbers(trials=100, seed=707):
    rng = _rng(seed)
    bad = []
    for i in range(trials):
        n = int(rng.integers(1, 6))
        X = build(n, DENSITIES[int(rng.integers(len(DENSITIES)))], int(rng.integers(2**63)))
        ex = critical_number(X)
        gr = greedy_cover(X)
        witness_ok = not X.members[ex.witness.elements()].any() and ex.witness.codim == ex.value
        if ex.value != critical_number_oracle(X) or gr.value < ex.value or not witness_ok:
            bad.append(i)
    for n in range(1, 6):
        if critical_number(generate("projective", n)).value != n:
            bad.append(f"PG n={n}")
        for g in range(1, 1 << n):
            if critical_number(generate("affine-layer", n, {"gamma": g})).value != 1:
                bad.append(f"layer n={n} gamma={g}")
    return not bad, f"{trials} random + PG/affine families, failures: {bad[:5]}"


def regularity(trials=20, epsilons=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)), seed=808, n_max=12):
    rng = _rng(seed)
    bad = 0
    codims = []
    for _ in range(trials):
        n = int(rng.integers(2, n_max + 1))
        X = build(n, DENSITIES[int(rng.integers(len(DENSITIES)))], int(rng.integers(2**63)))
        for eps in epsilons:
            tr = find_regular_subspace(X, eps)
            H = tr.final.subspace
            codims.append(H.codim)
            if not is_regular(X, H, eps).regular or H.codim > n:
                bad += 1
    return bad == 0, f"{len(codims)} runs, max codim {max(codims)}, {bad} failures"


def weaker_triangle_free(trials=20, seed=909, eps=Fraction(1, 4), n_max=12):
    rng = _rng(seed)
    bad = []
    for i in range(trials):
        n = int(rng.integers(4, n_max + 1))
        if i % 2:
            X = generate("random-triangle-free", n, {}, int(rng.integers(2**63)))
        else:
            X = generate("affine-layer", n, {"gamma": int(rng.integers(1, 1 << n))})
        if not oracles.triangle_free(X):
            bad.append(f"{i}: generator produced a triangle")
            continue
        res = weaker_procedure(X, eps)
        if res.kind != "flat":
            bad.append(f"{i}: triangle")
            continue
        F = res.flat
        if res.points_in_flat * eps.denominator > eps.numerator << F.dim:
            bad.append(f"{i}: flat too dense")
        if int(X.members[F.elements()].sum()) != res.points_in_flat:
            bad.append(f"{i}: flat count wrong")
    return not bad, f"{trials} triangle-free inputs, failures: {bad[:5]}"


def weaker_pg22(eps=Fraction(1, 4)):
    res = weaker_procedure(generate("projective", 3), eps)
    if res.kind == "triangle":
        return True, f"triangle {res.triangle}"
    return False, f"returned a flat of dim {res.flat.dim} (|F cap X| = {res.points_in_flat}), not a triangle"


def constants_ledger():
    L = theorem_constants(Fraction(1, 2), 5)
    ok = (L.epsilon == Fraction(1, 8) and L.r0_offset == 12 and L.beta_s0_coeff == -3
          and L.factorial == 24 and L.inner == Fraction(1, 4096)
          and L.log2_beta_text() == "-3*s0 - log2(24) - 12"
          and all(L.beta(s) > 0 and L.r0_inequality(s) > 0 for s in range(1, 41)))
    return ok, f"eps={L.epsilon}, r0=s0+{L.r0_offset}, log2(beta)={L.log2_beta_text()}"


REPRO_COMMANDS = (
    ["verify", "lemma22", "--n", "6", "--k", "4", "--trials", "10", "--seed", "7"],
    ["verify", "lemma23", "--n", "5", "--k", "3", "--trials", "10", "--seed", "7"],
    ["verify", "lemma41", "--n", "6", "--trials", "10", "--seed", "7"],
    ["constants", "--alpha", "1/2", "-k", "5"],
)


def reproducibility(commands=REPRO_COMMANDS):
    from gf2lab.cli import main

    def capture(argv):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main([*argv, "--no-timestamp"])
        return code, buf.getvalue()

    bad = []
    for argv in commands:
        first, second = capture(argv), capture(argv)
        if first != second or first[0] != 0:
            bad.append(" ".join(argv))
    return not bad, f"{len(commands)} commands rerun, differing: {bad}"


# (name, check, kwargs, wall-clock limit in seconds); 9a and 9b share one budget
FULL = (
    ("1 spectral vs brute force", spectral_vs_bruteforce, {}, 60),
    ("2 sum-count lower bound", lemma22, {}, 180),
    ("3 degenerate-tuple bound", lemma23, {}, 180),
    ("4 zero-triple lower bound", lemma41, {}, 120),
    ("5 tuple-circuit correspondence", tuple_circuit_correspondence, {}, 300),
    ("6 PG circuit censuses", pg_census, {}, 120),
    ("7 critical number", critical_numbers, {}, 300),
    ("8 regular subspaces", regularity, {}, 300),
    ("9a flats on triangle-free inputs", weaker_triangle_free, {}, 300),
    ("9b triangle in PG(2,2)", weaker_pg22, {}, 300),
    ("10 constants ledger", constants_ledger, {}, None),
    ("11 reproducibility", reproducibility, {}, None),
)

FAST = {
    "1 spectral vs brute force": {"per_cell": 3},
    "2 sum-count lower bound": {"trials": 20},
    "3 degenerate-tuple bound": {"trials": 10},
    "4 zero-triple lower bound": {"trials": 10},
    "5 tuple-circuit correspondence": {"trials": 2, "ns": (4, 5)},
    "7 critical number": {"trials": 10},
    "8 regular subspaces": {"trials": 3, "n_max": 8},
    "9a flats on triangle-free inputs": {"trials": 4, "n_max": 8},
}


def run_all(fast: bool = False, names=None) -> list[Outcome]:
    out = []
    for name, fn, kw, limit in FULL:
        if names and name not in names:
            continue
        if fast and name == "11 reproducibility":
            continue
        args = {**kw, **(FAST.get(name, {}) if fast else {})}
        out.append(_timed(name, fn, limit, **args))
    return out

