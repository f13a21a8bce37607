"""Seeded batches of random instances for the counting-lemma verifiers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from gf2lab.harness import VerifierReport, verify_degenerate_bound, verify_sum_bound, verify_triangle_bound
from gf2lab.parallel import ordered_map
from gf2lab.pointset import PointSet, generate

DENSITIES = tuple(Fraction(i, 8) for i in range(1, 8))


def draw_instances(seed: int, trials: int, ns: Sequence[int], ks: Sequence[int] = (0,), sets: int = 1):
    """Deterministic list of (n, k, [(p, child_seed), ...]) specs."""
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for _ in range(trials):
        n = int(rng.choice(ns))
        k = int(rng.choice(ks))
        members = []
        for _ in range(sets):
            p = DENSITIES[int(rng.integers(len(DENSITIES)))]
            members.append((p, int(rng.integers(0, 2**63))))
        out.append((n, k, members))
    return out


def build(n: int, p: Fraction, seed: int) -> PointSet:
    return generate("random-density", n, {"p": p}, seed)


def _instance(n, k, members, extra=None):
    desc = {"generator": "random-density", "n": n}
    if k:
        desc["k"] = k
    desc["sets"] = [{"p": str(p), "seed": s} for p, s in members]
    if extra:
        desc.update(extra)
    return desc


def lemma22_suite(trials: int, ns: Sequence[int], ks: Sequence[int], seed: int) -> list[VerifierReport]:
    def run(job):
        n, k, members = job
        (p, s), = members
        return verify_sum_bound(build(n, p, s), k, _instance(n, k, members))

    return ordered_map(run, draw_instances(seed, trials, ns, ks))


def lemma23_suite(trials: int, ns: Sequence[int], ks: Sequence[int], seed: int) -> list[VerifierReport]:
    def run(job):
        n, k, members = job
        (p, s), = members
        return verify_degenerate_bound(build(n, p, s), k, None, _instance(n, k, members, {"x": "all"}))

    return ordered_map(run, draw_instances(seed, trials, ns, ks))


def lemma41_suite(trials: int, ns: Sequence[int], seed: int) -> list[VerifierReport]:
    def run(job):
        n, _, members = job
        A1, A2, A3 = (build(n, p, s) for p, s in members)
        return verify_triangle_bound(A1, A2, A3, _instance(n, 0, members))

    return ordered_map(run, draw_instances(seed, trials, ns, sets=3))
