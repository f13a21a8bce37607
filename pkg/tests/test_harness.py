import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import b, point_sets
from gf2lab import oracles
from gf2lab.errors import CounterexampleError, InfeasibleError, NotSimpleError
from gf2lab.gf2core import coset_reps, full_space, hyperplane_of, rref_span
from gf2lab.harness import (
    dichotomy_experiment,
    exact_log2,
    grid_select,
    pick_anchor,
    select_delta,
    theorem_constants,
    verify_degenerate_bound,
    verify_sum_bound,
    verify_triangle_bound,
    weaker_procedure,
    weaker_report,
)
from gf2lab.matroid import is_circuit
from gf2lab.pointset import PointSet, generate, load, section
from gf2lab.regularity import Tower, find_regular_subspace

TRI = PointSet.from_elements(2, [b("01"), b("10"), b("11")])


def test_constants_for_half_and_five():
    L = theorem_constants(Fraction(1, 2), 5)
    assert L.epsilon == Fraction(1, 8)
    assert (Fraction(3, 8)) ** 4 > Fraction(1, 64) and not (Fraction(1, 4)) ** 4 > Fraction(1, 16)
    assert L.r0_offset == 12
    assert L.slack == Fraction(17, 4096) and L.inner == Fraction(1, 4096)
    assert L.log2_beta_text() == "-3*s0 - log2(24) - 12"
    assert L.s0 == Tower(512)
    d = L.to_dict()
    assert d["r0"] == "s0 + 12" and d["epsilon"] == "1/8"


@pytest.mark.parametrize("alpha,k", [(Fraction(1, 2), 5), (Fraction(3, 4), 7), (Fraction(1, 3), 9), (1, 5)])
def test_constants_substitution(alpha, k):
    L = theorem_constants(alpha, k)
    assert (L.alpha0 ** (k - 1)) - L.epsilon ** (k - 3) > 0
    # the offset is the least one that works
    assert Fraction(2) ** (k - 1 - (L.r0_offset - 1)) >= L.slack
    for s in range(1, 41):
        assert L.beta(s) > 0 and L.r0_inequality(s) > 0


def test_constants_errors():
    with pytest.raises(ValueError):
        theorem_constants(Fraction(1, 2), 6)
    with pytest.raises(ValueError):
        theorem_constants(0, 5)
    with pytest.raises(InfeasibleError):
        theorem_constants(Fraction(1, 2**70), 5)


def test_grid_helpers():
    assert grid_select(lambda t: t < Fraction(1, 5)) == Fraction(1, 8)
    assert exact_log2(Fraction(1, 4096)) == -12 and exact_log2(Fraction(8)) == 3
    assert exact_log2(Fraction(3, 4)) is None
    assert select_delta(Fraction(1, 4)) == Fraction(1, 128)
    d = Fraction(1, 64)
    assert not Fraction(1, 4) * (Fraction(1, 4) - d) ** 2 > d


def test_sum_bound_examples():
    r = verify_sum_bound(TRI, 3)
    assert r.passed and r.checks[0].lhs == 24 and r.checks[0].rhs == 11
    full = verify_sum_bound(PointSet.full(3), 3)
    assert full.passed and full.checks[0].lhs == full.checks[0].rhs == 2 ** 9
    empty = verify_sum_bound(PointSet.empty(3), 3)
    assert empty.passed and empty.checks[0].lhs == 0 and empty.checks[0].rhs == 0


def test_degenerate_bound_examples():
    r = verify_degenerate_bound(TRI, 3, b("01"))
    assert r.passed and (r.checks[0].lhs, r.checks[0].rhs) == (7, 24)
    assert verify_degenerate_bound(PointSet.empty(3), 2, 1).passed
    pg = verify_degenerate_bound(generate("projective", 3), 4, b("001"))
    assert pg.passed and pg.checks[0].rhs == 784
    assert pg.checks[0].lhs == oracles.degenerate_count(generate("projective", 3), 4, 1)


def test_triangle_bound_examples():
    r = verify_triangle_bound(TRI, TRI, TRI)
    assert r.passed and (r.checks[0].lhs, r.checks[0].rhs) == (24, 11)
    assert verify_triangle_bound(TRI, TRI, PointSet.empty(2)).passed
    A2 = PointSet.from_elements(3, [1, 2, 6])
    A3 = PointSet.from_elements(3, [3, 5])
    eq = verify_triangle_bound(PointSet.full(3), A2, A3)
    assert eq.passed and eq.checks[0].lhs == eq.checks[0].rhs == 6 * 8


@settings(max_examples=60, deadline=None)
@given(point_sets(max_n=7), st.sampled_from([3, 4, 5]))
def test_sum_bound_always_holds(A, k):
    assert verify_sum_bound(A, k).passed


@settings(max_examples=40, deadline=None)
@given(point_sets(max_n=4), st.sampled_from([2, 3, 4]))
def test_degenerate_bound_always_holds(A, k):
    rep = verify_degenerate_bound(A, k)
    assert rep.passed and rep.details["violations"] == 0


@settings(max_examples=60, deadline=None)
@given(point_sets(max_n=7), st.data())
def test_triangle_bound_always_holds(A1, data):
    n = A1.ambient_dim
    A2 = PointSet.from_elements(n, data.draw(st.sets(st.integers(0, (1 << n) - 1))))
    A3 = PointSet.from_elements(n, data.draw(st.sets(st.integers(0, (1 << n) - 1))))
    assert verify_triangle_bound(A1, A2, A3).passed


def test_pick_anchor_prefers_zero():
    H = rref_span([b("0011"), b("0101")], 4)
    X = PointSet.from_elements(4, [h for h in H.elements().tolist() if h] + [b("1000")])
    anc = pick_anchor(X, H, Fraction(1, 2), threshold=Fraction(1, 2))
    assert anc.anchor == 0 and anc.size == 3


def test_pick_anchor_affine_layer():
    g = b("100001")
    X = generate("affine-layer", 6, {"gamma": g})
    H = hyperplane_of(g, 6)
    anc = pick_anchor(X, H, Fraction(1, 4))
    assert anc.anchor == coset_reps(H)[1] and anc.anchor not in H
    assert anc.size == len(H) and anc.max_abs_correlation == 0


def test_pick_anchor_rejects_and_reports():
    with pytest.raises(ValueError):
        pick_anchor(PointSet.empty(3), full_space(3), Fraction(1, 4))
    # a single point is far from uniform in the whole space
    X = PointSet.from_elements(3, [1])
    with pytest.raises(CounterexampleError) as info:
        pick_anchor(X, full_space(3), Fraction(1, 100), threshold=Fraction(1, 16))
    assert "sizes" in info.value.details


@settings(max_examples=40, deadline=None)
@given(point_sets(min_n=2, max_n=7, simple=True), st.sampled_from([Fraction(1, 4), Fraction(1, 8)]))
def test_anchor_exists_on_regular_subspace(X, eps):
    if X.cardinality * eps.denominator <= eps.numerator << X.ambient_dim:
        return
    H = find_regular_subspace(X, eps).final.subspace
    anc = pick_anchor(X, H, eps)
    assert section(X, H, anc.anchor).points == anc.points


def test_dichotomy_affine_layer():
    X = generate("affine-layer", 6, {"gamma": b("000111")})
    rep = dichotomy_experiment(X, 5, Fraction(1, 4))
    assert rep.passed and rep.details["branch"] == "critical"
    assert rep.details["critical_number_at_most"] == 1


def test_dichotomy_pg3():
    rep = dichotomy_experiment(generate("projective", 4), 5, Fraction(1, 4))
    d = rep.details
    assert rep.passed and d["branch"] == "circuits" and d["codim"] == 0 and d["anchor"] == "0000"
    assert d["lifted_tuples"] == str(24 * 56) and d["circuits_through_x"] == 56
    assert d["theorem_constants"]["k"] == 5


def test_dichotomy_rejects():
    with pytest.raises(ValueError):
        dichotomy_experiment(PointSet.empty(4), 5, Fraction(1, 4))
    with pytest.raises(ValueError):
        dichotomy_experiment(generate("projective", 4), 4, Fraction(1, 4))
    with pytest.raises(NotSimpleError):
        dichotomy_experiment(PointSet.full(3), 5, Fraction(1, 4))


@settings(max_examples=60, deadline=None)
@given(point_sets(min_n=4, max_n=6, simple=True), st.sampled_from([Fraction(1, 4), Fraction(1, 8)]))
def test_dichotomy_cross_check_always_holds(X, eps):
    if X.cardinality * eps.denominator <= eps.numerator << X.ambient_dim:
        with pytest.raises(ValueError):
            pick_anchor(X, full_space(X.ambient_dim), eps)
        return
    rep = dichotomy_experiment(X, 5, eps)
    assert rep.passed
    if rep.details["branch"] == "circuits" and rep.details["anchor"] == "0" * X.ambient_dim:
        assert rep.checks[0].relation == "=="


def test_dichotomy_off_coset_anchor_is_a_lower_bound():
    # anchor outside H and a in X: tuples using 0 are degenerate yet lift to circuits
    X = PointSet.from_elements(4, [0b0001, 0b0100, 0b0101, 0b0110, 0b1001, 0b1011, 0b1100])
    rep = dichotomy_experiment(X, 5, Fraction(1, 4))
    d = rep.details
    assert rep.passed and d["anchor"] == "0001" and d["lifted_tuples"] == "0"
    assert rep.checks[0].relation == "<=" and d["circuits_through_x_in_anchor_coset"] == 2


@pytest.mark.parametrize("n", [4, 6, 9, 12])
def test_weaker_on_layers_returns_sparse_flat(n):
    X = generate("affine-layer", n, {"gamma": (1 << n) - 1})
    res = weaker_procedure(X, Fraction(1, 4))
    assert res.kind == "flat"
    assert res.points_in_flat * 4 <= 1 << res.flat.dim
    assert res.flat.dim >= n - res.codim


@pytest.mark.parametrize("seed", range(5))
def test_weaker_on_random_triangle_free(seed):
    X = generate("random-triangle-free", 10, {}, seed)
    assert oracles.triangle_free(X)
    assert weaker_procedure(X, Fraction(1, 4)).kind == "flat"


def test_weaker_finds_triangle_when_regular():
    X = generate("projective", 8)
    res = weaker_procedure(X, Fraction(1, 4))
    assert res.kind == "triangle" and is_circuit(res.triangle)
    assert all(t in X for t in res.triangle)


def test_weaker_sparse_input_returns_whole_space():
    X = PointSet.from_elements(5, [1, 2])
    res = weaker_procedure(X, Fraction(1, 4))
    assert res.kind == "flat" and res.flat == full_space(5) and res.codim == 0


def test_weaker_report_json():
    rep = weaker_report(generate("affine-layer", 6, {"gamma": 1}), Fraction(1, 4))
    d = rep.to_dict(timestamp=False)
    assert d["pass"] and "runtime" not in d
    assert all(isinstance(c["lhs"], str) and isinstance(c["rhs"], str) for c in d["checks"])
    json.dumps(d)


def test_counterexample_dump(tmp_path):
    X = PointSet.from_elements(3, [1, 2])
    err = CounterexampleError("boom", X, {"why": 1})
    paths = err.dump(str(tmp_path / "cx"))
    assert load(paths[0]) == X
    assert json.loads(open(paths[1]).read()) == {"error": "boom", "details": {"why": 1}}
