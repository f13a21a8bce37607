from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import b, point_sets
from gf2lab import oracles
from gf2lab.errors import DimensionMismatchError, ScaleError
from gf2lab.gf2core import rank
from gf2lab.pointset import PointSet, generate, translate
from gf2lab.spectral import (
    batch_uniformity,
    correlations,
    count_sum_tuples,
    count_zero_triples,
    fwht,
    uniformity,
)

TRI = PointSet.from_elements(2, [b("01"), b("10"), b("11")])


def test_correlation_examples():
    assert correlations(TRI).table.tolist() == [3, -1, -1, -1]
    assert correlations(PointSet.empty(3)).table.tolist() == [0] * 8
    layer = generate("affine-layer", 3, {"gamma": b("100")})
    t = correlations(layer).table.tolist()
    assert t[b("100")] == -4 and all(v == 0 for g, v in enumerate(t) if g not in (0, b("100")))


def test_uniformity_examples():
    r = uniformity(TRI)
    assert r.max_abs_correlation == 1 and r.epsilon_star == Fraction(1, 4)
    layer = uniformity(generate("affine-layer", 3, {"gamma": b("100")}))
    assert layer.max_abs_correlation == 4 and layer.epsilon_star == Fraction(1, 2)
    assert layer.witness == b("100")
    e = uniformity(PointSet.empty(3))
    assert e.max_abs_correlation == 0 and e.epsilon_star == 0
    assert uniformity(PointSet.full(0)).vacuous


def test_is_uniform_is_exact():
    r = uniformity(TRI)
    assert r.is_uniform(Fraction(1, 4))
    assert not r.is_uniform(Fraction(1, 4) - Fraction(1, 10**30))


def test_count_sum_tuples_examples():
    assert count_sum_tuples(TRI, 3).tolist() == [6, 7, 7, 7]
    assert int(count_sum_tuples(TRI, 2)[b("11")]) == 2
    for n, k in [(2, 3), (3, 4), (4, 5)]:
        assert set(count_sum_tuples(PointSet.full(n), k).tolist()) == {2 ** (n * (k - 1))}
    with pytest.raises(ValueError):
        count_sum_tuples(TRI, 0)


def test_count_sum_tuples_big_integers():
    # n(k+1) > 62 forces exact Python integers
    A = PointSet.full(10)
    N = count_sum_tuples(A, 7)
    assert N.dtype == object and all(int(v) == 2 ** 60 for v in N)
    with pytest.raises(ScaleError):
        count_sum_tuples(PointSet.full(12), 200)


def test_zero_triples_examples():
    assert count_zero_triples(TRI, TRI, TRI) == 6
    assert count_zero_triples(TRI, TRI, PointSet.empty(2)) == 0
    assert count_zero_triples(*(PointSet.full(2),) * 3) == 16
    with pytest.raises(DimensionMismatchError):
        count_zero_triples(TRI, TRI, PointSet.full(3))


@given(point_sets(max_n=8))
def test_parseval(X):
    t = correlations(X).table
    assert int((t * t).sum()) == X.cardinality << X.ambient_dim


@given(point_sets(max_n=8))
def test_transform_involution(X):
    a = X.members.astype(np.int64)
    fwht(a)
    fwht(a)
    assert (a == X.members.astype(np.int64) << X.ambient_dim).all()


@given(point_sets(max_n=7), st.data())
def test_translation_changes_only_signs(X, data):
    v = data.draw(st.integers(0, (1 << X.ambient_dim) - 1))
    a = correlations(X).table
    c = correlations(translate(X, v)).table
    assert (np.abs(a) == np.abs(c)).all()
    assert uniformity(X).max_abs_correlation == uniformity(translate(X, v)).max_abs_correlation


@given(point_sets(max_n=6))
def test_correlations_match_hyperplane_counts(X):
    t = correlations(X).table
    for g in range(1, 1 << X.ambient_dim):
        assert t[g] == oracles.correlation(X, g) == oracles.parity_correlation(X, g)


@given(point_sets(max_n=6), st.data())
def test_uniformity_is_basis_invariant(X, data):
    # an invertible linear map permutes characters, so U is unchanged
    n = X.ambient_dim
    cols = data.draw(st.lists(st.integers(1, (1 << n) - 1), min_size=n, max_size=n)
                     .filter(lambda c: rank(c) == n))

    def apply(v):
        w = 0
        for i, c in enumerate(cols):
            if v >> i & 1:
                w ^= c
        return w

    Y = PointSet.from_elements(n, [apply(v) for v in X])
    assert uniformity(X).max_abs_correlation == uniformity(Y).max_abs_correlation


@settings(max_examples=50)
@given(point_sets(max_n=5), st.integers(1, 4))
def test_count_sum_tuples_matches_oracle(A, k):
    assert count_sum_tuples(A, k).tolist() == oracles.sum_tuples(A, k).tolist()


@st.composite
def triples(draw):
    n = draw(st.integers(1, 5))
    sets = []
    for _ in range(3):
        bits = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
        sets.append(PointSet(n, np.array(bits, dtype=bool)))
    return sets


@settings(max_examples=50)
@given(triples())
def test_zero_triples_matches_oracle(sets):
    assert count_zero_triples(*sets) == oracles.zero_triples(*sets)


def test_batch_uniformity_rows():
    rows = np.array([TRI.members, PointSet.full(2).members, PointSet.empty(2).members])
    U, w = batch_uniformity(rows)
    assert U.tolist() == [1, 0, 0] and w[0] == 1
