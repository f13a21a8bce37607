from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import b, point_sets
from gf2lab import oracles
from gf2lab.errors import NotSimpleError
from gf2lab.matroid import (
    census,
    circuits_through,
    count_S0_all,
    count_S0_bruteforce,
    is_circuit,
)
from gf2lab.pointset import PointSet, generate
from gf2lab.spectral import count_sum_tuples
from gf2lab.suites import build

TRI = PointSet.from_elements(2, [b("01"), b("10"), b("11")])
PG2 = generate("projective", 3)
PG3 = generate("projective", 4)


def test_is_circuit_examples():
    assert is_circuit([b("01"), b("10"), b("11")])
    assert not is_circuit([b("01"), b("10")])
    assert not is_circuit([1, 2, 3, 4, 5, 6])
    with pytest.raises(NotSimpleError):
        is_circuit([0, 1, 1])


def test_is_circuit_large_uses_rank():
    # a basis plus its sum is a circuit; three disjoint zero-sum blocks are not
    basis = [1 << i for i in range(9)]
    assert is_circuit(basis + [(1 << 9) - 1])
    assert not is_circuit([1, 2, 3, 4, 8, 12, 16, 32, 64, 112])


def test_circuits_through_examples():
    assert [c.elements for c in circuits_through(TRI, b("01"), 3)] == [(b("01"), b("10"), b("11"))]
    assert all(circuits_through(PG2, x, 5) == [] for x in PG2)
    assert len(circuits_through(PG3, b("0001"), 5)) == oracles.circuits_through(PG3, 1, 5) == 56
    with pytest.raises(ValueError):
        circuits_through(TRI, b("01"), 2)
    with pytest.raises(NotSimpleError):
        circuits_through(PointSet.from_elements(2, [0, 1]), 1, 3)


def test_census_examples():
    c = census(TRI, 3)
    assert c.per_element == {1: 1, 2: 1, 3: 1} and c.max_count == 1 and c.total_circuits == 1
    assert census(PG2, 5).max_count == 0
    c4 = census(PG3, 5)
    assert c4.max_count == 56 <= 4096 and c4.total_circuits == 168 and c4.max_witness == 1


@settings(max_examples=30, deadline=None)
@given(point_sets(min_n=3, max_n=5, simple=True), st.sampled_from([3, 4, 5]))
def test_census_matches_oracle(X, k):
    c = census(X, k)
    assert sum(c.per_element.values()) == k * c.total_circuits
    for x in X:
        circs = circuits_through(X, x, k)
        assert c.per_element[x] == len(circs) == oracles.circuits_through(X, x, k)
        assert all(is_circuit(ci.elements) and x in ci.elements for ci in circs)


def test_degenerate_examples():
    assert count_S0_bruteforce(TRI, 2, 0) == 0
    # every triple summing to 01 repeats some element twice: 3*3 - 3 + 1
    assert count_S0_bruteforce(TRI, 3, b("01")) == 7 == oracles.degenerate_count(TRI, 3, 1)
    assert count_S0_bruteforce(PointSet.empty(3), 4, 5) == 0
    s = count_S0_bruteforce(PG2, 4, b("001"))
    assert s == oracles.degenerate_count(PG2, 4, 1) and s <= 16 * 49


@settings(max_examples=40, deadline=None)
@given(point_sets(max_n=4), st.integers(1, 4))
def test_degenerate_counts_match_oracle(A, k):
    allx = count_S0_all(A, k)
    for x in range(1 << A.ambient_dim):
        want = oracles.degenerate_count(A, k, x)
        assert count_S0_bruteforce(A, k, x) == want == allx[x]


@pytest.mark.parametrize("seed", range(4))
def test_tuple_circuit_correspondence(seed):
    X = build(5, Fraction(3, 8), seed)
    N = count_sum_tuples(X, 4)
    for x in X:
        assert 24 * len(circuits_through(X, x, 5)) == int(N[x]) - count_S0_bruteforce(X, 4, x)
