import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import permutation_minimum
from vrsdr_score.assignment import brute_force_assignment, pad_square, solve_assignment
from vrsdr_score.errors import DimensionTooLarge

IDENTITY_OPTIMAL = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_identity_optimum():
    assert solve_assignment(IDENTITY_OPTIMAL) == ([0, 1, 2], 0)
    assert brute_force_assignment(IDENTITY_OPTIMAL) == ([0, 1, 2], 0)


def test_swap():
    assert solve_assignment([[1, 0], [0, 1]]) == ([1, 0], 0)


def test_one_by_one():
    assert brute_force_assignment([[7]]) == ([0], 7)
    assert solve_assignment([[7]]) == ([0], 7)


def test_empty():
    assert solve_assignment([]) == ([], 0)


def test_random_5x5_matches_all_permutations():
    rng = random.Random(5)
    m = [[rng.randrange(20) for _ in range(5)] for _ in range(5)]
    mapping, cost = solve_assignment(m)
    assert cost == permutation_minimum(m)
    assert sorted(mapping) == list(range(5))
    assert cost == sum(m[i][mapping[i]] for i in range(5))


def test_brute_force_lexicographic_ties():
    assert brute_force_assignment([[0, 0], [0, 0]]) == ([0, 1], 0)


def test_brute_force_limit():
    with pytest.raises(DimensionTooLarge):
        brute_force_assignment([[0] * 9 for _ in range(9)])


def test_rejects_non_square_and_negative():
    with pytest.raises(ValueError):
        solve_assignment([[1, 2]])
    with pytest.raises(ValueError):
        solve_assignment([[-1]])
    with pytest.raises(ValueError):
        solve_assignment([[float("inf")]])


def test_pad_square():
    m = [[1, 2, 3]]
    assert pad_square(m, [9], [4, 5, 6]) == [[1, 2, 3], [4, 5, 6], [4, 5, 6]]
    assert pad_square([[1], [2]], [7, 8], [9]) == [[1, 7], [2, 8]]


square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 50), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_matches_brute_force(m):
    _, cost = solve_assignment(m)
    _, brute = brute_force_assignment(m)
    assert cost == brute


@given(square, st.integers(0, 100))
def test_constant_shift(m, c):
    n = len(m)
    shifted = [[v + c for v in row] for row in m]
    assert solve_assignment(shifted)[1] == solve_assignment(m)[1] + n * c


@given(square)
def test_float_costs(m):
    fm = [[v / 7 for v in row] for row in m]
    _, cost = solve_assignment(fm)
    assert cost == pytest.approx(permutation_minimum(fm))
