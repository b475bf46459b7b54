from fractions import Fraction
import random

import pytest
from hypothesis import given, strategies as st

from pitheorem.exact import IntMatrix, exact_rank, primitive_normalize, solve_exact

from oracles import rank_by_minors
from worked_examples import CAPACITOR, FIELD, PENDULUM


@pytest.mark.parametrize(
    "rows, expected",
    [(PENDULUM, 3), (CAPACITOR, 3), (FIELD, 3), ([], 0)],
    ids=["pendulum", "capacitor", "field-energy", "empty"],
)
def test_exact_rank_examples(rows, expected):
    assert exact_rank(rows) == expected


def test_pendulum_rank_matches_minor_oracle():
    assert rank_by_minors(PENDULUM) == 3


def test_zero_by_n_and_n_by_zero():
    assert exact_rank(IntMatrix(0, 4, ())) == 0
    assert exact_rank(IntMatrix(3, 0, ())) == 0


def test_int_matrix_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(TypeError):
        IntMatrix(1, 1, (1.5,))


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


@given(matrices)
def test_rank_agrees_with_minor_oracle(rows):
    assert exact_rank(rows) == rank_by_minors(rows)


def test_rank_with_large_entries():
    big = 10**40
    rows = [[big, big + 1], [big + 1, big + 2]]
    assert exact_rank(rows) == 2
    assert exact_rank([[big, 2 * big], [3 * big, 6 * big]]) == 1


@pytest.mark.parametrize(
    "cols, b, expected",
    [
        ([[1, 0, 0], [0, 0, 1], [1, -2, 0]], [0, 2, 0], (1, 0, -1)),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [5, -2, 7], (5, -2, 7)),
        ([[2, 4]], [1, 3], None),
    ],
    ids=["pendulum-t", "identity", "inconsistent"],
)
def test_solve_exact_examples(cols, b, expected):
    x = solve_exact(IntMatrix.from_columns(cols), b)
    assert x == (None if expected is None else tuple(Fraction(v) for v in expected))


@given(matrices, st.data())
def test_solve_satisfies_system_exactly(rows, data):
    a = IntMatrix.from_rows(rows)
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=a.cols, max_size=a.cols))
    b = [sum(a[i, j] * coeffs[j] for j in range(a.cols)) for i in range(a.rows)]
    x = solve_exact(a, b)
    assert x is not None
    assert [sum(a[i, j] * x[j] for j in range(a.cols)) for i in range(a.rows)] == b
    if exact_rank(a) == a.cols:
        assert list(x) == coeffs


def test_solve_rhs_length_checked():
    with pytest.raises(ValueError):
        solve_exact([[1, 0]], [1, 2])


@pytest.mark.parametrize(
    "w0, w, expected",
    [
        (-2, [-1, 0, 1], (2, (1, 0, -1))),
        (Fraction(4, 3), [Fraction(2, 3), -2], (2, (1, -3))),
        (1, [0, 0, 0], (1, (0, 0, 0))),
    ],
)
def test_primitive_normalize_examples(w0, w, expected):
    assert primitive_normalize(w0, w) == expected


def test_primitive_normalize_rejects_zero_head():
    with pytest.raises(ValueError):
        primitive_normalize(0, [1, 2])


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(fractions.filter(lambda f: f != 0), st.lists(fractions, max_size=5))
def test_primitive_normalize_properties(w0, w):
    from math import gcd

    W0, W = primitive_normalize(w0, w)
    assert W0 > 0
    assert gcd(W0, *W) == 1
    scale = Fraction(W0) / w0
    assert all(Fraction(b) == scale * a for a, b in zip(w, W))
    assert primitive_normalize(W0, W) == (W0, W)


def test_bareiss_random_against_oracle_with_duplicates():
    rng = random.Random(7)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(1, 6)
        cols = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
        if n > 1:
            cols[-1] = list(cols[0])
        rows = [[cols[j][i] for j in range(n)] for i in range(m)]
        assert exact_rank(rows) == rank_by_minors(rows)
