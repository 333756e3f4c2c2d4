from fractions import Fraction

import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from crnideal.linalg import echelon, in_column_span, rank, solve

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_solve_simple():
    z = solve([[1, 1], [0, 1]], [3, 1])
    assert z == [Fraction(2), Fraction(1)]


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    assert not in_column_span([[1], [1]], [1, 0])


def test_free_variables_are_zero():
    assert solve([[1, 1, 1]], [2]) == [Fraction(2), Fraction(0), Fraction(0)]


def test_echelon_pivots():
    rows, pivots = echelon([[0, 2, 4], [0, 1, 2], [3, 0, 0]])
    assert pivots == [0, 1]
    assert len(rows) == 2


@settings(max_examples=200)
@given(matrices, st.data())
def test_solve_agrees_with_sympy(a, data):
    b = data.draw(st.lists(st.integers(-3, 3), min_size=len(a), max_size=len(a)))
    z = solve(a, b)
    m = sp.Matrix(a)
    aug = m.row_join(sp.Matrix(b))
    consistent = m.rank() == aug.rank()
    assert (z is not None) == consistent
    if z is not None:
        assert all(sum(row[j] * z[j] for j in range(len(z))) == b[i] for i, row in enumerate(a))
    assert rank(a) == m.rank()
