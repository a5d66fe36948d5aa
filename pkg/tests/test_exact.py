"""Exact linear algebra against naive oracles and frozen cases."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tverberg.exact import (
    DimensionError,
    Matrix,
    SingularMatrixError,
    det,
    det_sign,
    rank,
    scalar,
    scalar_str,
    solve_linear,
)

from oracle_utils import det_by_expansion, rank_by_elimination, solve_by_gauss

small_fraction = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=12
)


def square_matrices(max_n=5):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(
            st.lists(small_fraction, min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )


def test_scalar_accepts_int_str_fraction():
    assert scalar(3) == Fraction(3)
    assert scalar("3/4") == Fraction(3, 4)
    assert scalar(Fraction(-2, 7)) == Fraction(-2, 7)
    with pytest.raises(TypeError):
        scalar(0.5)


def test_scalar_str_round_trip():
    for value in (Fraction(0), Fraction(5), Fraction(-3, 8), Fraction(10**40, 7)):
        assert scalar(scalar_str(value)) == value


def test_matrix_is_immutable():
    m = Matrix([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = 3


def test_matrix_rejects_ragged_rows():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])


def test_matrix_with_column():
    m = Matrix([[1, 2], [3, 4]])
    replaced = m.with_column(1, [9, 9])
    assert replaced == Matrix([[1, 9], [3, 9]])
    assert m == Matrix([[1, 2], [3, 4]])
    assert m.column(0) == (Fraction(1), Fraction(3))


def test_det_frozen_values():
    assert det(Matrix.identity(3)) == 1
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[5]])) == 5
    assert det(Matrix([[1, 2], [2, 4]])) == 0
    assert det(Matrix([["1/2", "1/3"], ["1/4", "1/5"]])) == Fraction(1, 60)


def test_det_sign_values():
    assert det_sign(Matrix.identity(4)) == 1
    assert det_sign(Matrix([[1, 2], [3, 4]])) == -1
    assert det_sign(Matrix.zeros(2, 2)) == 0


def test_det_requires_square():
    with pytest.raises(DimensionError):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


@given(square_matrices())
def test_det_matches_permutation_expansion(rows):
    assert det(Matrix(rows)) == det_by_expansion(rows)


@given(square_matrices(max_n=4), st.data())
def test_det_row_swap_flips_sign(rows, data):
    n = len(rows)
    if n < 2:
        return
    i = data.draw(st.integers(min_value=0, max_value=n - 2))
    j = data.draw(st.integers(min_value=i + 1, max_value=n - 1))
    swapped = list(rows)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    assert det(Matrix(swapped)) == -det(Matrix(rows))


@given(square_matrices(max_n=4), st.lists(small_fraction, min_size=1, max_size=4))
@settings(max_examples=60)
def test_solve_agrees_with_gauss_oracle(rows, rhs_pool):
    n = len(rows)
    rhs = (rhs_pool * n)[:n]
    m = Matrix(rows)
    expected = solve_by_gauss(rows, rhs)
    if expected is None:
        with pytest.raises(SingularMatrixError):
            solve_linear(m, rhs)
    else:
        got = solve_linear(m, rhs)
        assert got == expected
        assert m.mul_vec(got) == tuple(Fraction(b) for b in rhs)


def test_solve_rejects_singular():
    with pytest.raises(SingularMatrixError):
        solve_linear(Matrix([[1, 2], [2, 4]]), [1, 1])


def test_rank_frozen_values():
    assert rank(Matrix([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(2, 3)) == 0
    assert rank(Matrix([[1, 0, 2], [0, 1, 3]])) == 2


@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda r: st.integers(min_value=1, max_value=4).flatmap(
            lambda c: st.lists(
                st.lists(small_fraction, min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )
)
def test_rank_matches_elimination_oracle(rows):
    assert rank(Matrix(rows)) == rank_by_elimination(rows)


def test_large_integer_det_is_exact():
    # entries around 2**600 stress the fraction-free elimination path
    big = 2**600
    m = Matrix([[big, big + 1], [big - 1, big]])
    assert det(m) == big**2 - (big + 1) * (big - 1)
    assert det(m) == 1
