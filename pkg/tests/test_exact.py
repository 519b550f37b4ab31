from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from plumbcalc.exact import bareiss_echelon, determinant, leading_minors, nullspace, primitive_vector, solve_square

small_ints = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
@settings(max_examples=150, deadline=None)
def test_determinant_matches_sympy(m):
    assert determinant(m) == sympy.Matrix(m).det()


@given(st.tuples(st.integers(1, 4), st.integers(1, 6)).flatmap(lambda s: matrices(*s)))
@settings(max_examples=150, deadline=None)
def test_nullspace_dimension_and_annihilation(m):
    basis = nullspace(m)
    assert len(basis) == len(m[0]) - sympy.Matrix(m).rank()
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
    if basis:
        assert sympy.Matrix([list(v) for v in basis]).rank() == len(basis)


def test_bareiss_entries_stay_integral():
    ech, piv = bareiss_echelon([[2, 4, 1], [3, 1, 5], [7, 2, 2]])
    assert piv == [0, 1, 2]
    assert all(isinstance(v, int) for row in ech for v in row)
    # last pivot of full-rank Bareiss is the determinant up to row swaps
    assert abs(ech[2][2]) == abs(determinant([[2, 4, 1], [3, 1, 5], [7, 2, 2]]))


def test_leading_minors():
    assert leading_minors([[-2, 1], [1, -2]]) == [-2, 3]
    assert leading_minors([[-1, 1], [1, -1]]) == [-1, 0]


def test_primitive_vector():
    assert primitive_vector([Fraction(3, 2), Fraction(1), Fraction(3)]) == [3, 2, 6]
    assert primitive_vector([-4, 6]) == [-2, 3]
    with pytest.raises(ValueError):
        primitive_vector([0, 0])


def test_solve_square():
    assert solve_square([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(ZeroDivisionError):
        solve_square([[1, 2], [2, 4]], [1, 1])
