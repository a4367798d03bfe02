import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from skeinlab.fields import cyclotomic_field, rational_function_field
from skeinlab.linalg import (ExactMatrix, hstack, inverse, nullspace, rank,
                             rref, solve)

F = rational_function_field()


def mat(rows):
    return ExactMatrix.from_rows(
        F, [[F.from_int(x) for x in r] for r in rows], cols=len(rows[0]) if rows else 0)


def test_nullspace_zero_matrix():
    assert len(nullspace(ExactMatrix.zeros(F, 2, 2))) == 2


def test_nullspace_identity():
    assert nullspace(ExactMatrix.identity(F, 3)) == []


def test_nullspace_rank_one():
    m = mat([[1, 1], [2, 2]])
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    # proportional to (1, -1)
    assert (v.get(0, 0) + v.get(1, 0)).is_zero()
    assert (m @ v).is_zero()


def test_rank_examples():
    assert rank(ExactMatrix.identity(F, 4)) == 4
    assert rank(ExactMatrix.zeros(F, 3, 3)) == 0
    outer = mat([[1, 2, 3], [2, 4, 6], [3, 6, 9]])
    assert rank(outer) == 1


def test_inverse_exact():
    m = mat([[1, 2], [3, 5]])
    mi = inverse(m)
    assert (m @ mi - ExactMatrix.identity(F, 2)).is_zero()
    with pytest.raises(ArithmeticError):
        inverse(mat([[1, 2], [2, 4]]))


def test_solve():
    m = mat([[1, 1], [0, 1]])
    b = ExactMatrix(F, 2, 1, (F.from_int(3), F.from_int(1)))
    x = solve(m, b)
    assert (m @ x - b).is_zero()
    inconsistent = solve(mat([[1, 1], [1, 1]]),
                         ExactMatrix(F, 2, 1, (F.one(), F.from_int(2))))
    assert inconsistent is None


def test_cyclotomic_matrix_ops():
    c = cyclotomic_field(4)
    z = c.generator()
    m = ExactMatrix.from_rows(c, [[z, c.one()], [c.zero(), c.one() + z]], cols=2)
    mi = inverse(m)
    assert (m @ mi - ExactMatrix.identity(c, 2)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
                min_size=2, max_size=4))
def test_rank_nullity(rows):
    m = mat(rows)
    ns = nullspace(m)
    assert rank(m) + len(ns) == m.cols
    for v in ns:
        assert (m @ v).is_zero()
