from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import Rational
from sympy.solvers import simplex as sym

from sheafwalls import lp


def test_textbook_maximum():
    # max 3x + 2y s.t. x + y <= 4, x + 3y <= 6
    res = lp.linprog([3, 2], [[1, 1], [1, 3]], [4, 6])
    assert res.status == lp.OPTIMAL
    assert res.value == 12
    assert res.x == [4, 0]


def test_fractional_optimum():
    res = lp.linprog([1, 1], [[2, 1], [1, 3]], [4, 6])
    assert res.value == Fraction(14, 5)


def test_free_variable_and_equality():
    # max -x subject to x = -3, x free
    res = lp.linprog([-1], A_eq=[[1]], b_eq=[-3], free=[0])
    assert res.status == lp.OPTIMAL
    assert res.value == 3
    assert res.x == [-3]


def test_infeasible_and_unbounded():
    assert lp.linprog([1], [[1], [-1]], [1, -2]).status == lp.INFEASIBLE
    assert lp.linprog([1, 0], [[-1, 1]], [1]).status == lp.UNBOUNDED


def test_redundant_equalities():
    res = lp.linprog([1, 1], A_ub=[[1, 0]], b_ub=[5], A_eq=[[1, 1], [2, 2]], b_eq=[3, 6])
    assert res.status == lp.OPTIMAL and res.value == 3


def test_row_length_checked():
    with pytest.raises(ValueError):
        lp.linprog([1, 1], [[1]], [1])


small = st.integers(-4, 4)


@given(
    st.integers(1, 3).flatmap(
        lambda nv: st.tuples(
            st.lists(small, min_size=nv, max_size=nv),
            st.lists(st.lists(small, min_size=nv, max_size=nv), min_size=1, max_size=4),
            st.lists(st.integers(-3, 6), min_size=4, max_size=4),
            st.lists(st.lists(small, min_size=nv, max_size=nv), max_size=1),
            st.integers(-3, 3),
        )
    )
)
def test_matches_sympy(data):
    c, A, b, Aeq, beq = data
    b = b[: len(A)]
    b_eq = [beq] * len(Aeq)
    ours = lp.linprog(c, A, b, Aeq, b_eq)
    try:
        # sympy minimizes
        value, _ = sym.linprog(
            [-v for v in c], A, b, Aeq or None, b_eq or None
        )
    except sym.InfeasibleLPError:
        assert ours.status == lp.INFEASIBLE
        return
    except sym.UnboundedLPError:
        assert ours.status == lp.UNBOUNDED
        return
    assert ours.status == lp.OPTIMAL
    assert Rational(ours.value.numerator, ours.value.denominator) == -value
    # the returned point is feasible and attains the value
    x = ours.x
    assert all(v >= 0 for v in x)
    for row, rhs in zip(A, b):
        assert sum(r * v for r, v in zip(row, x)) <= rhs
    for row in Aeq:
        assert sum(r * v for r, v in zip(row, x)) == beq
    assert sum(ci * v for ci, v in zip(c, x)) == ours.value
