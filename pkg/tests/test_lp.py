from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointsel.lp import linear_feasible, satisfies


def test_open_interval():
    w = linear_feasible([([1], ">", 0), ([1], "<", 1)])
    assert w is not None and 0 < w[0] < 1


def test_contradiction():
    assert linear_feasible([([1], ">", 0), ([1], "<", 0)]) is None


def test_equalities():
    assert linear_feasible([([1, 0], "=", 1), ([0, 1], "=", 2)]) == (1, 2)


def test_unicode_aliases():
    w = linear_feasible([([1], "≥", 2), ([1], "≤", 2)])
    assert w == (2,)


def test_unknown_relation():
    with pytest.raises(ValueError):
        linear_feasible([([1], "!=", 0)])


def test_ragged_rows():
    with pytest.raises(ValueError):
        linear_feasible([([1], ">", 0), ([1, 2], "<", 0)])


def test_unbounded_free_variable():
    w = linear_feasible([([1, -1], ">=", 5)])
    assert w is not None and w[0] - w[1] >= 5


def test_strict_against_closed():
    # x >= 0, y >= 0, x + y <= 0 is feasible only at the origin; strictness kills it
    assert linear_feasible([([1, 0], ">=", 0), ([0, 1], ">=", 0), ([1, 1], "<=", 0)]) == (0, 0)
    assert linear_feasible([([1, 0], ">", 0), ([0, 1], ">=", 0), ([1, 1], "<=", 0)]) is None


rows = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=3, max_size=3)
constraint = st.tuples(rows, st.sampled_from([">", ">=", "=", "<=", "<"]), st.fractions(-5, 5, max_denominator=4))


@settings(max_examples=300, deadline=None)
@given(st.lists(constraint, min_size=1, max_size=7))
def test_witness_satisfies_constraints(cons):
    w = linear_feasible(cons)
    if w is not None:
        assert satisfies(cons, w)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.fractions(-5, 5, max_denominator=4), min_size=3, max_size=3),
    st.lists(st.tuples(rows, st.sampled_from([">", ">=", "<=", "<"])), min_size=1, max_size=7),
)
def test_planted_solution_is_found(x, shapes):
    # constraints built to hold at x: the system is feasible, so a witness must exist
    cons = []
    for a, rel in shapes:
        v = sum(ai * xi for ai, xi in zip(a, x))
        bound = {">": v - 1, ">=": v, "<=": v, "<": v + 1}[rel]
        cons.append((a, rel, bound))
    w = linear_feasible(cons)
    assert w is not None and satisfies(cons, w)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(rows, st.fractions(-5, 5, max_denominator=4)), min_size=1, max_size=5))
def test_infeasible_pair_detected(items):
    # a.x >= b together with a.x < b is always infeasible
    cons = []
    for a, b in items:
        cons += [(a, ">=", b)]
    a, b = items[0]
    cons.append((a, "<", b))
    assert linear_feasible(cons) is None
