from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evidirac.lp import phase1


def fixed(columns):
    """Oracle over a fixed column list."""
    def oracle(y):
        best = None
        for key, col in enumerate(columns):
            v = sum(a * b for a, b in zip(y, col))
            if best is None or v > best[0]:
                best = (v, key, col)
        return None if best is None else (best[1], best[2])
    return oracle


def check(b, columns, res):
    if res.feasible:
        for i in range(len(b)):
            assert sum(w * columns[k][i] for k, w in res.weights.items()) == b[i]
        assert all(w > 0 for w in res.weights.values())
    else:
        y = res.duals
        # Farkas: y.b > 0 while y.a <= 0 on every column
        assert sum(a * c for a, c in zip(y, b)) > 0
        assert all(sum(a * c for a, c in zip(y, col)) <= 0 for col in columns)


def test_simple_feasible():
    cols = [(1, 0), (0, 1), (1, 1)]
    res = phase1([2, 3], fixed(cols))
    assert res.feasible
    check([2, 3], cols, res)


def test_simple_infeasible():
    cols = [(1, 1), (2, 2)]
    res = phase1([1, 0], fixed(cols))
    assert not res.feasible
    check([1, 0], cols, res)


def test_rejects_negative_rhs():
    with pytest.raises(ValueError):
        phase1([-1, 0], fixed([(1, 0)]))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_farkas_dichotomy(cols, b):
    cols = [tuple(c) for c in cols]
    res = phase1(b, fixed(cols))
    check([Fraction(x) for x in b], cols, res)


def test_degenerate_cycling_example_terminates():
    # Beale's classic cycling instance written as a feasibility problem
    cols = [(Fraction(1, 4), Fraction(1, 2), 0), (-60, -90, 0), (Fraction(-1, 25), Fraction(-1, 50), 1),
            (9, 3, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    res = phase1([0, 0, 1], fixed(cols))
    assert res.feasible
    check([0, 0, 1], cols, res)


def test_brute_force_agreement_small_grid():
    cols = [(1, 2), (2, 1), (0, 1)]
    for b in product(range(4), repeat=2):
        res = phase1(list(b), fixed(cols))
        brute = any(x * 1 + y * 2 == b[0] and x * 2 + y + z == b[1]
                    for x in [Fraction(i, 6) for i in range(25)]
                    for y in [Fraction(i, 6) for i in range(25)]
                    for z in [Fraction(i, 6) for i in range(25)])
        if brute:
            assert res.feasible
        check(list(b), cols, res)
