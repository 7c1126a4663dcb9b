from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from laurentvan.elimination import (NonIsolated, NotSingular, count_torus_solutions, milnor_at,
                                    milnor_total, torus_ideal)
from laurentvan.exact import GaussRat
from laurentvan.laurent import LaurentPoly

X = LaurentPoly({(1, 0): 1}, 2)
Y = LaurentPoly({(0, 1): 1}, 2)
ONE = LaurentPoly({(0, 0): 1}, 2)


def const(c):
    return ONE.scale(GaussRat.coerce(c))


def prod_linear(var, roots):
    out = ONE
    for r in roots:
        out = out * (var - const(r))
    return out


def test_univariate_counts():
    p = LaurentPoly({(0,): 1, (1,): 2, (2,): 1})
    assert count_torus_solutions([p]) == (2, 1)
    # roots at 0 are outside the torus
    q = LaurentPoly({(1,): 1, (2,): -1})
    assert count_torus_solutions([q]) == (1, 1)


def test_gaussian_roots():
    p = LaurentPoly({(0,): 1, (2,): 1})  # x^2 + 1
    assert count_torus_solutions([p]) == (2, 2)
    pts = torus_ideal([p]).points()
    assert len(pts) == 2


def test_non_isolated():
    with pytest.raises(NonIsolated):
        count_torus_solutions([X - Y])


nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(bool)


@given(st.lists(nonzero, min_size=1, max_size=3), st.lists(st.integers(0, 2), min_size=1, max_size=3),
       st.integers(-2, 2).filter(bool))
def test_triangular_systems(roots, mults, c):
    # f(x) = prod (x - r)^m, g = y - c x: solutions are (r, c r), with total multiplicity sum m
    mults = (mults * 3)[:len(roots)]
    roots = list(dict.fromkeys(roots))
    mults = [m + 1 for m in mults[:len(roots)]]
    f = ONE
    for r, m in zip(roots, mults):
        f = f * prod_linear(X, [r] * m)
    g = Y - X.scale(GaussRat(c))
    assert count_torus_solutions([f, g]) == (sum(mults), len(roots))


@given(st.lists(nonzero, min_size=1, max_size=3, unique=True), st.lists(nonzero, min_size=1, max_size=2, unique=True))
def test_product_grids(xs, ys):
    f, g = prod_linear(X, xs), prod_linear(Y, ys)
    assert count_torus_solutions([f, g]) == (len(xs) * len(ys),) * 2


def test_avoid_removes_points():
    f, g = prod_linear(X, [1, 2]), Y - ONE
    assert count_torus_solutions([f, g], avoid=[X - const(2)]) == (1, 1)


def test_milnor_examples():
    node = (X - ONE) ** 2 - (Y - ONE) ** 2 + (X - ONE) ** 3
    cusp = (X - ONE) ** 2 - (Y - ONE) ** 3
    assert milnor_at(node, [1, 1]) == 1
    assert milnor_at(cusp, [1, 1]) == 2
    assert milnor_total(cusp) == 2
    with pytest.raises(NotSingular):
        milnor_at(X + Y - const(2), [1, 1])
    # a_k singularity y^2 = x^(k+1) has mu = k
    for k in (1, 2, 3, 4):
        ak = (Y - ONE) ** 2 - (X - ONE) ** (k + 1)
        assert milnor_at(ak, [1, 1]) == k


def test_milnor_total_sums_points():
    # the line x = y meets the circle about (2, 2) of radius sqrt 2 transversally at (1, 1) and (3, 3)
    circle = (X - const(2)) ** 2 + (Y - const(2)) ** 2 - const(2)
    f = (X - Y) * circle
    assert milnor_total(f) == 2
    assert milnor_at(f, [1, 1]) == 1 and milnor_at(f, [3, 3]) == 1
    with pytest.raises(NonIsolated):
        milnor_total((X - Y) ** 2)
