"""Shared hypothesis strategies: small lattice point sets and polytopes."""
from hypothesis import strategies as st

from laurentvan.polytope import hull


def points(dim, lo=-5, hi=5, min_size=1, max_size=8):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * dim), min_size=min_size, max_size=max_size, unique=True)


@st.composite
def polytopes(draw, dim, lo=-5, hi=5, max_size=8, full=False):
    pts = draw(points(dim, lo, hi, min_size=dim + 1 if full else 1, max_size=max_size))
    P = hull(pts)
    if full:
        from hypothesis import assume
        assume(P.is_full_dimensional)
    return P


@st.composite
def polytope_lists(draw, dim, lo=-5, hi=5, max_size=8):
    return [draw(polytopes(dim, lo, hi, max_size)) for _ in range(dim)]
