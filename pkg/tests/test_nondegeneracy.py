from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from laurentvan.exact import GaussRat
from laurentvan.laurent import LaurentPoly, LaurentSystem
from laurentvan.nondegeneracy import (Level, Status, check_level, check_nondegenerate_ci, check_strong,
                                      check_weak, milnor_number_plane, newton_nondegenerate_at_origin,
                                      singular_locus_hypersurface)
from laurentvan.polytope import minkowski_sum
from laurentvan.theorems import euler_complement
from laurentvan.volume import normalized_volume

X = LaurentPoly({(1, 0): 1}, 2)
Y = LaurentPoly({(0, 1): 1}, 2)
ONE = LaurentPoly({(0, 0): 1}, 2)
SEG = LaurentPoly({(0,): 1, (1,): 2, (2,): 1})


def const(c, dim=2):
    return LaurentPoly({(0,) * dim: c}, dim)


def test_check_nondegenerate_ci_examples():
    sys = LaurentSystem((SEG,))
    N = sys.newton_polytopes()[0]
    assert check_nondegenerate_ci(sys, N.face_of([(2,)]), [0]).status is Status.PASS
    res = check_nondegenerate_ci(sys, N.face_of(N.vertices), [0])
    assert res.status is Status.FAIL
    assert res.witness == [[["-1", "0"]]]
    pair = LaurentSystem((X + Y - const(2), X - Y))
    total = minkowski_sum(pair.newton_polytopes())
    assert check_nondegenerate_ci(pair, total.face_of(total.vertices), [0, 1]).status is Status.PASS


def test_weak_strong_segment():
    sys = LaurentSystem((SEG,))
    weak, strong = check_weak(sys), check_strong(sys)
    assert weak.status is Status.PASS and weak.label == "pass"
    assert strong.status is Status.FAIL and len(strong.failing()) == 1


def test_generic_mode_is_conditional():
    sq = LaurentPoly.generic([(0, 0), (1, 0), (0, 1), (1, 1)])
    rep = check_weak(LaurentSystem((sq,)))
    assert rep.status is Status.ASSUMED_GENERIC
    assert rep.passed and rep.conditional and rep.label == "conditional"
    # vertex parts are monomials, smooth for any coefficient; the rest rely on genericity
    for r in rep.per_face:
        expected = Status.PASS if r.face_dim == 0 else Status.ASSUMED_GENERIC
        assert r.status is expected


def test_square_edge_face_passes():
    sq = ONE + X + Y + X * Y
    rep = check_weak(LaurentSystem((sq,)))
    edge = [r for r in rep.per_face if set(r.face) == {(0, 0), (1, 0)}]
    assert edge and edge[0].status is Status.PASS


def test_singular_locus_examples():
    rep = singular_locus_hypersurface(SEG)
    assert rep.status is Status.FAIL and rep.singular_points == [[GaussRat(-1)]]
    assert rep.milnor_numbers == [1]
    assert singular_locus_hypersurface(X + Y - const(2)).singular_points == []
    conic = X * X - X.scale(GaussRat(2)) + Y * Y - Y.scale(GaussRat(2)) + const(2)
    rep = singular_locus_hypersurface(conic)
    assert rep.singular_points == [[GaussRat(1), GaussRat(1)]]


def test_milnor_number_plane():
    node = (X - ONE) ** 2 - (Y - ONE) ** 2
    cusp = (X - ONE) ** 2 - (Y - ONE) ** 3
    assert milnor_number_plane(node, [1, 1]) == 1
    assert milnor_number_plane(cusp, [1, 1]) == 2
    from laurentvan.elimination import NotSingular
    with pytest.raises(NotSingular):
        milnor_number_plane(node, [2, 3])


def test_newton_nondegenerate_at_origin_examples():
    cusp = LaurentPoly({(2, 0): 1, (0, 3): 1}, 2)
    assert newton_nondegenerate_at_origin(cusp).status is Status.PASS
    double = (X + Y) ** 2
    assert newton_nondegenerate_at_origin(double).status is Status.FAIL
    assert newton_nondegenerate_at_origin(X).status is Status.PASS


# ---------------------------------------------------------------------------

nonzero = st.integers(-4, 4).filter(bool)


@st.composite
def exact_plane_systems(draw):
    k = draw(st.integers(1, 2))
    polys = []
    for _ in range(k):
        supp = draw(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=2, max_size=4, unique=True))
        polys.append(LaurentPoly({v: draw(nonzero) for v in supp}, 2))
    return LaurentSystem(tuple(polys))


@given(exact_plane_systems())
def test_strong_implies_weak(sys):
    if minkowski_sum(sys.newton_polytopes()).dim != 2:
        return
    strong, weak = check_strong(sys), check_weak(sys)
    if strong.status is Status.PASS:
        assert weak.status is Status.PASS
    # every weak record also appears among the strong records
    key = lambda r: (r.face, r.subset, r.status)
    assert {key(r) for r in weak.per_face} <= {key(r) for r in strong.per_face}


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6).filter(lambda c: c[0] and c[-1]))
def test_univariate_weak_always_passes(cs):
    # the proper faces of a segment are its endpoints, whose coefficients are nonzero
    P = LaurentPoly({(i,): c for i, c in enumerate(cs) if c}, 1)
    assert check_weak(LaurentSystem((P,))).status is Status.PASS


@given(st.lists(st.fractions(-3, 3, max_denominator=3).filter(bool), min_size=1, max_size=3),
       st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_milnor_consistency_univariate(roots, mults):
    # Vol(Delta) - sum mu = (-1)^(n-1) chi(W) with chi from point counting, an independent path
    roots = list(dict.fromkeys(roots))
    P = LaurentPoly({(0,): 1}, 1)
    for r, m in zip(roots, mults):
        P = P * LaurentPoly({(1,): 1, (0,): -r}, 1) ** m
    loc = singular_locus_hypersurface(P)
    vol = normalized_volume(LaurentSystem((P,)).newton_polytopes()[0])
    chi = euler_complement(LaurentSystem((P,))).chi_complement
    assert vol - loc.milnor_total == -chi == len(roots)


@given(exact_plane_systems())
def test_check_level_labels(sys):
    if minkowski_sum(sys.newton_polytopes()).dim != 2:
        return
    rep = check_level(sys, "weak")
    assert rep.level is Level.WEAK
    assert rep.label in ("pass", "fail", "undecided")
    if rep.status is Status.FAIL:
        assert rep.failing()
