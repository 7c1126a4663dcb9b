import random
from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from laurentvan.exact import dot, primitive_vector
from laurentvan.polytope import (DimensionMismatch, NotAFace, cayley_cone, dual_cone, dual_fan,
                                 face_decompose, facet_conormal, hull, join_polytope, minkowski_sum,
                                 orthant_polyhedron, similar, supporting_face)

from strategies import points, polytopes

SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
SIMPLEX = hull([(0, 0), (1, 0), (0, 1)])
PENTAGON = [(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)]


def brute_vertices(pts):
    """Extreme points by brute force: p is a vertex iff some integer u has p as unique minimizer."""
    out = set()
    rng = range(-6, 7)
    d = len(pts[0])
    dirs = [u for u in __import__("itertools").product(rng, repeat=d) if any(u)]
    for p in pts:
        for u in dirs:
            if all(dot(u, p) < dot(u, q) for q in pts if q != p):
                out.add(p)
                break
    return out


def test_hull_examples():
    P = hull([(0, 0), (2, 0), (0, 2), (1, 1)])
    # (1,1) lies on the edge from (2,0) to (0,2), so it is not a vertex
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)} == brute_vertices([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert P.dim == 2
    pt = hull([(5, 7)])
    assert pt.vertices == ((5, 7),) and pt.dim == 0
    seg = hull([(0,), (3,)])
    assert seg.dim == 1 and len(seg.vertices) == 2


def test_hull_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatch):
        hull([(0, 0), (1,)])


def test_supporting_face_examples():
    assert supporting_face(SQUARE, (1, 1)).vertices == {(0, 0)}
    assert supporting_face(SQUARE, (1, 0)).vertices == {(0, 0), (0, 1)}
    assert supporting_face(SQUARE, (0, 0)).vertices == set(SQUARE.vertices)


def test_face_counts():
    faces = SQUARE.faces()
    assert len(faces) == 9
    assert sorted(f.dim for f in faces) == [0] * 4 + [1] * 4 + [2]
    assert len(hull([(0,), (1,)]).faces()) == 3
    assert len(hull([(3, 3)]).faces()) == 1


def test_face_lattice_against_brute_force():
    # every supporting face over a grid of covectors is in the lattice, and vice versa
    P = hull(PENTAGON)
    seen = {supporting_face(P, u).vertices for u in __import__("itertools").product(range(-3, 4), repeat=2)}
    assert seen == {f.vertices for f in P.faces()}


def test_dual_fan_square():
    fan = dual_fan(SQUARE)
    assert len(fan.maximal_cones()) == 4
    assert all(c.dim == 2 for c in fan.maximal_cones())
    assert set(fan.rays()) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    top = fan.cone_of(SQUARE.face_of(SQUARE.vertices))
    assert top.dim == 0 and top.rays == ()
    assert fan.cone_of(SQUARE.face_of([(0, 0)])).rays == ((0, 1), (1, 0))


def test_dual_fan_segment_and_point():
    seg = hull([(0,), (1,)])
    fan = dual_fan(seg)
    assert fan.cone_of(seg.face_of([(0,)])).rays == ((1,),)
    assert fan.cone_of(seg.face_of([(1,)])).rays == ((-1,),)
    pt = hull([(2, 2)])
    cones = dual_fan(pt).cones
    assert len(cones) == 1 and cones[0].dim == 2 and len(cones[0].lineality) == 2


def test_minkowski_examples():
    S = minkowski_sum([SIMPLEX, SQUARE])
    assert set(S.vertices) == set(PENTAGON)
    assert minkowski_sum([SQUARE, hull([(3, -1)])]) == SQUARE.translate((3, -1))
    R = minkowski_sum([hull([(0, 0), (3, 0)]), hull([(0, 0), (0, 2)])])
    assert set(R.vertices) == {(0, 0), (3, 0), (0, 2), (3, 2)}


def test_face_decompose_examples():
    S = minkowski_sum([SIMPLEX, SQUARE])
    g1, g2 = face_decompose([SIMPLEX, SQUARE], S.face_of([(2, 1), (1, 2)]), S)
    assert g1.vertices == {(1, 0), (0, 1)} and g2.vertices == {(1, 1)}
    whole = face_decompose([SIMPLEX, SQUARE], S.face_of(S.vertices), S)
    assert [f.vertices for f in whole] == [set(SIMPLEX.vertices), set(SQUARE.vertices)]
    corner = face_decompose([SIMPLEX, SQUARE], S.face_of([(0, 0)]), S)
    assert [f.vertices for f in corner] == [{(0, 0)}, {(0, 0)}]
    with pytest.raises(NotAFace):
        face_decompose([SIMPLEX, SQUARE], SQUARE.face_of([(1, 1)]), S)


def test_facet_conormal_examples():
    seg = hull([(0,), (1,)])
    assert facet_conormal(seg, seg.face_of([(1,)])) == ((-1,), -1)
    assert facet_conormal(SQUARE, SQUARE.face_of([(0, 0), (0, 1)])) == ((1, 0), 0)
    P = hull(PENTAGON)
    assert facet_conormal(P, P.face_of([(2, 1), (1, 2)])) == ((-1, -1), -3)


def test_cayley_examples():
    K = cayley_cone([[(0,), (1,)]])
    assert set(K.facet_conormals) == {(1, 0), (-1, 1)}
    K = cayley_cone([SQUARE.vertices])
    assert set(K.facet_conormals) == {(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)}
    K = cayley_cone([[(0,), (1,)], [(0,), (1,)]])
    assert len(K.facet_conormals) == 4


def test_join_examples():
    seg = hull([(0,), (1,)])
    J = join_polytope([seg, seg])
    assert set(J.vertices) == {(0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1)}
    assert set(join_polytope([SQUARE]).vertices) == {v + (1,) for v in SQUARE.vertices}
    J = join_polytope([SIMPLEX, SQUARE])
    assert len(J.vertices) == 7 and J.ambient_dim == 4


def test_similar():
    assert similar(SQUARE, SQUARE.dilate(3).translate((1, -2)))
    assert not similar(SQUARE, SIMPLEX)
    assert not similar(SQUARE, hull([(0, 0), (2, 0), (0, 1), (2, 1)]))
    assert similar(hull([(0, 0), (1, 0), (0, 1)]), hull([(0, 0), (2, 0), (0, 2)]))


def test_orthant_polyhedron_cusp():
    poly = orthant_polyhedron([(2, 0), (0, 3)])
    assert [(u, m) for u, m, _ in poly.compact_facets()] == [((3, 2), 6)]


# ---------------------------------------------------------------------------
# properties

@given(polytopes(2), st.data())
def test_duality(P, data):
    for f in P.faces():
        u = dual_cone(P, f).interior_point()
        assert supporting_face(P, u) == f


@given(polytopes(3, lo=-3, hi=3, max_size=7))
def test_duality_3d(P):
    for f in P.faces():
        u = dual_cone(P, f).interior_point()
        assert supporting_face(P, u).vertices == f.vertices


@given(polytopes(2, full=True), st.randoms(use_true_random=False))
def test_fan_completeness(P, rnd):
    fan = dual_fan(P)
    maximal = fan.maximal_cones()
    for _ in range(50):
        u = (rnd.randint(-20, 20), rnd.randint(-20, 20))
        hits = [c for c in maximal if c.contains(u)]
        assert hits
        face = supporting_face(P, u)
        assert any(c.face.vertices <= face.vertices for c in hits)
        generic = [c for c in hits if c.face == face]
        if face.dim == 0:
            assert generic


def test_fan_completeness_many_directions():
    rnd = random.Random(7)
    P = hull(PENTAGON)
    maximal = dual_fan(P).maximal_cones()
    for _ in range(1000):
        u = (rnd.randint(-50, 50), rnd.randint(-50, 50))
        face = supporting_face(P, u)
        hits = [c for c in maximal if c.contains(u)]
        assert hits
        if face.dim == 0:
            assert [c.face for c in hits] == [face]


@given(polytopes(2), polytopes(2))
def test_minkowski_face_additivity(P, Q):
    S = minkowski_sum([P, Q])
    for f in S.faces():
        parts = face_decompose([P, Q], f, S)
        assert set(minkowski_sum([g.as_polytope() for g in parts]).vertices) == set(f.vertices)


@given(polytopes(2, full=True))
def test_facet_conormal_soundness(P):
    for f in P.facets():
        nu, m = facet_conormal(P, f)
        assert primitive_vector(nu) == nu
        vals = {v: dot(nu, v) - m for v in P.vertices}
        assert all(x >= 0 for x in vals.values())
        assert {v for v, x in vals.items() if x == 0} == f.vertices


@given(st.lists(points(1, -3, 3, min_size=2, max_size=4), min_size=1, max_size=2))
def test_cayley_consistency_1d(Bs):
    _check_cayley(Bs)


@given(st.lists(points(2, -2, 2, min_size=3, max_size=5), min_size=1, max_size=2))
def test_cayley_consistency_2d(Bs):
    _check_cayley(Bs)


def _check_cayley(Bs):
    J = join_polytope([hull(B) for B in Bs])
    # J lies in the hyperplane sum(e-coordinates) = 1, so K is full-dimensional iff J has codimension one
    assume(J.dim == J.ambient_dim - 1)
    K = cayley_cone(Bs)
    # facets of the cone over a polytope at height one are the cones over its facets
    cone_facets = {frozenset(K.generators[i] for i in gens) for _, gens in K.facets()}
    cone_facets = {frozenset(g for g in fs if g in set(J.vertices)) for fs in cone_facets}
    assert cone_facets == {vs for vs, _, _ in J.facet_data()}
