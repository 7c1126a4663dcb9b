from fractions import Fraction

from hypothesis import assume, given, strategies as st

from laurentvan.exact import GaussRat, dot, is_integer
from laurentvan.nonresonance import (Convention, ParameterVector, check_c_not_integer, check_nonresonance,
                                     m_gamma)
from laurentvan.polytope import cayley_generators, hull, join_polytope

B01 = [[(0,), (1,)]]
c_ = ParameterVector.parse


def test_m_gamma_examples():
    Delta = hull([(0,), (1,)])
    c = c_(["1/3", "1/2"], 1)
    assert m_gamma(B01, Delta.face_of([(1,)]), c) == 1 - GaussRat(Fraction(1, 3)) + Fraction(1, 2)
    assert m_gamma(B01, Delta.face_of([(0,)]), c) == GaussRat(Fraction(1, 3)) - 1
    sq = [[(0, 0), (1, 0), (0, 1), (1, 1)]]
    P = hull(sq[0])
    ones = ParameterVector((1, 1, 0), 1)
    for f in P.facets():
        assert m_gamma(sq, f, ones) == 0


def test_check_nonresonance_examples():
    v = check_nonresonance(B01, c_(["1/3", "1/2"], 1))
    assert v.nonresonant
    assert sorted(str(c.pairing) for c in v.certificates) == ["1/3", "1/6"]
    v = check_nonresonance(B01, c_(["1/2", "1/2"], 1))
    assert not v.nonresonant
    (bad,) = v.failing_facets
    assert bad.conormal == (-1, 1) and bad.pairing == 0
    v = check_nonresonance([[(0, 0), (2, 1), (1, 3)]], c_(["2", "-1", "5"], 1))
    assert len(v.failing_facets) == len(v.certificates) == 3


def test_convention_conversion():
    c5 = ParameterVector.parse(["1/3", "1/2"], 1, "section5")
    assert c5.normalized() == (GaussRat(Fraction(4, 3)), GaussRat(Fraction(-1, 2)))
    assert check_nonresonance(B01, c5).convention is Convention.SECTION5


def test_check_c_not_integer_examples():
    assert check_c_not_integer(c_(["1/2", "0", "0"], 1))
    assert not check_c_not_integer(c_(["3", "-2", "0"], 1))
    assert check_c_not_integer(c_(["0", ["0", "1/2"]], 1))


rat = st.fractions(-3, 3, max_denominator=6)


@st.composite
def instances(draw):
    m = draw(st.integers(1, 2))
    k = draw(st.integers(1, 4 - m))
    Bs = [draw(st.lists(st.tuples(*[st.integers(-2, 2)] * m), min_size=1, max_size=4, unique=True))
          for _ in range(k)]
    c = ParameterVector(tuple(GaussRat(draw(rat), draw(st.sampled_from([0, 0, Fraction(1, 2)])))
                              for _ in range(m + k)), k)
    return Bs, c


def _full(Bs):
    return join_polytope([hull(B) for B in Bs]).dim == len(Bs[0][0]) + len(Bs) - 1


@given(instances())
def test_pairing_agrees_with_m_gamma(args):
    Bs, c = args
    assume(_full(Bs))
    v = check_nonresonance(Bs, c)
    for cert in v.certificates:
        if cert.delta_facet is not None:
            assert is_integer(cert.delta_facet.m_gamma - cert.pairing)


@given(instances(), st.data())
def test_translation_covariance(args, data):
    # B_i -> B_i + t_i multiplies P_i by x^(t_i); the same local system has c_x -> c_x + sum c~_i t_i
    Bs, c = args
    assume(_full(Bs))
    m, k = len(Bs[0][0]), len(Bs)
    shifts = [data.draw(st.tuples(*[st.integers(-3, 3)] * m)) for _ in Bs]
    moved = [[tuple(x + t for x, t in zip(b, s)) for b in B] for B, s in zip(Bs, shifts)]
    cx, ct = list(c.c[:m]), list(c.c[m:])
    for ti, s in zip(ct, shifts):
        cx = [x + ti * sj for x, sj in zip(cx, s)]
    c2 = ParameterVector(tuple(cx + ct), k)
    before = sorted(str(x.pairing) for x in check_nonresonance(Bs, c).certificates)
    after = sorted(str(x.pairing) for x in check_nonresonance(moved, c2).certificates)
    assert before == after
    # with integral c~ the shift of c_x is integral, so the verdict itself is unchanged
    if all(is_integer(x) for x in ct):
        assert check_nonresonance(Bs, c).nonresonant == check_nonresonance(moved, c).nonresonant


@given(instances())
def test_facets_match_join(args):
    Bs, c = args
    assume(_full(Bs))
    J = join_polytope([hull(B) for B in Bs])
    gens = cayley_generators(Bs)
    v = check_nonresonance(Bs, c)
    from_cone = {frozenset(gens[i] for i in cert.generators) & set(J.vertices) for cert in v.certificates}
    assert from_cone == {vs for vs, _, _ in J.facet_data()}


@given(instances(), st.integers(2, 5))
def test_scaling_soundness(args, lam):
    # integrality is only meaningful on primitive conormals: a multiple may turn a pairing integral
    Bs, c = args
    assume(_full(Bs))
    vals = c.normalized()
    for cert in check_nonresonance(Bs, c).certificates:
        scaled = [lam * x for x in cert.conormal]
        pairing = sum((v * a for v, a in zip(vals, scaled)), GaussRat(0))
        assert pairing == cert.pairing * lam
        if cert.resonant:
            assert is_integer(pairing)


@given(instances())
def test_integer_c_always_resonant(args):
    Bs, c = args
    assume(_full(Bs))
    ints = ParameterVector(tuple(GaussRat(int(x.re)) for x in c.c), c.k)
    v = check_nonresonance(Bs, ints)
    assert all(x.resonant for x in v.certificates)
