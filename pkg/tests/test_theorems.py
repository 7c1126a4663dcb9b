from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from laurentvan.exact import GaussRat
from laurentvan.laurent import LaurentPoly, LaurentSystem
from laurentvan.nonresonance import ParameterVector
from laurentvan.nondegeneracy import DimensionHypothesis
from laurentvan.polytope import hull
from laurentvan.theorems import (HStatus, bkk_euler, euler_complement, nvtm_dimension, predict,
                                 verify_morse_count)

F = Fraction
SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
SIMPLEX = hull([(0, 0), (1, 0), (0, 1)])
SEG = LaurentPoly({(0,): 1, (1,): 2, (2,): 1})
GENERIC_SQUARE = LaurentPoly.generic([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_bkk_euler_examples():
    assert bkk_euler([SQUARE]) == -2
    assert bkk_euler([SIMPLEX, SQUARE]) == 2
    for L in range(1, 6):
        assert bkk_euler([hull([(0,), (L,)])]) == L


def test_euler_complement_examples():
    assert euler_complement(LaurentSystem((GENERIC_SQUARE,))).chi_complement == 2
    for L in range(1, 5):
        P = LaurentPoly({(i,): 1 for i in range(L + 1)}, 1)  # L distinct roots of unity
        rep = euler_complement(LaurentSystem((P,)))
        assert rep.chi_complement == -L
    two = LaurentSystem((LaurentPoly.generic([(0, 0), (1, 0), (0, 1)]), GENERIC_SQUARE))
    rep = euler_complement(two)
    # chi(W) = -chi(Z_1) - chi(Z_2) + chi(Z_12) = -(-1) - (-2) + 2
    assert rep.chi_strata == {(0,): -1, (1,): -2, (0, 1): 2}
    assert rep.chi_complement == 5


def test_predict_segment_example():
    pred = predict(LaurentSystem((SEG,)), ParameterVector((F(1, 3), F(1, 2)), 1))
    v = pred.verdict
    assert v.theorem == "VTM" and v.label == "applicable"
    assert v.concentration_degree == 1 and v.predicted_dimension == 1
    assert v.euler["chi_complement"] == -1 and v.euler["coherent"]
    assert [t.theorem for t in pred.tried] == ["NTM", "VTM"]


def test_predict_generic_square():
    v = predict(LaurentSystem((GENERIC_SQUARE,)), ParameterVector((F(1, 3), F(1, 5), F(1, 7)), 1), "vtm").verdict
    assert v.label == "conditionally applicable"
    assert v.concentration_degree == 2 and v.predicted_dimension == 2
    assert v.euler["chi_complement"] == 2


def test_ntm_integer_c():
    sq = LaurentPoly({(0, 0): 1, (1, 0): 2, (0, 1): 3, (1, 1): 5}, 2)
    v = predict(LaurentSystem((sq,)), ParameterVector((1, 2, 3), 1), "ntm").verdict
    failing = [h.name for h in v.hypotheses if h.status is HStatus.FAIL]
    assert failing == ["(c, c~) not in Z^n"]
    assert v.predicted_dimension is None


def test_nvtm_dimension_examples():
    assert nvtm_dimension([SQUARE], 2) == 2
    # Vol(square, square) = 2 is the single composition (1, 1) of the sum
    assert nvtm_dimension([SQUARE, SQUARE], 2) == 2
    assert nvtm_dimension([SQUARE, SQUARE.dilate(2)], 2) == 4
    with pytest.raises(DimensionHypothesis):
        nvtm_dimension([hull([(0, 0), (1, 1)])], 2)


def test_morse_examples():
    h = LaurentPoly({(0,): 3, (1,): 7})
    rep = verify_morse_count(h, trials=5, seed=1)
    assert rep.rate == 1.0 and all(t.count == 1 for t in rep.trials)
    bil = LaurentPoly({(0, 0): 2, (1, 0): -3, (0, 1): 5, (1, 1): 7}, 2)
    rep = verify_morse_count(bil, trials=4, seed=2)
    assert all(t.count == 2 for t in rep.trials)
    rep = verify_morse_count(LaurentPoly({(2, 1): 1}, 2), trials=3, seed=3)
    assert all(t.count == 0 and t.volume == 0 for t in rep.trials)


# ---------------------------------------------------------------------------

rat = st.fractions(-2, 2, max_denominator=7)


@st.composite
def segment_instances(draw):
    L = draw(st.integers(1, 3))
    coeffs = {(i,): draw(st.integers(-3, 3)) for i in range(L + 1)}
    coeffs[(0,)] = coeffs[(0,)] or 1
    coeffs[(L,)] = coeffs[(L,)] or 1
    c = ParameterVector((draw(rat), draw(rat)), 1)
    return LaurentSystem((LaurentPoly(coeffs, 1),)), c


@settings(max_examples=25)
@given(segment_instances())
def test_sign_coherence(inst):
    sys, c = inst
    v = predict(sys, c).verdict
    if v is None or v.theorem not in ("VTM", "MVTM") or not isinstance(v.predicted_dimension, int):
        return
    chi = euler_complement(sys).chi_complement
    if chi is not None:
        assert v.predicted_dimension == (-1) ** v.concentration_degree * chi


@settings(max_examples=25)
@given(segment_instances())
def test_auto_is_deterministic(inst):
    sys, c = inst
    assert predict(sys, c).to_json() == predict(sys, c).to_json()


@settings(max_examples=25)
@given(st.integers(1, 2).flatmap(lambda n: st.lists(
    st.lists(st.tuples(*[st.integers(0, 2)] * n), min_size=n + 1, max_size=5, unique=True), min_size=1, max_size=n)))
def test_nvtm_vs_bkk(supports):
    n = len(supports[0][0])
    Ps = [hull(B) for B in supports]
    if any(P.dim != n for P in Ps):
        return
    assert nvtm_dimension(Ps, n) == (-1) ** (n - len(Ps)) * bkk_euler(Ps, n)


@settings(max_examples=20)
@given(st.sampled_from(["vtm", "mvtm", "svtm", "smvtm", "ssmvtm", "ntm", "nvtm"]), rat, rat, rat)
def test_assumed_means_conditional(name, a, b, d):
    v = predict(LaurentSystem((GENERIC_SQUARE,)), ParameterVector((a, b, d), 1), name).verdict
    if any(h.status is HStatus.ASSUMED for h in v.hypotheses) and v.applicable:
        assert v.conditional and v.label == "conditionally applicable"
    if not v.applicable:
        assert v.predicted_dimension is None
