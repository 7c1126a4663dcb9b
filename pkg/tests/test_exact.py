from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from laurentvan.exact import (GaussRat, ZeroVectorError, as_rat, is_integer, parse_gauss,
                              primitive_vector)

nonzero_vecs = st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(any)
rats = st.fractions(max_denominator=30)


def test_primitive_vector_examples():
    assert primitive_vector((2, 4, 6)) == (1, 2, 3)
    assert primitive_vector((-3, 6)) == (-1, 2)
    with pytest.raises(ZeroVectorError):
        primitive_vector((0, 0))


def test_is_integer_examples():
    assert is_integer(GaussRat(3))
    assert not is_integer(GaussRat(Fraction(1, 2)))
    assert not is_integer(GaussRat(2, Fraction(1, 3)))


def test_parse_forms():
    assert parse_gauss("1/2") == GaussRat(Fraction(1, 2))
    assert parse_gauss(["1/2", "-3"]) == GaussRat(Fraction(1, 2), -3)
    assert parse_gauss(3) == GaussRat(3)
    assert str(GaussRat(1, 2)) == "1+2i"
    with pytest.raises(ValueError):
        parse_gauss("one half")


@given(nonzero_vecs)
def test_primitive_idempotent(v):
    p = primitive_vector(v)
    assert primitive_vector(p) == p


@given(nonzero_vecs, st.integers(1, 20))
def test_primitive_scaling(v, lam):
    assert primitive_vector([lam * x for x in v]) == primitive_vector(v)


@given(rats, rats, rats, rats)
def test_gauss_field_identities(a, b, c, d):
    z, w = GaussRat(a, b), GaussRat(c, d)
    assert z + w - w == z
    assert (z + w).re * 1 == a + c
    # cross-multiplication identity for the real parts
    if b == 0 and d == 0 and a.denominator and c.denominator:
        s = (z + w).re
        assert s == Fraction(a.numerator * c.denominator + c.numerator * a.denominator,
                             a.denominator * c.denominator)
    if w:
        assert (z / w) * w == z
    assert (z * w).conjugate() == z.conjugate() * w.conjugate()


@given(rats)
def test_round_trip_json(a):
    z = GaussRat(a, -a)
    assert parse_gauss(z.to_json()) == z
    assert as_rat(str(a)) == a
