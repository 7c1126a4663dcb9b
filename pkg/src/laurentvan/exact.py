"""Exact scalars and integer vectors.

Rationals are :class:`fractions.Fraction`; Gaussian rationals are a thin
immutable pair of them.  Every predicate here is exact, which is the whole
point: resonance and membership tests are integrality questions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

Rat = Fraction
IntVec = Tuple[int, ...]

RatLike = Union[int, Fraction, str]


class ZeroVectorError(ValueError):
    """Raised when a primitive direction is requested for the zero vector."""


def as_rat(x: RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_to_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """A complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", as_rat(re))
        object.__setattr__(self, "im", as_rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not accepted")
        if isinstance(x, (list, tuple)):
            if len(x) != 2:
                raise ValueError(f"a Gaussian rational needs [re, im], got {x!r}")
            return cls(x[0], x[1])
        return cls(x, 0)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat((self.re * o.re + self.im * o.im) / den,
                        (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussRat(1) / (self ** (-k))
        out, base = GaussRat(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    # comparisons ------------------------------------------------------
    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"GaussRat({rat_to_str(self.re)})"
        return f"GaussRat({rat_to_str(self.re)}, {rat_to_str(self.im)})"

    def __str__(self):
        if self.im == 0:
            return rat_to_str(self.re)
        return f"{rat_to_str(self.re)}{'+' if self.im >= 0 else '-'}{rat_to_str(abs(self.im))}i"

    def to_json(self) -> list:
        return [rat_to_str(self.re), rat_to_str(self.im)]

    def to_sympy(self):
        import sympy

        return sympy.Rational(self.re.numerator, self.re.denominator) + sympy.I * sympy.Rational(
            self.im.numerator, self.im.denominator)


def _coerce_or_none(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussRat(x)
    return None


def is_integer(z) -> bool:
    """True iff ``z`` is a rational integer (zero imaginary part, denominator 1)."""
    z = GaussRat.coerce(z)
    return z.im == 0 and z.re.denominator == 1


def parse_gauss(value) -> GaussRat:
    """Parse ``[re, im]``, ``"p/q"`` or an int into a :class:`GaussRat`."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass rationals as strings like '1/3'")
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"expected [re, im], got {value!r}")
        if any(isinstance(v, float) for v in value):
            raise TypeError("floats are not exact; pass rationals as strings like '1/3'")
        return GaussRat(value[0], value[1])
    return GaussRat.coerce(as_rat(value) if isinstance(value, str) else value)


# integer vectors -------------------------------------------------------

def as_intvec(v: Iterable[int]) -> IntVec:
    out = []
    for x in v:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer lattice coordinate {x}")
            x = x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            if hasattr(x, "__index__"):
                x = x.__index__()
            else:
                raise TypeError(f"lattice coordinates must be integers, got {x!r}")
        out.append(int(x))
    return tuple(out)


def vgcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive_vector(v: Sequence[int]) -> IntVec:
    """Divide ``v`` by the gcd of its entries, keeping its direction."""
    v = as_intvec(v)
    g = vgcd(v)
    if g == 0:
        raise ZeroVectorError("the zero vector has no primitive direction")
    return tuple(x // g for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vsub(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def rational_primitive(v: Sequence[Fraction]) -> IntVec:
    """Clear denominators of a rational vector and return its primitive integer direction."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive_vector([int(Fraction(x) * den) for x in v])
