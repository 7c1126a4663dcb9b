"""Exact torus elimination on top of sympy Groebner bases.

Every ideal here lives in Q(i)[x_1..x_m, t] with the extra generator
1 - t*x_1*...*x_m, so its zeros are exactly the torus zeros of the input.
Quotient dimensions are read off the grevlex standard monomials; distinct
point counts come from the radical (Seidenberg: adjoin the squarefree parts
of the univariate eliminants).
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from operator import mul
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, groebner, symbols

from .exact import GaussRat
from .laurent import LaurentPoly, Mode


class NotSingular(ValueError):
    pass


class NonIsolated(ValueError):
    pass


def _needs_gaussian(polys: Sequence[LaurentPoly]) -> bool:
    return any(c.im for p in polys for c in p.terms.values())


def make_gens(m: int):
    return symbols(f"x1:{m + 1}") if m else ()


class TorusIdeal:
    """Ideal generated by sympy expressions in ``gens``, saturated by the torus."""

    def __init__(self, exprs, gens, gaussian: bool = False, avoid=()):
        self.gens = tuple(gens)
        self.t = sympy.Symbol("t_sat")
        self.domain = "QQ_I" if gaussian else "QQ"
        # zeros of the ``avoid`` expressions are removed along with the coordinate hyperplanes
        sat = 1 - self.t * reduce(mul, self.gens, sympy.Integer(1)) * reduce(mul, avoid, sympy.Integer(1))
        self.exprs = [sympy.expand(e) for e in exprs if sympy.expand(e) != 0] + [sat]
        self.all_gens = self.gens + (self.t,)
        self.gb = groebner(self.exprs, *self.all_gens, order="grevlex", domain=self.domain)

    @property
    def is_empty(self) -> bool:
        return list(self.gb.exprs) == [1]

    @property
    def is_zero_dimensional(self) -> bool:
        return self.is_empty or self.gb.is_zero_dimensional

    def _leading(self, gb) -> List[Tuple[int, ...]]:
        return [Poly(g, *self.all_gens).monoms(order="grevlex")[0] for g in gb.exprs]

    def _count(self, gb) -> int:
        if list(gb.exprs) == [1]:
            return 0
        lms = self._leading(gb)
        nv = len(self.all_gens)

        def divisible(m):
            return any(all(a >= b for a, b in zip(m, l)) for l in lms)

        seen = {(0,) * nv}
        stack = [(0,) * nv]
        while stack:
            m = stack.pop()
            for i in range(nv):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen and not divisible(nxt):
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen)

    def degree(self) -> int:
        """Number of torus zeros counted with multiplicity."""
        if not self.is_zero_dimensional:
            raise NonIsolated("ideal is not zero-dimensional")
        return self._count(self.gb)

    def _eliminant(self, v):
        others = [g for g in self.all_gens if g != v]
        lex = groebner(self.gb.exprs, *others, v, order="lex", domain=self.domain)
        for g in reversed(lex.exprs):
            if g.free_symbols <= {v}:
                return g
        raise NonIsolated("no eliminant: ideal is not zero-dimensional")  # pragma: no cover

    def radical(self) -> "TorusIdeal":
        if getattr(self, "_radical", None) is None:
            self._radical = self._compute_radical()
        return self._radical

    def _compute_radical(self) -> "TorusIdeal":
        if self.is_empty:
            return self
        if not self.is_zero_dimensional:
            raise NonIsolated("radical is only computed for zero-dimensional ideals")
        extra = []
        for v in self.all_gens:
            f = Poly(self._eliminant(v), v, domain=self.domain)
            extra.append(f.sqf_part().as_expr())
        out = TorusIdeal.__new__(TorusIdeal)
        out.gens, out.t, out.domain, out.all_gens = self.gens, self.t, self.domain, self.all_gens
        out.exprs = list(self.gb.exprs) + extra
        out.gb = groebner(out.exprs, *self.all_gens, order="grevlex", domain=self.domain)
        out._radical = out
        return out

    def distinct(self) -> int:
        """Number of distinct torus zeros."""
        return self._count(self.radical().gb)

    def points(self) -> Optional[List[Tuple]]:
        """Exact zeros as sympy numbers, or None when sympy cannot solve the system."""
        if self.is_empty:
            return []
        rad = self.radical()
        lex = groebner(rad.gb.exprs, *self.all_gens, order="lex", domain=self.domain)
        try:
            sols = sympy.solve_poly_system(list(lex.exprs), *self.all_gens)
        except Exception:  # sympy raises several types for unsolvable shapes
            return None
        if sols is None:
            return None
        return [tuple(s[:len(self.gens)]) for s in sols]

    def contains(self, expr) -> bool:
        return self.gb.contains(sympy.expand(expr))


def torus_ideal(polys: Sequence[LaurentPoly], avoid: Sequence[LaurentPoly] = ()) -> TorusIdeal:
    if any(p.mode is Mode.GENERIC for p in list(polys) + list(avoid)):
        raise ValueError("exact elimination needs exact coefficients")
    gens = make_gens(polys[0].ambient_dim)
    return TorusIdeal([p.to_sympy(gens) for p in polys], gens, _needs_gaussian(list(polys) + list(avoid)),
                      avoid=[q.to_sympy(gens) for q in avoid])


def count_torus_solutions(polys: Sequence[LaurentPoly], avoid: Sequence[LaurentPoly] = ()) -> Tuple[int, int]:
    """(with multiplicity, distinct) zero counts of a zero-dimensional torus system."""
    ideal = torus_ideal(polys, avoid)
    if ideal.is_empty:
        return 0, 0
    return ideal.degree(), ideal.distinct()


def to_gauss(z) -> Optional[GaussRat]:
    """A sympy number as a GaussRat, or None if it is not Gaussian rational."""
    re, im = sympy.nsimplify(z).as_real_imag()
    if re.is_Rational and im.is_Rational:
        return GaussRat(_frac(re), _frac(im))
    return None


def _frac(r) -> Fraction:
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


# ---------------------------------------------------------------------------
# singular loci and Milnor numbers

def _cleared(P: LaurentPoly, gens):
    expr = P.to_sympy(gens)
    return expr, [sympy.diff(expr, g) for g in gens]


def singular_ideal(P: LaurentPoly, gens=None) -> TorusIdeal:
    gens = gens or make_gens(P.ambient_dim)
    expr, grads = _cleared(P, gens)
    return TorusIdeal([expr] + grads, gens, _needs_gaussian([P]))


def milnor_total(P: LaurentPoly, max_power: int = 64) -> int:
    """Sum of the Milnor numbers over the singular points of {P = 0} in the torus.

    Locally at a singular point p the ideal J + (P^N), J the Jacobian ideal,
    equals J once P^N lies in J_p; at critical points off the curve P is a
    unit.  So the length of R/(J + P^N) is nondecreasing in N and its first
    repeated value is the sum of the local Milnor numbers.
    """
    gens = make_gens(P.ambient_dim)
    expr, grads = _cleared(P, gens)
    gauss = _needs_gaussian([P])
    prev = None
    for N in range(1, max_power + 1):
        ideal = TorusIdeal(grads + [expr ** N], gens, gauss)
        if not ideal.is_zero_dimensional:
            raise NonIsolated("the hypersurface has non-isolated singularities")
        d = ideal.degree()
        if d == prev:
            return d
        prev = d
    raise NonIsolated("Milnor number did not stabilize")  # pragma: no cover


def milnor_at(P: LaurentPoly, point: Sequence, max_power: int = 64) -> int:
    """Local Milnor number of {P = 0} at an exact torus point."""
    pt = [GaussRat.coerce(p) for p in point]
    if len(pt) != P.ambient_dim:
        raise ValueError("point has the wrong dimension")
    if P.evaluate(pt):
        raise NotSingular("point is not on the hypersurface")
    if any(P.log_derivative(j).evaluate(pt) for j in range(P.ambient_dim)):
        raise NotSingular("point is a smooth point of the hypersurface")
    gens = make_gens(P.ambient_dim)
    _, grads = _cleared(P, gens)
    gauss = _needs_gaussian([P]) or any(p.im for p in pt)
    lin = [g - p.to_sympy() for g, p in zip(gens, pt)]
    prev = None
    for N in range(1, max_power + 1):
        power = [reduce(mul, c, sympy.Integer(1)) for c in combinations_with_replacement(lin, N)]
        d = TorusIdeal(grads + power, gens, gauss).degree()
        if d == prev:
            return d
        prev = d
    raise NonIsolated("point is not an isolated singularity")
