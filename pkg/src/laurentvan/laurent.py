"""Laurent polynomials on algebraic tori, and systems of them.

Coefficients are exact Gaussian rationals or the marker ``GENERIC`` (a
coefficient about which only "nonzero and in general position" is known).
Derivatives are logarithmic, x_j d/dx_j, so Newton polytopes never move.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .exact import GaussRat, IntVec, as_intvec, parse_gauss
from .polytope import DimensionMismatch, Face, LatticePolytope, hull


class _Generic:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "GENERIC"

    def __reduce__(self):
        return (_Generic, ())


GENERIC = _Generic()

Coeff = Union[GaussRat, _Generic]


class Mode(str, Enum):
    EXACT = "exact"
    GENERIC = "generic"


class ZeroCoordinate(ValueError):
    pass


def _scale(c: Coeff, s: GaussRat) -> Coeff:
    if c is GENERIC:
        return GENERIC if s else GaussRat(0)
    return c * s


class LaurentPoly:
    """sum of c_v x^v over a finite support; zero coefficients are dropped."""

    __slots__ = ("ambient_dim", "terms")

    def __init__(self, terms: Mapping[Sequence[int], object], ambient_dim: int = None):
        clean: Dict[IntVec, Coeff] = {}
        for v, c in terms.items():
            v = as_intvec(v)
            c = c if c is GENERIC else GaussRat.coerce(c)
            if c is GENERIC or c:
                if v in clean:
                    if clean[v] is GENERIC or c is GENERIC:
                        raise ValueError("cannot add to a GENERIC coefficient")
                    c = clean[v] + c
                    if not c:
                        del clean[v]
                        continue
                clean[v] = c
        dims = {len(v) for v in clean}
        if ambient_dim is None:
            if len(dims) != 1:
                raise DimensionMismatch("cannot infer the ambient dimension")
            ambient_dim = dims.pop()
        elif dims and dims != {ambient_dim}:
            raise DimensionMismatch("exponent length differs from the ambient dimension")
        self.ambient_dim = ambient_dim
        self.terms = dict(sorted(clean.items()))

    # construction helpers -------------------------------------------------
    @classmethod
    def from_records(cls, records: Iterable[Mapping], ambient_dim: int = None) -> "LaurentPoly":
        terms = {}
        for rec in records:
            v = as_intvec(rec["exponent"])
            if v in terms:
                raise ValueError(f"duplicate exponent {list(v)}")
            c = rec.get("coeff", "generic")
            terms[v] = GENERIC if c == "generic" else parse_gauss(c)
        return cls(terms, ambient_dim)

    @classmethod
    def generic(cls, support: Iterable[Sequence[int]]) -> "LaurentPoly":
        return cls({as_intvec(v): GENERIC for v in support})

    def to_records(self) -> List[dict]:
        return [{"exponent": list(v), "coeff": "generic" if c is GENERIC else c.to_json()}
                for v, c in self.terms.items()]

    # basic queries ---------------------------------------------------------
    @property
    def support(self) -> List[IntVec]:
        return list(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def mode(self) -> Mode:
        return Mode.GENERIC if any(c is GENERIC for c in self.terms.values()) else Mode.EXACT

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for v, c in self.terms.items():
            mono = "*".join(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(v) if e)
            cs = "g" if c is GENERIC else f"({c})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    # arithmetic --------------------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        terms = dict(self.terms)
        for v, c in other.terms.items():
            if v in terms:
                if terms[v] is GENERIC or c is GENERIC:
                    raise ValueError("cannot add to a GENERIC coefficient")
                terms[v] = terms[v] + c
            else:
                terms[v] = c
        return LaurentPoly(terms, self.ambient_dim)

    def __neg__(self):
        return self.scale(GaussRat(-1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(GaussRat.coerce(other))
        if self.mode is Mode.GENERIC or other.mode is Mode.GENERIC:
            raise ValueError("products of GENERIC polynomials are not supported")
        acc: Dict[IntVec, GaussRat] = {}
        for v, c in self.terms.items():
            for w, d in other.terms.items():
                k = tuple(a + b for a, b in zip(v, w))
                acc[k] = acc.get(k, GaussRat(0)) + c * d
        return LaurentPoly(acc, self.ambient_dim)

    def __pow__(self, k: int) -> "LaurentPoly":
        out = LaurentPoly({(0,) * self.ambient_dim: 1})
        for _ in range(k):
            out = out * self
        return out

    def scale(self, s: GaussRat) -> "LaurentPoly":
        return LaurentPoly({v: _scale(c, s) for v, c in self.terms.items()}, self.ambient_dim)

    def shift(self, w: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^w."""
        return LaurentPoly({tuple(a + b for a, b in zip(v, w)): c for v, c in self.terms.items()},
                           self.ambient_dim)

    def log_derivative(self, j: int) -> "LaurentPoly":
        """x_j * d/dx_j."""
        return LaurentPoly({v: _scale(c, GaussRat(v[j])) for v, c in self.terms.items()}, self.ambient_dim)

    def evaluate(self, point: Sequence) -> GaussRat:
        if self.mode is Mode.GENERIC:
            raise ValueError("cannot evaluate a GENERIC polynomial")
        pt = [GaussRat.coerce(p) for p in point]
        if len(pt) != self.ambient_dim:
            raise DimensionMismatch("point has the wrong dimension")
        if any(not p for p in pt):
            raise ZeroCoordinate("point is not in the torus")
        total = GaussRat(0)
        for v, c in self.terms.items():
            term = c
            for p, e in zip(pt, v):
                term = term * p ** e
            total = total + term
        return total

    def transform(self, u: Sequence[Sequence[int]], keep: int = None) -> "LaurentPoly":
        """Monomial change of coordinates v -> U v, optionally keeping the first ``keep`` coordinates.

        Dropped coordinates must be constant over the support (the polynomial is
        a monomial times a function of the kept variables); that common
        monomial is discarded.
        """
        new = {}
        for v, c in self.terms.items():
            w = tuple(sum(a * b for a, b in zip(row, v)) for row in u)
            new[w] = c
        if keep is None:
            return LaurentPoly(new, len(u))
        tails = {w[keep:] for w in new}
        if len(tails) > 1:
            raise ValueError("support is not contained in a translate of the kept sublattice")
        return LaurentPoly({w[:keep]: c for w, c in new.items()}, keep) if keep else LaurentPoly(
            {(): c for w, c in new.items()}, 0)

    def normalize_exponents(self) -> Tuple["LaurentPoly", IntVec]:
        """Divide by the monomial of coordinatewise minimal exponents; returns (poly, that exponent)."""
        if not self.terms:
            return self, (0,) * self.ambient_dim
        lo = tuple(min(v[i] for v in self.terms) for i in range(self.ambient_dim))
        return self.shift(tuple(-x for x in lo)), lo

    def to_sympy(self, gens):
        """Polynomial expression after clearing the minimal monomial (torus zeros are unchanged)."""
        if self.mode is Mode.GENERIC:
            raise ValueError("GENERIC polynomials cannot be sent to an exact solver")
        p, _ = self.normalize_exponents()
        expr = 0
        for v, c in p.terms.items():
            term = c.to_sympy()
            for g, e in zip(gens, v):
                term = term * g ** e
            expr = expr + term
        return expr


def newton_polytope(g: LaurentPoly) -> LatticePolytope:
    if g.is_zero:
        raise ValueError("the zero polynomial has no Newton polytope")
    return hull(g.support)


def face_part(g: LaurentPoly, face: Face) -> LaurentPoly:
    """Sum of the terms of ``g`` whose exponents lie on ``face``."""
    if face.parent.ambient_dim != g.ambient_dim:
        raise DimensionMismatch("face and polynomial live in different lattices")
    u = face.witness
    vals = {v: sum(a * b for a, b in zip(u, v)) for v in g.terms}
    lo = min(vals.values())
    anchor = next(iter(face.vertices))
    if sum(a * b for a, b in zip(u, anchor)) != lo:
        raise ValueError("face is not a face of NP(g)")
    return LaurentPoly({v: c for v, c in g.terms.items() if vals[v] == lo}, g.ambient_dim)


@dataclass(frozen=True)
class LaurentSystem:
    polys: Tuple[LaurentPoly, ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("a system needs at least one polynomial")
        if len({p.ambient_dim for p in self.polys}) != 1:
            raise DimensionMismatch("polynomials live on tori of different dimension")
        if any(p.is_zero for p in self.polys):
            raise ValueError("zero polynomial in system")

    @classmethod
    def of(cls, polys: Iterable[LaurentPoly]) -> "LaurentSystem":
        return cls(tuple(polys))

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def torus_dim(self) -> int:
        return self.polys[0].ambient_dim

    @property
    def mode(self) -> Mode:
        return Mode.GENERIC if any(p.mode is Mode.GENERIC for p in self.polys) else Mode.EXACT

    def newton_polytopes(self) -> List[LatticePolytope]:
        return [newton_polytope(p) for p in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def lift_system(sys: LaurentSystem) -> LaurentSystem:
    """(t_i - P_i(x))_i on the torus with coordinates (x, t_1, ..., t_k)."""
    k, m = sys.k, sys.torus_dim
    out = []
    for i, p in enumerate(sys.polys):
        terms: Dict[IntVec, Coeff] = {}
        for v, c in p.terms.items():
            terms[v + (0,) * k] = c if c is GENERIC else -c
        terms[(0,) * m + tuple(int(j == i) for j in range(k))] = GaussRat(1)
        out.append(LaurentPoly(terms, m + k))
    return LaurentSystem(tuple(out))


def critical_system(h: LaurentPoly, a: Sequence) -> LaurentSystem:
    """Equations x_j dh/dx_j - a_j h = 0 for the critical points of h(x) x^(-a)."""
    a = [GaussRat.coerce(x) for x in a]
    if len(a) != h.ambient_dim:
        raise DimensionMismatch("exponent vector a has the wrong dimension")
    eqs = []
    for j in range(h.ambient_dim):
        terms = {v: _scale(c, GaussRat(v[j]) - a[j]) for v, c in h.terms.items()}
        eqs.append(LaurentPoly(terms, h.ambient_dim))
    if any(e.is_zero for e in eqs):
        raise ValueError("a critical equation vanishes identically")
    return LaurentSystem(tuple(eqs))


def log_derivative_matrix(sys: LaurentSystem, point: Sequence) -> List[List[GaussRat]]:
    """k x n matrix of x_j dP_i/dx_j evaluated at a torus point."""
    if sys.mode is Mode.GENERIC:
        raise ValueError("log-derivative matrix needs exact coefficients")
    pt = [GaussRat.coerce(p) for p in point]
    if any(not p for p in pt):
        raise ZeroCoordinate("point has a zero coordinate")
    return [[p.log_derivative(j).evaluate(pt) for j in range(sys.torus_dim)] for p in sys.polys]


def gauss_rank(m: List[List[GaussRat]]) -> int:
    """Rank of a matrix with Gaussian-rational entries."""
    rows = [list(r) for r in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
