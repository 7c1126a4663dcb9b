"""Nonresonance of parameter vectors with respect to the Cayley cone.

A parameter c is resonant on a facet Gamma of K = R_+ A exactly when
c lies in Z^n + Lin(Gamma), i.e. when <nu~, c> is an integer for the
primitive inner conormal nu~ of Gamma.  Internally c is always held in the
GKZ normalization (local system P^{-c~} x^{c-1}); inputs declared in the
other normalization (P^{c~} x^{c}) are converted by c -> c + 1, c~ -> -c~.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .exact import GaussRat, IntVec, as_intvec, dot, is_integer, parse_gauss
from .polytope import (Face, LatticePolytope, NotAFace, PolytopeError, cayley_cone,
                       facet_conormal, hull, minkowski_sum)


class Convention(str, Enum):
    SECTION3 = "section3"  # P^{-c~} x^{c-1}
    SECTION5 = "section5"  # P^{c~} x^{c}


@dataclass(frozen=True)
class ParameterVector:
    """(c_1..c_{n-k}, c~_1..c~_k) with its declared convention."""

    c: Tuple[GaussRat, ...]
    k: int
    convention: Convention = Convention.SECTION3

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(GaussRat.coerce(x) for x in self.c))
        object.__setattr__(self, "convention", Convention(self.convention))
        if not 1 <= self.k <= len(self.c):
            raise ValueError(f"split (n-k, k) = ({len(self.c) - self.k}, {self.k}) is invalid")

    @classmethod
    def parse(cls, entries: Sequence, k: int, convention="section3") -> "ParameterVector":
        return cls(tuple(parse_gauss(e) for e in entries), k, Convention(convention))

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def split(self) -> Tuple[int, int]:
        return self.n - self.k, self.k

    def normalized(self) -> Tuple[GaussRat, ...]:
        """The parameter in the GKZ normalization used by the resonance test."""
        if self.convention is Convention.SECTION3:
            return self.c
        m = self.n - self.k
        return tuple(x + 1 for x in self.c[:m]) + tuple(-x for x in self.c[m:])

    def to_json(self) -> dict:
        return {"c": [x.to_json() for x in self.c], "k": self.k, "convention": self.convention.value}


@dataclass(frozen=True)
class DeltaFacet:
    """Data of a facet gamma of Delta inducing a facet of K."""

    vertices: Tuple[IntVec, ...]
    nu: IntVec
    mins: Tuple[int, ...]
    m_gamma: GaussRat


@dataclass(frozen=True)
class FacetCertificate:
    generators: FrozenSet[int]
    conormal: IntVec
    pairing: GaussRat
    resonant: bool
    delta_facet: Optional[DeltaFacet] = None

    def to_json(self) -> dict:
        out = {
            "generators": sorted(self.generators),
            "conormal": list(self.conormal),
            "pairing": self.pairing.to_json(),
            "resonant": self.resonant,
        }
        if self.delta_facet is not None:
            d = self.delta_facet
            out["delta_facet"] = {
                "vertices": [list(v) for v in d.vertices],
                "nu": list(d.nu),
                "m": list(d.mins),
                "m_gamma": d.m_gamma.to_json(),
            }
        return out


@dataclass
class NonresonanceVerdict:
    certificates: List[FacetCertificate] = field(default_factory=list)
    convention: Convention = Convention.SECTION3

    @property
    def failing_facets(self) -> List[FacetCertificate]:
        return [c for c in self.certificates if c.resonant]

    @property
    def nonresonant(self) -> bool:
        return not self.failing_facets

    def to_json(self) -> dict:
        return {
            "nonresonant": self.nonresonant,
            "convention": self.convention.value,
            "certificates": [c.to_json() for c in self.certificates],
            "failing_facets": [c.to_json() for c in self.failing_facets],
        }


def _pair(nu: Sequence[int], c: Sequence[GaussRat]) -> GaussRat:
    total = GaussRat(0)
    for a, b in zip(nu, c):
        if a:
            total = total + b * a
    return total


def _supports(Bs) -> List[List[IntVec]]:
    out = [sorted({as_intvec(b) for b in B}) for B in Bs]
    if not out or any(not B for B in out):
        raise PolytopeError("every support must be non-empty")
    return out


def _delta(Bs) -> Tuple[List[LatticePolytope], LatticePolytope]:
    hulls = [hull(B) for B in Bs]
    return hulls, minkowski_sum(hulls)


def m_gamma(Bs, gamma: Face, c: ParameterVector) -> GaussRat:
    """<nu, (c_1 - 1, ..., c_{n-k} - 1)> - sum_i m_i c~_i for a facet gamma of Delta."""
    Bs = _supports(Bs)
    hulls, total = _delta(Bs)
    if not total.is_face(gamma.vertices) or gamma.dim != total.dim - 1:
        raise NotAFace("gamma is not a facet of Delta")
    nu, _ = facet_conormal(total, total.face_of(gamma.vertices))
    return _m_gamma_from(nu, hulls, c)


def _m_gamma_from(nu, hulls, c: ParameterVector) -> GaussRat:
    vals = c.normalized()
    m = c.n - c.k
    if len(nu) != m or len(hulls) != c.k:
        raise ValueError("parameter split does not match the supports")
    mins = [min(dot(nu, v) for v in P.vertices) for P in hulls]
    out = _pair(nu, [x - 1 for x in vals[:m]])
    for mi, ct in zip(mins, vals[m:]):
        out = out - ct * mi
    return out


def check_nonresonance(Bs, c: ParameterVector) -> NonresonanceVerdict:
    """Test every facet of K; Delta-induced facets also carry their m(gamma)."""
    Bs = _supports(Bs)
    if c.k != len(Bs) or any(len(b) != c.n - c.k for B in Bs for b in B):
        raise ValueError("parameter length does not match the supports")
    K = cayley_cone(Bs)
    vals = c.normalized()
    hulls, total = _delta(Bs)
    induced = {}
    if total.is_full_dimensional:
        for vs, nu, _ in total.facet_data():
            induced[nu] = vs
    verdict = NonresonanceVerdict(convention=c.convention)
    m = c.n - c.k
    for conormal, gens in K.facets():
        pairing = _pair(conormal, vals)
        nu = conormal[:m]
        dfacet = None
        if nu in induced:
            mins = tuple(min(dot(nu, v) for v in P.vertices) for P in hulls)
            if tuple(-x for x in conormal[m:]) == mins:
                dfacet = DeltaFacet(tuple(sorted(induced[nu])), nu, mins, _m_gamma_from(nu, hulls, c))
        verdict.certificates.append(FacetCertificate(gens, conormal, pairing, is_integer(pairing), dfacet))
    return verdict


def check_c_not_integer(c) -> bool:
    entries = c.c if isinstance(c, ParameterVector) else [GaussRat.coerce(x) for x in c]
    return any(not is_integer(x) for x in entries)

