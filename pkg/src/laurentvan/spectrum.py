"""Newton polyhedron at the origin and the eigenvalue bound E_p.

E_p is never materialized as complex numbers.  Each compact facet of a
coordinate restriction contributes a pair (d, delta) standing for the roots
of lambda^d = exp(2 pi i beta delta); membership of exp(2 pi i q) is then the
integrality test q*d - beta*delta in Z.  beta may be left unbound and
supplied at query time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exact import GaussRat, IntVec, is_integer
from .laurent import LaurentPoly
from .nondegeneracy import NondegeneracyReport, Status, newton_nondegenerate_at_origin
from .nonresonance import NonresonanceVerdict, ParameterVector, check_nonresonance
from .polytope import PolytopeError, orthant_polyhedron


@dataclass(frozen=True)
class CompactFacet:
    subset: Tuple[int, ...]  # the coordinate set I, 0-based
    points: FrozenSet[IntVec]  # support points on the facet
    u: IntVec
    d: int
    delta: int

    def to_json(self) -> dict:
        return {"I": [i + 1 for i in self.subset], "facet": [list(p) for p in sorted(self.points)],
                "u": list(self.u), "d": self.d, "delta": self.delta}


@dataclass
class NewtonPolyhedron:
    f: LaurentPoly
    dim: int
    generators: Tuple[IntVec, ...]
    facets: Dict[Tuple[int, ...], List[CompactFacet]] = field(default_factory=dict)

    def all_facets(self) -> List[CompactFacet]:
        return [f for I in sorted(self.facets, key=lambda s: (len(s), s)) for f in self.facets[I]]

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in self.generators],
                "table": [f.to_json() for f in self.all_facets()]}


def newton_polyhedron(f: LaurentPoly) -> NewtonPolyhedron:
    """Compact facets of Gamma_+(f) cut by every R_+^I with the last coordinate in I."""
    supp = f.support
    if not supp:
        raise PolytopeError("zero polynomial")
    if any(x < 0 for v in supp for x in v):
        raise PolytopeError("support must lie in the nonnegative orthant")
    if (0,) * f.ambient_dim in f.terms:
        raise PolytopeError("f must vanish at the origin")
    d = f.ambient_dim
    last = d - 1
    out = NewtonPolyhedron(f, d, tuple(supp))
    others = list(range(last))
    for size in range(0, last + 1):
        for extra in combinations(others, size):
            I = tuple(sorted(extra + (last,)))
            restricted = [v for v in supp if all(v[j] == 0 for j in range(d) if j not in I)]
            facets = []
            if restricted:
                poly = orthant_polyhedron([tuple(v[j] for j in I) for v in restricted])
                for u_loc, m, tight in poly.compact_facets():
                    u = [0] * d
                    for j, x in zip(I, u_loc):
                        u[j] = x
                    pts = frozenset(v for v in restricted if tuple(v[j] for j in I) in tight)
                    facets.append(CompactFacet(I, pts, tuple(u), m, u[last]))
            out.facets[I] = facets
    return out


@dataclass(frozen=True)
class EigenvalueSet:
    """Pairs (d, delta) meaning {lambda : lambda^d = exp(2 pi i beta delta)}."""

    entries: FrozenSet[Tuple[int, int]]
    beta: Optional[GaussRat] = None

    def bind(self, beta) -> "EigenvalueSet":
        return EigenvalueSet(self.entries, GaussRat.coerce(beta))

    @property
    def pairs(self) -> FrozenSet[Tuple[int, object]]:
        """(d, phase) pairs; the phase is beta*delta, or the multiplier delta when beta is unbound."""
        if self.beta is None:
            return self.entries
        return frozenset((d, self.beta * delta) for d, delta in self.entries)

    def to_json(self) -> dict:
        return {
            "beta": self.beta.to_json() if self.beta is not None else "symbolic",
            "pairs": [{"d": d, "delta": delta,
                       "phase": (self.beta * delta).to_json() if self.beta is not None else f"{delta}*beta"}
                      for d, delta in sorted(self.entries)],
        }


def eigenvalue_set(np_: NewtonPolyhedron, beta=None) -> EigenvalueSet:
    entries = frozenset((f.d, f.delta) for f in np_.all_facets())
    return EigenvalueSet(entries, None if beta is None else GaussRat.coerce(beta))


def offending_pairs(es: EigenvalueSet, q, beta=None) -> List[Tuple[int, int]]:
    b = GaussRat.coerce(beta) if beta is not None else es.beta
    if b is None:
        raise ValueError("beta is unbound; pass it to the membership test")
    q = GaussRat.coerce(q)
    return sorted((d, delta) for d, delta in es.entries if is_integer(q * d - b * delta))


def contains(es: EigenvalueSet, q, beta=None) -> bool:
    """Is exp(2 pi i q) in the set?"""
    return bool(offending_pairs(es, q, beta))


@dataclass
class StalkVerdict:
    passed: bool
    nonresonant: Optional[bool]
    newton_nondegenerate: Status
    eigenvalue_excluded: bool
    offending: List[Tuple[int, int]]
    reasons: List[str]

    def to_json(self) -> dict:
        return {"pass": self.passed, "nonresonant": self.nonresonant,
                "newton_nondegenerate": self.newton_nondegenerate.value,
                "eigenvalue_excluded": self.eigenvalue_excluded,
                "offending": [{"d": d, "delta": delta} for d, delta in self.offending],
                "reasons": self.reasons}


def stalk_vanishing_check(np_: NewtonPolyhedron, c: ParameterVector, beta,
                          Bs=None, nonresonance: Optional[NonresonanceVerdict] = None,
                          nondeg: Optional[NondegeneracyReport] = None) -> StalkVerdict:
    """Bundle nonresonance, Newton non-degeneracy and exp(2 pi i c_n) not in E_p."""
    reasons = []
    if nonresonance is None and Bs is not None:
        nonresonance = check_nonresonance(Bs, c)
    nonres = None if nonresonance is None else nonresonance.nonresonant
    if nonres is None:
        reasons.append("nonresonance not supplied")
    elif not nonres:
        reasons.append("parameter is resonant")
    nondeg = nondeg or newton_nondegenerate_at_origin(np_.f)
    if not nondeg.passed:
        reasons.append(f"Newton non-degeneracy at the origin: {nondeg.label}")
    q = c.normalized()[-1]
    bad = offending_pairs(eigenvalue_set(np_), q, beta)
    if bad:
        reasons.append("exp(2 pi i c_n) lies in E_p via " + ", ".join(f"(d={d}, delta={e})" for d, e in bad))
    ok = bool(nonres) and nondeg.passed and not bad
    return StalkVerdict(ok, nonres, nondeg.status, not bad, bad, reasons)
