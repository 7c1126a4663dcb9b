"""Non-degeneracy of face systems, singular loci and Milnor numbers.

Every face check is reduced first: the face parts are rewritten, by a
unimodular monomial change of coordinates, on the torus of the lattice of
directions of the face.  With at most ``EXACT_VARIABLE_LIMIT`` essential
variables the decision is exact (a Groebner basis equal to [1] certifies
smoothness); above it the answer is UNDECIDED, and GENERIC coefficients give
ASSUMED_GENERIC.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy

from .elimination import (NonIsolated, NotSingular, TorusIdeal, make_gens, milnor_at,
                          milnor_total, singular_ideal, to_gauss)
from .exact import GaussRat, IntVec, vsub
from .laurent import LaurentPoly, LaurentSystem, Mode, newton_polytope
from .linalg import rank, unimodular_echelon
from .polytope import (DimensionMismatch, Face, NotAFace, PolytopeError, minkowski_sum,
                       orthant_polyhedron, supporting_face)

EXACT_VARIABLE_LIMIT = 2

__all__ = [
    "Status", "Level", "FaceRecord", "NondegeneracyReport", "SingularLocusReport",
    "reduce_face_system", "smooth_complete_intersection", "check_nondegenerate_ci",
    "check_weak", "check_strong", "is_nondegenerate_ci", "singular_locus_hypersurface",
    "milnor_number_plane", "newton_nondegenerate_at_origin", "NotSingular", "NonIsolated",
    "DimensionHypothesis",
]


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ASSUMED_GENERIC = "ASSUMED_GENERIC"
    UNDECIDED = "UNDECIDED"


class Level(str, Enum):
    WEAK = "weak"
    STRONG = "strong"


class DimensionHypothesis(PolytopeError):
    """dim of the Minkowski sum differs from the torus dimension."""


def combine(statuses) -> Status:
    """FAIL beats UNDECIDED beats ASSUMED_GENERIC beats PASS."""
    statuses = list(statuses)
    for s in (Status.FAIL, Status.UNDECIDED, Status.ASSUMED_GENERIC):
        if s in statuses:
            return s
    return Status.PASS


# ---------------------------------------------------------------------------
# the leaf decision

def reduce_face_system(polys: Sequence[LaurentPoly], extra_dirs=()) -> Tuple[List[LaurentPoly], int]:
    """Rewrite polynomials on the torus of their common direction lattice.

    Each polynomial becomes a monomial times a Laurent polynomial in the
    first r coordinates after a unimodular change; the monomial is dropped
    (it does not affect zeros or the rank of the log Jacobian on them).
    ``extra_dirs`` enlarges the lattice, e.g. to that of a face gamma when
    a gamma_i-part is read as a function on T_gamma.
    """
    m = polys[0].ambient_dim
    dirs = [tuple(d) for d in extra_dirs]
    for p in polys:
        supp = p.support
        dirs.extend(vsub(v, supp[0]) for v in supp[1:])
    dirs = [d for d in dirs if any(d)]
    if not dirs:
        return [LaurentPoly({(): c for c in p.terms.values()}, 0) for p in polys], 0
    u, r = unimodular_echelon(dirs, m)
    return [p.transform(u, keep=r) for p in polys], r


def _log_jacobian_minors(exprs, gens, size):
    rows = [[g * sympy.diff(e, g) for g in gens] for e in exprs]
    mats = []
    for cols in combinations(range(len(gens)), size):
        mats.append(sympy.Matrix([[r[c] for c in cols] for r in rows]).det())
    return mats


@dataclass
class LeafResult:
    status: Status
    essential_vars: int
    witness: Optional[List] = None
    note: str = ""


def smooth_complete_intersection(polys: Sequence[LaurentPoly]) -> LeafResult:
    """Is {p = 0 for p in polys} a smooth complete intersection on the torus?

    That is: no common torus zero at which the logarithmic Jacobian of the
    polys has rank below len(polys).  For a single polynomial this is the
    "smooth and reduced" hypersurface condition.
    """
    reduced, r = reduce_face_system(polys)
    if r == 0:
        return LeafResult(Status.PASS, 0, note="monomial face system has no torus zeros")
    if any(p.mode is Mode.GENERIC for p in reduced):
        return LeafResult(Status.ASSUMED_GENERIC, r, note="generic coefficients")
    if r > EXACT_VARIABLE_LIMIT:
        return LeafResult(Status.UNDECIDED, r, note=f"{r} essential variables exceed the exact tier")
    gens = make_gens(r)
    exprs = [p.to_sympy(gens) for p in reduced]
    size = len(exprs)
    minors = _log_jacobian_minors(exprs, gens, size) if size <= r else []
    gauss = any(c.im for p in reduced for c in p.terms.values())
    bad = TorusIdeal(exprs + minors, gens, gauss)
    if bad.is_empty:
        return LeafResult(Status.PASS, r)
    return LeafResult(Status.FAIL, r, witness=_witness(bad),
                      note="face system has a singular torus point")


def isolated_singularities(q: LaurentPoly, face_dirs=()) -> LeafResult:
    """Does {q = 0}, read on the torus of the lattice spanned by ``face_dirs``, have only isolated singular points?"""
    (reduced,), r = reduce_face_system([q], face_dirs)
    if r == 0 or len(reduced.terms) == 1:
        return LeafResult(Status.PASS, r, note="monomial: empty zero set")
    if reduced.mode is Mode.GENERIC:
        return LeafResult(Status.ASSUMED_GENERIC, r, note="generic coefficients")
    if r > EXACT_VARIABLE_LIMIT:
        return LeafResult(Status.UNDECIDED, r, note=f"{r} essential variables exceed the exact tier")
    ideal = singular_ideal(reduced)
    if ideal.is_empty:
        return LeafResult(Status.PASS, r, note="smooth")
    if ideal.is_zero_dimensional:
        return LeafResult(Status.PASS, r, witness=_witness(ideal), note="isolated singular points")
    return LeafResult(Status.FAIL, r, note="non-isolated singularities")


def _witness(bad: TorusIdeal) -> List:
    """Bad points in the reduced face coordinates, or the Groebner basis if unsolved."""
    pts = bad.points() if bad.is_zero_dimensional else None
    if pts is None:
        return [str(g) for g in bad.gb.exprs]
    out = []
    for pt in pts:
        gs = [to_gauss(z) for z in pt]
        out.append([g.to_json() if g is not None else str(z) for g, z in zip(gs, pt)])
    return out


# ---------------------------------------------------------------------------
# reports

@dataclass
class FaceRecord:
    face: Tuple[IntVec, ...]
    face_dim: int
    subset: Tuple[int, ...]
    status: Status
    essential_vars: int
    witness: Optional[List] = None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "face": [list(v) for v in self.face],
            "face_dim": self.face_dim,
            "J": [j + 1 for j in self.subset],
            "status": self.status.value,
            "essential_vars": self.essential_vars,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass
class NondegeneracyReport:
    level: Level
    per_face: List[FaceRecord] = field(default_factory=list)

    @property
    def status(self) -> Status:
        return combine(r.status for r in self.per_face)

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.ASSUMED_GENERIC)

    @property
    def conditional(self) -> bool:
        return self.status is Status.ASSUMED_GENERIC

    @property
    def label(self) -> str:
        return {Status.PASS: "pass", Status.ASSUMED_GENERIC: "conditional",
                Status.FAIL: "fail", Status.UNDECIDED: "undecided"}[self.status]

    def failing(self) -> List[FaceRecord]:
        return [r for r in self.per_face if r.status is Status.FAIL]

    def to_json(self) -> dict:
        return {"level": self.level.value, "status": self.status.value, "label": self.label,
                "per_face": [r.to_json() for r in self.per_face]}


@lru_cache(maxsize=1024)
def _np(p: LaurentPoly):
    return newton_polytope(p)


def _face_parts(sys_polys: Sequence[LaurentPoly], u: Sequence[int], idx: Sequence[int]):
    """gamma_i-parts of the chosen polynomials for the covector u."""
    out = []
    for i in idx:
        p = sys_polys[i]
        f = supporting_face(_np(p), u)
        out.append(LaurentPoly({v: c for v, c in p.terms.items() if _on_face(v, u, f)}, p.ambient_dim))
    return out


def _on_face(v, u, f: Face) -> bool:
    anchor = next(iter(f.vertices))
    return sum(a * b for a, b in zip(u, v)) == sum(a * b for a, b in zip(u, anchor))


def check_nondegenerate_ci(sys: LaurentSystem, gamma: Face, J: Sequence[int]) -> LeafResult:
    """Smoothness of {P_i^{gamma_i} = 0, i in J} with gamma a face of the Minkowski sum.

    ``J`` holds 0-based indices.  ``gamma`` may be a face of the sum of all
    Newton polytopes or of the sum over J only; its summand faces are read
    off from the witness covector.
    """
    J = tuple(sorted(set(J)))
    if not J or J[0] < 0 or J[-1] >= sys.k:
        raise ValueError("J must be a non-empty subset of the polynomial indices")
    nps = sys.newton_polytopes()
    if gamma.parent.ambient_dim != sys.torus_dim:
        raise DimensionMismatch("face lives in a different lattice")
    candidates = [minkowski_sum(nps), minkowski_sum([nps[i] for i in J])]
    if not any(gamma.parent == c and c.is_face(gamma.vertices) for c in candidates):
        raise NotAFace("gamma is not a face of the relevant Minkowski sum")
    return smooth_complete_intersection(_face_parts(sys.polys, gamma.witness, J))


def _scan(sys: LaurentSystem, level: Level) -> NondegeneracyReport:
    nps = sys.newton_polytopes()
    total = minkowski_sum(nps)
    if total.dim != sys.torus_dim:
        raise DimensionHypothesis(
            f"dim of the Minkowski sum is {total.dim}, torus dimension is {sys.torus_dim}")
    report = NondegeneracyReport(level)
    cache: Dict[Tuple, LeafResult] = {}
    for gamma in total.faces():
        if level is Level.WEAK and gamma.dim == total.dim:
            continue
        for size in range(1, sys.k + 1):
            for J in combinations(range(sys.k), size):
                parts = _face_parts(sys.polys, gamma.witness, J)
                key = tuple(tuple(p.terms.items()) for p in parts)
                if key not in cache:
                    cache[key] = smooth_complete_intersection(parts)
                res = cache[key]
                report.per_face.append(FaceRecord(tuple(gamma.sorted_vertices()), gamma.dim, J,
                                                  res.status, res.essential_vars, res.witness, res.note))
    return report


def check_weak(sys: LaurentSystem) -> NondegeneracyReport:
    return _scan(sys, Level.WEAK)


def check_strong(sys: LaurentSystem) -> NondegeneracyReport:
    return _scan(sys, Level.STRONG)


def check_level(sys: LaurentSystem, level) -> NondegeneracyReport:
    return _scan(sys, Level(level))


def is_nondegenerate_ci(polys: Sequence[LaurentPoly]) -> NondegeneracyReport:
    """Non-degenerate complete intersection test over every face of the Minkowski sum."""
    polys = list(polys)
    total = minkowski_sum([newton_polytope(p) for p in polys])
    report = NondegeneracyReport(Level.STRONG)
    idx = tuple(range(len(polys)))
    for gamma in total.faces():
        res = smooth_complete_intersection(_face_parts(polys, gamma.witness, idx))
        report.per_face.append(FaceRecord(tuple(gamma.sorted_vertices()), gamma.dim, idx,
                                          res.status, res.essential_vars, res.witness, res.note))
    return report


# ---------------------------------------------------------------------------
# hypersurface singularities

@dataclass
class SingularLocusReport:
    status: Status
    singular_points: List = field(default_factory=list)
    exact_points: bool = True
    isolated: bool = True
    milnor_numbers: Optional[List[int]] = None
    milnor_total: Optional[int] = None
    note: str = ""

    def to_json(self) -> dict:
        pts = [[z.to_json() if isinstance(z, GaussRat) else str(z) for z in p] for p in self.singular_points]
        return {"status": self.status.value, "singular_points": pts, "exact_points": self.exact_points,
                "isolated": self.isolated, "milnor_numbers": self.milnor_numbers,
                "milnor_total": self.milnor_total, "note": self.note}


def singular_locus_hypersurface(P: LaurentPoly) -> SingularLocusReport:
    """Singular points of {P = 0} in the torus, with Milnor numbers when isolated."""
    if P.mode is Mode.GENERIC:
        return SingularLocusReport(Status.ASSUMED_GENERIC, isolated=True, exact_points=False,
                                   note="generic coefficients: no exact solve")
    reduced, r = reduce_face_system([P])
    if r < P.ambient_dim:
        # P is a monomial times a function of fewer variables: its singular
        # set is a union of positive-dimensional torus orbits or empty
        leaf = smooth_complete_intersection([P])
        if leaf.status is Status.PASS:
            return SingularLocusReport(Status.PASS, note="no singular points")
        return SingularLocusReport(leaf.status, isolated=leaf.status is not Status.FAIL,
                                   exact_points=False, note="singular set is not isolated"
                                   if leaf.status is Status.FAIL else leaf.note)
    if r > EXACT_VARIABLE_LIMIT:
        return SingularLocusReport(Status.UNDECIDED, exact_points=False,
                                   note=f"{r} variables exceed the exact tier")
    ideal = singular_ideal(P)
    if ideal.is_empty:
        return SingularLocusReport(Status.PASS, milnor_numbers=[], milnor_total=0, note="smooth")
    if not ideal.is_zero_dimensional:
        return SingularLocusReport(Status.FAIL, isolated=False, exact_points=False,
                                   singular_points=[[str(g) for g in ideal.gb.exprs]],
                                   note="non-isolated singular locus")
    total = milnor_total(P)
    pts = ideal.points()
    if pts is None:
        return SingularLocusReport(Status.FAIL, exact_points=False, milnor_total=total,
                                   singular_points=[[str(g) for g in ideal.radical().gb.exprs]],
                                   note="isolated singular points (not solved in radicals)")
    exact = [[to_gauss(z) for z in p] for p in pts]
    if all(g is not None for p in exact for g in p):
        mus = [milnor_at(P, p) for p in exact]
        return SingularLocusReport(Status.FAIL, singular_points=exact, milnor_numbers=mus,
                                   milnor_total=total, note="isolated singular points")
    return SingularLocusReport(Status.FAIL, singular_points=pts, exact_points=False,
                               milnor_total=total, note="isolated singular points (algebraic coordinates)")


def milnor_number_plane(P: LaurentPoly, point: Sequence) -> int:
    """Local Milnor number at an exact torus point; at most two variables."""
    if P.ambient_dim > 2:
        raise ValueError("milnor_number_plane handles at most two variables")
    return milnor_at(P, point)


# ---------------------------------------------------------------------------
# Newton non-degeneracy at the origin

def newton_nondegenerate_at_origin(f: LaurentPoly) -> NondegeneracyReport:
    """Smoothness of f^gamma on the torus for every compact face gamma of the Newton polyhedron."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    if (0,) * f.ambient_dim in f.terms:
        raise ValueError("f must have no constant term")
    poly = orthant_polyhedron(f.support)
    report = NondegeneracyReport(Level.STRONG)
    for face in poly.compact_faces:
        part = LaurentPoly({v: c for v, c in f.terms.items() if v in face}, f.ambient_dim)
        res = smooth_complete_intersection([part])
        dim = _affine_dim(face)
        report.per_face.append(FaceRecord(tuple(sorted(face)), dim, (0,), res.status,
                                          res.essential_vars, res.witness, res.note))
    return report


def _affine_dim(points: FrozenSet[IntVec]) -> int:
    pts = sorted(points)
    return rank([vsub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
