"""Hypothesis checking for the vanishing theorems, and the Betti/Euler bookkeeping.

Each theorem is a list of named hypotheses, each PASS / FAIL / ASSUMED /
UNDECIDED with a line of evidence.  A verdict is applicable iff no required
hypothesis is FAIL or UNDECIDED, and conditional iff one of them is ASSUMED.
Dimensions come either from a closed formula (Vol - sum of Milnor numbers,
or the mixed volume sum) or from the Euler characteristic of the complement,
computed stratum by stratum.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .elimination import NonIsolated, count_torus_solutions, torus_ideal
from .exact import GaussRat, is_integer, parse_gauss, vsub
from .laurent import LaurentPoly, LaurentSystem, Mode, critical_system, newton_polytope
from .nondegeneracy import (EXACT_VARIABLE_LIMIT, DimensionHypothesis, Status, check_strong, check_weak,
                            is_nondegenerate_ci, isolated_singularities, singular_locus_hypersurface,
                            smooth_complete_intersection, _face_parts)
from .nonresonance import ParameterVector, check_c_not_integer, check_nonresonance
from .polytope import DegenerateCone, LatticePolytope, hull, minkowski_sum, similar
from .volume import mixed_volume_sum, normalized_volume


class HStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    ASSUMED = "ASSUMED"
    UNDECIDED = "UNDECIDED"


_FROM_LEAF = {Status.PASS: HStatus.PASS, Status.FAIL: HStatus.FAIL,
              Status.ASSUMED_GENERIC: HStatus.ASSUMED, Status.UNDECIDED: HStatus.UNDECIDED}


def _hs(ok: bool) -> HStatus:
    return HStatus.PASS if ok else HStatus.FAIL


THEOREMS = ("VTM", "SVTM", "MVTM", "SMVTM", "SSMVTM", "NTM", "NVTM", "BKK")
AUTO_ORDER = ("NTM", "MVTM", "VTM", "NVTM", "SVTM", "SMVTM", "SSMVTM")


@dataclass
class Hypothesis:
    name: str
    status: HStatus
    evidence: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status.value, "evidence": self.evidence}


@dataclass
class TheoremVerdict:
    theorem: str
    hypotheses: List[Hypothesis] = field(default_factory=list)
    concentration_degree: Optional[int] = None
    predicted_dimension: Optional[object] = None  # int, or a formula string with unknown Milnor numbers
    dimension_source: Optional[str] = None
    space: str = "W"
    euler: Optional[dict] = None
    notes: List[str] = field(default_factory=list)

    def add(self, name: str, status: HStatus, evidence: str = "") -> Hypothesis:
        h = Hypothesis(name, status, evidence)
        self.hypotheses.append(h)
        return h

    @property
    def applicable(self) -> bool:
        return all(h.status in (HStatus.PASS, HStatus.ASSUMED) for h in self.hypotheses)

    @property
    def conditional(self) -> bool:
        return self.applicable and any(h.status is HStatus.ASSUMED for h in self.hypotheses)

    @property
    def undecided(self) -> bool:
        return not any(h.status is HStatus.FAIL for h in self.hypotheses) and any(
            h.status is HStatus.UNDECIDED for h in self.hypotheses)

    @property
    def label(self) -> str:
        if self.applicable:
            return "conditionally applicable" if self.conditional else "applicable"
        return "undecided" if self.undecided else "not applicable"

    def _finish(self):
        if not self.applicable:
            self.concentration_degree = None
            self.predicted_dimension = None
            self.dimension_source = None
        return self

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "label": self.label,
            "applicable": self.applicable,
            "conditional": self.conditional,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "concentration_degree": self.concentration_degree,
            "space": self.space,
            "predicted_dimension": self.predicted_dimension,
            "dimension_source": self.dimension_source,
            "euler": self.euler,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# Euler characteristics

def bkk_euler(polytopes: Sequence[LatticePolytope], n: Optional[int] = None) -> int:
    """(-1)^(n-p) times the mixed volume sum of p polytopes in R^n."""
    p = len(polytopes)
    n = polytopes[0].ambient_dim if n is None else n
    if p > n:
        raise ValueError(f"{p} polytopes in R^{n}: need p <= n")
    return (-1) ** (n - p) * mixed_volume_sum(list(polytopes), n)


@dataclass
class Stratum:
    subset: Tuple[int, ...]
    chi: Optional[int]
    method: str
    status: HStatus

    def to_json(self) -> dict:
        return {"J": [j + 1 for j in self.subset], "chi": self.chi, "method": self.method,
                "status": self.status.value}


@dataclass
class EulerReport:
    strata: List[Stratum]
    chi_complement: Optional[int]

    @property
    def chi_strata(self) -> Dict[Tuple[int, ...], Optional[int]]:
        return {s.subset: s.chi for s in self.strata}

    @property
    def status(self) -> HStatus:
        st = [s.status for s in self.strata]
        for s in (HStatus.FAIL, HStatus.UNDECIDED, HStatus.ASSUMED):
            if s in st:
                return s
        return HStatus.PASS

    def to_json(self) -> dict:
        return {"chi_complement": self.chi_complement, "status": self.status.value,
                "strata": [s.to_json() for s in self.strata]}


def stratum_euler(polys: Sequence[LaurentPoly]) -> Stratum:
    """chi of {p = 0 for p in polys} in the torus.

    Tried in order: direct point count when the exact system is
    zero-dimensional; BKK when it is a non-degenerate complete intersection;
    for a single hypersurface with isolated singular points and smooth
    proper face parts, BKK corrected by the Milnor numbers.
    """
    d = polys[0].ambient_dim
    exact = all(p.mode is Mode.EXACT for p in polys)
    if exact and d <= EXACT_VARIABLE_LIMIT:
        ideal = torus_ideal(polys)
        if ideal.is_zero_dimensional:
            return Stratum((), ideal.distinct() if not ideal.is_empty else 0, "points", HStatus.PASS)
    nd = is_nondegenerate_ci(polys)
    if nd.passed:
        chi = 0 if len(polys) > d else bkk_euler([newton_polytope(p) for p in polys], d)
        return Stratum((), chi, "bkk", _FROM_LEAF[nd.status])
    if len(polys) == 1 and exact:
        P = polys[0]
        Delta = newton_polytope(P)
        proper = [r for r in nd.per_face if r.face_dim < Delta.dim]
        if Delta.is_full_dimensional and all(r.status is Status.PASS for r in proper):
            loc = singular_locus_hypersurface(P)
            if loc.isolated and loc.milnor_total is not None:
                chi = (-1) ** (d - 1) * normalized_volume(Delta) + (-1) ** d * loc.milnor_total
                return Stratum((), chi, "bkk+milnor", HStatus.PASS)
    status = HStatus.UNDECIDED if nd.status is Status.UNDECIDED else HStatus.FAIL
    return Stratum((), None, "unavailable", status)


def euler_complement(sys: LaurentSystem) -> EulerReport:
    """chi(W), W = T_0 minus the union of the P_i = 0, by inclusion-exclusion over the Z_J."""
    if sys.torus_dim < 1:
        raise ValueError("the torus T_0 must be positive-dimensional")
    strata = []
    total = 0
    for size in range(1, sys.k + 1):
        for J in combinations(range(sys.k), size):
            s = stratum_euler([sys.polys[i] for i in J])
            strata.append(Stratum(J, s.chi, s.method, s.status))
            if s.chi is None:
                total = None
            elif total is not None:
                total += (-1) ** size * s.chi
    return EulerReport(strata, total)


# ---------------------------------------------------------------------------
# hypothesis legs

def _nonresonance_leg(v: TheoremVerdict, sys: LaurentSystem, c: ParameterVector):
    try:
        verdict = check_nonresonance([p.support for p in sys.polys], c)
    except DegenerateCone as e:
        v.add("c nonresonant", HStatus.UNDECIDED, f"cone K is not full-dimensional: {e}")
        return
    bad = [list(f.conormal) for f in verdict.failing_facets]
    v.add("c nonresonant", _hs(verdict.nonresonant),
          f"{len(verdict.certificates)} facets of K checked" + (f"; resonant on {bad}" if bad else ""))


def _delta_dim_leg(v: TheoremVerdict, sys: LaurentSystem) -> LatticePolytope:
    total = minkowski_sum(sys.newton_polytopes())
    v.add("dim Delta = n-k", _hs(total.dim == sys.torus_dim), f"dim Delta = {total.dim}, n-k = {sys.torus_dim}")
    return total


def _nondeg_leg(v: TheoremVerdict, sys: LaurentSystem, strong: bool, name: str):
    try:
        rep = check_strong(sys) if strong else check_weak(sys)
    except DimensionHypothesis as e:
        v.add(name, HStatus.FAIL, str(e))
        return None
    fails = [(list(map(list, r.face)), [j + 1 for j in r.subset]) for r in rep.failing()]
    v.add(name, _FROM_LEAF[rep.status], rep.label + (f"; failing (face, J): {fails[:4]}" if fails else ""))
    return rep


def _euler_dimension(v: TheoremVerdict, sys: LaurentSystem, degree: int):
    rep = euler_complement(sys)
    v.euler = rep.to_json()
    if rep.chi_complement is None:
        v.predicted_dimension = None
        v.notes.append("chi(W) not computable: some stratum Z_J is neither zero-dimensional nor non-degenerate")
        return rep
    v.predicted_dimension = (-1) ** degree * rep.chi_complement
    v.dimension_source = "Euler-derived"
    if rep.status is HStatus.ASSUMED:
        v.notes.append("chi(W) uses strata whose non-degeneracy is assumed by genericity")
    return rep


def _milnor_sum(v: TheoremVerdict, P: LaurentPoly, supplied) -> Optional[int]:
    """Sum of Milnor numbers of P = 0 in T_0, cross-checked with supplied values."""
    supplied_sum = sum(int(m["mu"]) for m in supplied) if supplied else None
    if P.mode is Mode.GENERIC:
        v.add("isolated singular points", HStatus.ASSUMED, "generic coefficients: smooth hypersurface assumed")
        return 0 if supplied_sum is None else supplied_sum
    loc = singular_locus_hypersurface(P)
    if loc.status is Status.UNDECIDED:
        if supplied_sum is not None:
            v.add("isolated singular points", HStatus.ASSUMED, "Milnor numbers supplied by the input, not verified")
            return supplied_sum
        v.add("isolated singular points", HStatus.UNDECIDED, loc.note)
        return None
    if not loc.isolated:
        v.add("isolated singular points", HStatus.FAIL, loc.note)
        return None
    v.add("isolated singular points", HStatus.PASS,
          f"{len(loc.singular_points)} singular point(s), sum of Milnor numbers {loc.milnor_total}")
    if supplied:
        agree = supplied_sum == loc.milnor_total
        if loc.milnor_numbers is not None and loc.exact_points:
            table = {tuple(GaussRat.coerce(c) for c in p): m for p, m in zip(loc.singular_points, loc.milnor_numbers)}
            for rec in supplied:
                key = tuple(parse_gauss(c) for c in rec["point"])
                agree = agree and table.get(key) == int(rec["mu"])
        v.add("supplied Milnor numbers agree", _hs(agree),
              f"supplied sum {supplied_sum}, computed {loc.milnor_total}")
    return loc.milnor_total


# ---------------------------------------------------------------------------
# theorems

def _vtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("VTM")
    v.add("k = 1", _hs(sys.k == 1), f"k = {sys.k}")
    if sys.k != 1:
        return v._finish()
    Delta = _delta_dim_leg(v, sys)
    _nonresonance_leg(v, sys, c)
    _nondeg_leg(v, sys, strong=False, name="weakly non-degenerate")
    if not v.applicable:
        return v._finish()
    mu = _milnor_sum(v, sys.polys[0], opts.get("milnor"))
    v.concentration_degree = sys.torus_dim
    vol = normalized_volume(Delta)
    if mu is None:
        v.predicted_dimension = f"{vol} - sum(mu)"
        v.dimension_source = "formula-with-unknown-mu"
    else:
        v.predicted_dimension = vol - mu
        v.dimension_source = "Vol(Delta) - sum(mu)"
        if v.hypotheses[-1].status is HStatus.FAIL:
            return v._finish()
        rep = euler_complement(sys)
        v.euler = rep.to_json()
        if rep.chi_complement is not None:
            coherent = (-1) ** v.concentration_degree * rep.chi_complement == v.predicted_dimension
            v.euler["coherent"] = coherent
            if not coherent:
                v.notes.append("Euler cross-check disagrees with the closed formula")
    return v._finish()


def _mvtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("MVTM")
    _delta_dim_leg(v, sys)
    _nonresonance_leg(v, sys, c)
    _nondeg_leg(v, sys, strong=False, name="weakly non-degenerate")
    if v.applicable:
        v.concentration_degree = sys.torus_dim
        _euler_dimension(v, sys, sys.torus_dim)
    return v._finish()


def _ntm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("NTM")
    _nondeg_leg(v, sys, strong=True, name="strongly non-degenerate")
    v.add("(c, c~) not in Z^n", _hs(check_c_not_integer(c)), "some entry is not an integer"
          if check_c_not_integer(c) else "all entries are integers")
    dims = [P.dim for P in sys.newton_polytopes()]
    v.add("dim Delta_i = n-k for all i", _hs(all(d == sys.torus_dim for d in dims)), f"dims {dims}")
    if v.applicable:
        v.concentration_degree = sys.torus_dim
        _euler_dimension(v, sys, sys.torus_dim)
    return v._finish()


def _nvtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("NVTM", space=f"Z_{sys.k}")
    N = sys.torus_dim
    dims = [P.dim for P in sys.newton_polytopes()]
    v.add("dim Delta_i = torus dimension", _hs(all(d == N for d in dims)), f"dims {dims}, torus dim {N}")
    torus_part = c.normalized()[:N]
    nontrivial = any(not is_integer(x) for x in torus_part)
    v.add("local system on T non-trivial", _hs(nontrivial), "monodromy exponents " +
          str([str(x) for x in torus_part]))
    for i in range(1, sys.k + 1):
        rep = is_nondegenerate_ci(sys.polys[:i])
        v.add(f"Z_{i} non-degenerate complete intersection", _FROM_LEAF[rep.status], rep.label)
    if v.applicable and sys.k <= N:
        v.concentration_degree = N - sys.k
        v.predicted_dimension = mixed_volume_sum(sys.newton_polytopes(), N)
        v.dimension_source = "mixed volume sum"
        v.notes.append("levels: " + ", ".join(
            f"Z_{i}: degree {N - i}, dim {mixed_volume_sum(sys.newton_polytopes()[:i], N)}"
            for i in range(1, sys.k + 1)))
    elif sys.k > N:
        v.add("number of polynomials <= torus dimension", HStatus.FAIL, f"k = {sys.k} > {N}")
    return v._finish()


def _face_data(sys):
    total = minkowski_sum(sys.newton_polytopes())
    return total, total.faces()


def _dirs(face) -> List:
    vs = sorted(face.vertices)
    return [vsub(v, vs[0]) for v in vs[1:]]


def _generic_c(v: TheoremVerdict):
    v.add("c generic", HStatus.ASSUMED, "the genericity locus for c is not explicit")


def _svtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("SVTM")
    v.add("k = 1", _hs(sys.k == 1), f"k = {sys.k}")
    if sys.k != 1:
        return v._finish()
    _delta_dim_leg(v, sys)
    total, faces = _face_data(sys)
    statuses = []
    for gamma in faces:
        (part,) = _face_parts(sys.polys, gamma.witness, (0,))
        statuses.append(isolated_singularities(part, _dirs(gamma)).status)
    v.add("every face part has only isolated singular points on T_gamma", _FROM_LEAF[_worst(statuses)],
          f"{len(faces)} faces")
    _generic_c(v)
    if v.applicable:
        v.concentration_degree = sys.torus_dim
        _euler_dimension(v, sys, sys.torus_dim)
    return v._finish()


def _worst(statuses) -> Status:
    for s in (Status.FAIL, Status.UNDECIDED, Status.ASSUMED_GENERIC):
        if s in statuses:
            return s
    return Status.PASS


def _smvtm_like(sys, v: TheoremVerdict, similar_mode: bool):
    total, faces = _face_data(sys)
    d = sys.torus_dim
    statuses = []
    if not similar_mode:
        unit = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        for P in sys.polys:
            statuses.append(isolated_singularities(P, unit).status)
        v.add("each P_i = 0 has only isolated singular points", _FROM_LEAF[_worst(statuses)], "")
    else:
        for gamma in faces:
            for i in range(sys.k):
                (part,) = _face_parts(sys.polys, gamma.witness, (i,))
                statuses.append(isolated_singularities(part, _dirs(gamma)).status)
        v.add("every gamma_i-part has only isolated singular points on T_gamma", _FROM_LEAF[_worst(statuses)],
              f"{len(faces)} faces x {sys.k} polynomials")
    face_statuses = []
    for gamma in faces:
        if gamma.dim >= total.dim:
            continue
        for size in range(1, sys.k + 1):
            if similar_mode and size < 2:
                continue
            for J in combinations(range(sys.k), size):
                parts = _face_parts(sys.polys, gamma.witness, J)
                if not similar_mode and size == 1:
                    gi = hull(parts[0].support)
                    if gi.dim == gamma.dim == d - 1:
                        face_statuses.append(isolated_singularities(parts[0], _dirs(gamma)).status)
                        continue
                face_statuses.append(smooth_complete_intersection(parts).status)
    v.add("proper face systems non-degenerate (or isolated, where allowed)",
          _FROM_LEAF[_worst(face_statuses)], f"{len(face_statuses)} (face, J) pairs")


def _smvtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("SMVTM")
    _delta_dim_leg(v, sys)
    if v.applicable:
        _smvtm_like(sys, v, similar_mode=False)
    _generic_c(v)
    if v.applicable:
        v.concentration_degree = sys.torus_dim
        _euler_dimension(v, sys, sys.torus_dim)
    return v._finish()


def _ssmvtm(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("SSMVTM")
    _delta_dim_leg(v, sys)
    nps = sys.newton_polytopes()
    sim = all(similar(nps[0], P) for P in nps[1:])
    v.add("Newton polytopes similar", _hs(sim), "positive rational dilation plus translation")
    if v.applicable:
        _smvtm_like(sys, v, similar_mode=True)
    _generic_c(v)
    if v.applicable:
        v.concentration_degree = sys.torus_dim
        _euler_dimension(v, sys, sys.torus_dim)
    return v._finish()


def _bkk(sys, c, opts) -> TheoremVerdict:
    v = TheoremVerdict("BKK", space=f"Z_{sys.k}")
    rep = is_nondegenerate_ci(sys.polys)
    v.add("non-degenerate complete intersection", _FROM_LEAF[rep.status], rep.label)
    v.add("p <= n", _hs(sys.k <= sys.torus_dim), f"p = {sys.k}, n = {sys.torus_dim}")
    if v.applicable:
        v.predicted_dimension = bkk_euler(sys.newton_polytopes(), sys.torus_dim)
        v.dimension_source = "Euler characteristic chi(Z)"
    return v._finish()


_DISPATCH = {"VTM": _vtm, "MVTM": _mvtm, "NTM": _ntm, "NVTM": _nvtm, "SVTM": _svtm,
             "SMVTM": _smvtm, "SSMVTM": _ssmvtm, "BKK": _bkk}


@dataclass
class Prediction:
    verdict: Optional[TheoremVerdict]
    tried: List[TheoremVerdict]

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json() if self.verdict else None,
                "tried": [t.to_json() for t in self.tried]}


def predict(sys: LaurentSystem, c: ParameterVector, theorem: str = "auto", milnor=None) -> Prediction:
    """Check one theorem, or the AUTO sequence, returning the first applicable verdict."""
    if c.n != sys.torus_dim + sys.k or c.k != sys.k:
        raise ValueError(f"parameter has length {c.n}, expected n = {sys.torus_dim + sys.k}")
    opts = {"milnor": milnor}
    name = theorem.upper()
    if name != "AUTO":
        if name not in _DISPATCH:
            raise ValueError(f"unknown theorem {theorem!r}")
        v = _DISPATCH[name](sys, c, opts)
        return Prediction(v, [v])
    tried = []
    for name in AUTO_ORDER:
        if name == "MVTM" and sys.k == 1:
            continue  # coincides with VTM, which also has the closed dimension formula
        v = _DISPATCH[name](sys, c, opts)
        tried.append(v)
        if v.applicable:
            return Prediction(v, tried)
    return Prediction(None, tried)


def nvtm_dimension(polytopes: Sequence[LatticePolytope], n: int) -> int:
    if any(P.dim != n or P.ambient_dim != n for P in polytopes):
        raise DimensionHypothesis("every Delta_j must be n-dimensional")
    return mixed_volume_sum(list(polytopes), n)


# ---------------------------------------------------------------------------
# Morse count

@dataclass
class MorseTrial:
    a: Tuple[Fraction, ...]
    count: Optional[int]
    volume: int
    match: bool


@dataclass
class MorseReport:
    trials: List[MorseTrial]

    @property
    def matches(self) -> int:
        return sum(t.match for t in self.trials)

    @property
    def rate(self) -> float:
        return self.matches / len(self.trials) if self.trials else 1.0

    def to_json(self) -> dict:
        return {"trials": len(self.trials), "matches": self.matches, "rate": self.rate,
                "per_trial": [{"a": [str(x) for x in t.a], "count": t.count, "volume": t.volume,
                               "match": t.match} for t in self.trials]}


def random_interior_point(P: LatticePolytope, rng: random.Random) -> Tuple[Fraction, ...]:
    """Strictly positive random convex combination of the vertices (a relative interior point)."""
    w = [Fraction(rng.randint(1, 97)) for _ in P.vertices]
    s = sum(w)
    return tuple(sum(wi * v[j] for wi, v in zip(w, P.vertices)) / s for j in range(P.ambient_dim))


def verify_morse_count(h: LaurentPoly, trials: int = 10, seed: int = 0) -> MorseReport:
    """Critical points of h(x) x^(-a) on the torus versus Vol(NP(h)) for random interior a."""
    if h.ambient_dim > 2:
        raise ValueError("Morse counts are verified for n <= 2")
    if h.mode is Mode.GENERIC:
        raise ValueError("Morse counts need exact coefficients")
    rng = random.Random(seed)
    P = newton_polytope(h)
    vol = normalized_volume(P)
    out = []
    for _ in range(trials):
        if P.is_full_dimensional:
            a = random_interior_point(P, rng)
        else:
            # off the affine hull: no critical points, matching Vol = 0
            a = tuple(Fraction(rng.randint(1, 97), rng.randint(98, 199)) + v for v in P.vertices[0])
        try:
            eqs = critical_system(h, a)
            count = count_torus_solutions(list(eqs), avoid=[h])[1]
        except (NonIsolated, ValueError):
            count = None
        out.append(MorseTrial(a, count, vol, count == vol))
    return MorseReport(out)
