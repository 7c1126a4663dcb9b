"""Command-line front end: one JSON document in, one JSON report out.

Exit codes: 0 success, 1 a hypothesis fails (resonant, degenerate, ...),
2 bad input, 3 undecided at the exact tier.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Dict, List, Optional, Tuple

from . import __version__, kernels
from .elimination import NonIsolated, NotSingular, milnor_at, milnor_total
from .exact import parse_gauss
from .laurent import GENERIC, Mode, LaurentPoly, LaurentSystem, lift_system
from .nondegeneracy import (Level, Status, check_level, singular_locus_hypersurface)
from .nonresonance import Convention, ParameterVector, check_nonresonance
from .polytope import PolytopeError, dual_fan, hull
from .problem import (SCHEMA, InputError, ProblemFile, parse_coeff, parse_matrix,
                      parse_poly_records)
from .spectrum import contains, eigenvalue_set, newton_polyhedron, offending_pairs
from .theorems import euler_complement, predict, verify_morse_count
from .volume import MixedVolumeQuery, mixed_volume, mixed_volume_oracle, normalized_volume

OK, HYPOTHESIS_FAILED, INPUT_ERROR, UNDECIDED = 0, 1, 2, 3

_STATUS_EXIT = {Status.PASS: OK, Status.ASSUMED_GENERIC: OK, Status.FAIL: HYPOTHESIS_FAILED,
                Status.UNDECIDED: UNDECIDED}


class Outcome:
    """What a subcommand hands back: the result body, an exit code and a one-line summary."""

    def __init__(self, result: dict, code: int, summary: str, echo: Optional[dict] = None):
        self.result = result
        self.code = code
        self.summary = summary
        self.echo = echo


# ---------------------------------------------------------------------------
# input helpers

def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise InputError("$", f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("$", f"malformed JSON: {e}") from None


def _check_schema(doc):
    if not isinstance(doc, dict):
        raise InputError("$", "expected a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise InputError("$.schema", f"unsupported schema {doc['schema']!r}")


def _points(doc) -> List[tuple]:
    _check_schema(doc)
    if "points" not in doc:
        raise InputError("$.points", "missing field")
    return parse_matrix(doc["points"], "$.points")


def _poly(doc, key: str) -> LaurentPoly:
    _check_schema(doc)
    if key not in doc:
        raise InputError(f"$.{key}", "missing field")
    return parse_poly_records(doc[key], f"$.{key}")


def _hypersurface(doc) -> Tuple[LaurentPoly, dict]:
    """Either {"polynomial": records} or a problem file with k = 1."""
    if isinstance(doc, dict) and "polynomial" in doc:
        P = _poly(doc, "polynomial")
        return P, {"schema": SCHEMA, "polynomial": P.to_records()}
    prob = ProblemFile.from_json(doc)
    if prob.k != 1:
        raise InputError("$.k", "this command takes a single polynomial (k = 1)")
    return prob.system().polys[0], prob.to_json()


def _face_json(f) -> dict:
    return {"vertices": [list(v) for v in f.sorted_vertices()], "dim": f.dim, "witness": list(f.witness)}


# ---------------------------------------------------------------------------
# subcommands

def cmd_hull(doc, args) -> Outcome:
    pts = _points(doc)
    P = hull(pts)
    res = {"ambient_dim": P.ambient_dim, "dim": P.dim, "vertices": P.to_matrix(),
           "facets": [{"vertices": [list(v) for v in sorted(vs)], "conormal": list(u), "min": m}
                      for vs, u, m in P.facet_data()]}
    return Outcome(res, OK, f"{len(P.vertices)} vertices, dim {P.dim}, {len(res['facets'])} facets",
                   {"schema": SCHEMA, "points": [list(p) for p in pts]})


def cmd_faces(doc, args) -> Outcome:
    pts = _points(doc)
    P = hull(pts)
    faces = P.faces()
    counts: Dict[int, int] = {}
    for f in faces:
        counts[f.dim] = counts.get(f.dim, 0) + 1
    res = {"dim": P.dim, "f_vector": [counts.get(i, 0) for i in range(P.dim + 1)],
           "faces": [_face_json(f) for f in faces]}
    return Outcome(res, OK, f"f-vector {res['f_vector']}", {"schema": SCHEMA, "points": [list(p) for p in pts]})


def cmd_fan(doc, args) -> Outcome:
    pts = _points(doc)
    fan = dual_fan(hull(pts))
    res = fan.to_json()
    return Outcome(res, OK, f"{len(res['cones'])} cones, {len(res['rays'])} rays",
                   {"schema": SCHEMA, "points": [list(p) for p in pts]})


def cmd_volume(doc, args) -> Outcome:
    pts = _points(doc)
    P = hull(pts)
    vol = normalized_volume(P)
    res = {"value": vol, "path": "pulling triangulation", "backend": kernels.BACKEND}
    return Outcome(res, OK, str(vol), {"schema": SCHEMA, "points": [list(p) for p in pts]})


def cmd_mixed_volume(doc, args) -> Outcome:
    _check_schema(doc)
    if "polytopes" not in doc:
        raise InputError("$.polytopes", "missing field")
    raw = doc["polytopes"]
    if not isinstance(raw, list) or not raw:
        raise InputError("$.polytopes", "expected a non-empty list of point matrices")
    mats = [parse_matrix(m, f"$.polytopes[{i}]") for i, m in enumerate(raw)]
    mult = doc.get("multiplicities")
    if mult is None:
        mult = [1] * len(mats)
    if not isinstance(mult, list) or len(mult) != len(mats) or not all(
            isinstance(m, int) and not isinstance(m, bool) and m > 0 for m in mult):
        raise InputError("$.multiplicities", "expected one positive integer per polytope")
    dims = {len(m[0]) for m in mats}
    if len(dims) != 1:
        raise InputError("$.polytopes", "polytopes live in different ambient spaces")
    n = dims.pop()
    if sum(mult) != n:
        raise InputError("$.multiplicities", f"multiplicities sum to {sum(mult)}, ambient dimension is {n}")
    q = MixedVolumeQuery.compact([(hull(m), k) for m, k in zip(mats, mult)])
    value = mixed_volume(q)
    res = {"value": value, "path": "inclusion-exclusion over sub-sums", "backend": kernels.BACKEND}
    if args.verify:
        oracle = mixed_volume_oracle(q)
        res["oracle"] = {"value": oracle, "path": "dilation interpolation", "agrees": oracle == value}
    echo = {"schema": SCHEMA, "polytopes": [[list(p) for p in m] for m in mats], "multiplicities": mult}
    return Outcome(res, OK, str(value), echo)


def cmd_nonresonance(doc, args) -> Outcome:
    prob = ProblemFile.from_json(doc)
    c = prob.parameter()
    v = check_nonresonance([list(B) for B in prob.supports], c)
    res = v.to_json()
    res["declared_convention"] = prob.convention.value
    res["normalized_c"] = [x.to_json() for x in c.normalized()]
    n_bad = len(v.failing_facets)
    summary = "nonresonant" if v.nonresonant else f"resonant on {n_bad} facet(s)"
    return Outcome(res, OK if v.nonresonant else HYPOTHESIS_FAILED, summary, prob.to_json())


def cmd_check_nondeg(doc, args) -> Outcome:
    prob = ProblemFile.from_json(doc)
    rep = check_level(prob.system(), Level(args.level))
    res = rep.to_json()
    bad = len(rep.failing())
    summary = f"{args.level} non-degeneracy: {rep.label}" + (f" ({bad} failing records)" if bad else "")
    return Outcome(res, _STATUS_EXIT[rep.status], summary, prob.to_json())


def cmd_singular_locus(doc, args) -> Outcome:
    P, echo = _hypersurface(doc)
    rep = singular_locus_hypersurface(P)
    code = UNDECIDED if rep.status is Status.UNDECIDED else OK
    return Outcome(rep.to_json(), code, f"{rep.status.value}: {rep.note}", echo)


def cmd_milnor(doc, args) -> Outcome:
    P = _poly(doc, "polynomial")
    echo = {"schema": SCHEMA, "polynomial": P.to_records()}
    if P.ambient_dim > 2:
        raise InputError("$.polynomial", "Milnor numbers are computed in at most two variables")
    if doc.get("point") is None:
        total = milnor_total(P)
        return Outcome({"total": total}, OK, f"sum of Milnor numbers = {total}", echo)
    raw = doc["point"]
    if not isinstance(raw, list) or len(raw) != P.ambient_dim:
        raise InputError("$.point", f"expected {P.ambient_dim} coordinates")
    pt = [parse_coeff(x, f"$.point[{i}]") for i, x in enumerate(raw)]
    if any(z is GENERIC or not z for z in pt):
        raise InputError("$.point", "coordinates must be nonzero exact numbers")
    echo["point"] = [z.to_json() for z in pt]
    try:
        mu = milnor_at(P, pt)
    except NotSingular as e:
        return Outcome({"mu": None, "reason": str(e)}, HYPOTHESIS_FAILED, f"not singular: {e}", echo)
    except NonIsolated as e:
        return Outcome({"mu": None, "reason": str(e)}, HYPOTHESIS_FAILED, f"non-isolated: {e}", echo)
    return Outcome({"mu": mu}, OK, f"mu = {mu}", echo)


def cmd_spectrum(doc, args) -> Outcome:
    f = _poly(doc, "f")
    echo = {"schema": SCHEMA, "f": f.to_records()}
    try:
        np_ = newton_polyhedron(f)
    except PolytopeError as e:
        raise InputError("$.f", str(e)) from None
    beta = None
    if doc.get("beta") is not None:
        beta = parse_gauss(doc["beta"])
        echo["beta"] = beta.to_json()
    es = eigenvalue_set(np_, beta)
    res = {"polyhedron": np_.to_json(), "eigenvalues": es.to_json()}
    queries = doc.get("q")
    if queries is not None:
        if beta is None:
            raise InputError("$.beta", "membership queries need beta")
        if not isinstance(queries, list):
            raise InputError("$.q", "expected a list of exponents q")
        qs = [parse_coeff(x, f"$.q[{i}]") for i, x in enumerate(queries)]
        echo["q"] = [x.to_json() for x in qs]
        res["membership"] = [{"q": x.to_json(), "contains": contains(es, x),
                              "via": [{"d": d, "delta": e} for d, e in offending_pairs(es, x)]} for x in qs]
    return Outcome(res, OK, f"{len(es.entries)} congruence pairs", echo)


def cmd_lift(doc, args) -> Outcome:
    prob = ProblemFile.from_json(doc)
    lifted = lift_system(prob.system())
    res = {"torus_dim": lifted.torus_dim, "polynomials": [p.to_records() for p in lifted.polys]}
    return Outcome(res, OK, f"lifted to {lifted.torus_dim} variables", prob.to_json())


def cmd_critical_count(doc, args) -> Outcome:
    if isinstance(doc, dict) and "h" in doc:
        h = _poly(doc, "h")
        echo = {"schema": SCHEMA, "h": h.to_records()}
    else:
        h, echo = _hypersurface(doc)
    if h.ambient_dim > 2:
        raise InputError("$.h", "Morse counts are verified in at most two variables")
    if h.mode is Mode.GENERIC:
        raise InputError("$.h", "Morse counts need exact coefficients")
    rep = verify_morse_count(h, trials=args.trials, seed=args.seed)
    res = rep.to_json()
    res["seed"] = args.seed
    return Outcome(res, OK, f"{rep.matches}/{len(rep.trials)} trials match Vol(NP(h))", echo)


def cmd_euler(doc, args) -> Outcome:
    prob = ProblemFile.from_json(doc)
    rep = euler_complement(prob.system())
    code = OK if rep.chi_complement is not None else UNDECIDED
    return Outcome(rep.to_json(), code, f"chi(W) = {rep.chi_complement}", prob.to_json())


def cmd_predict(doc, args) -> Outcome:
    prob = ProblemFile.from_json(doc)
    try:
        pred = predict(prob.system(), prob.parameter(), args.theorem, milnor=prob.milnor_records())
    except PolytopeError as e:
        raise InputError("$", str(e)) from None
    res = pred.to_json()
    v = pred.verdict
    if v is not None and v.applicable:
        summary = f"{v.theorem} {v.label}: degree {v.concentration_degree}, dim {v.predicted_dimension}"
        return Outcome(res, OK, summary, prob.to_json())
    if any(t.undecided for t in pred.tried):
        return Outcome(res, UNDECIDED, "no theorem decided applicable at the exact tier", prob.to_json())
    return Outcome(res, HYPOTHESIS_FAILED, "no theorem applies", prob.to_json())


# ---------------------------------------------------------------------------
# selftest

def _at_one(coeffs) -> LaurentPoly:
    """sum c (x - 1)^i (y - 1)^j: a plane germ moved to the torus point (1, 1)."""
    x = LaurentPoly({(1, 0): 1, (0, 0): -1}, 2)
    y = LaurentPoly({(0, 1): 1, (0, 0): -1}, 2)
    out = LaurentPoly({}, 2)
    for (i, j), c in coeffs.items():
        out = out + (x ** i * y ** j).scale(c)
    return out


def _selftest_checks() -> List[Tuple[str, Callable[[], bool]]]:
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    simplex = [(0, 0), (1, 0), (0, 1)]
    seg = LaurentPoly({(0,): 1, (1,): 2, (2,): 1})
    node = _at_one({(2, 0): 1, (0, 2): -1, (3, 0): 1})
    cusp = _at_one({(2, 0): 1, (0, 3): -1})
    one = [parse_gauss(1), parse_gauss(1)]

    def nonres():
        v = check_nonresonance([[(0,), (1,)]], ParameterVector.parse(["1/2", "1/2"], 1))
        return not v.nonresonant

    def predict_seg():
        c = ParameterVector.parse(["1/3", "1/2"], 1)
        v = predict(LaurentSystem((seg,)), c).verdict
        return v is not None and v.concentration_degree == 1 and v.predicted_dimension == 1

    def spectrum():
        f = LaurentPoly({(2, 0): 1, (0, 3): 1}, 2)
        return eigenvalue_set(newton_polyhedron(f)).entries == frozenset({(3, 1), (6, 2)})

    def weak_strong():
        s = LaurentSystem((seg,))
        return check_level(s, Level.WEAK).status is Status.PASS and check_level(s, Level.STRONG).status is Status.FAIL

    return [
        ("normalized volume of the unit square is 2", lambda: normalized_volume(hull(square)) == 2),
        ("mixed volume of simplex and square is 2", lambda: mixed_volume([hull(simplex), hull(square)]) == 2),
        ("interpolation oracle agrees", lambda: mixed_volume_oracle([hull(simplex), hull(square)]) == 2),
        ("c = (1/2, 1/2) is resonant for B = {0, 1}", nonres),
        ("1 + 2x + x^2 is weak-pass, strong-fail", weak_strong),
        ("node has Milnor number 1", lambda: milnor_at(node, one) == 1),
        ("cusp has Milnor number 2", lambda: milnor_at(cusp, one) == 2),
        ("spectrum of y1^2 + y2^3 is {(3, b), (6, 2b)}", spectrum),
        ("segment example predicts degree 1, dimension 1", predict_seg),
    ]


def cmd_selftest(doc, args) -> Outcome:
    rows = []
    for name, fn in _selftest_checks():
        try:
            ok = bool(fn())
            err = None
        except Exception as e:  # a crash is a failed check, reported as such
            ok, err = False, f"{type(e).__name__}: {e}"
        rows.append({"check": name, "pass": ok, **({"error": err} if err else {})})
    passed = sum(r["pass"] for r in rows)
    res = {"backend": kernels.BACKEND, "checks": rows, "passed": passed, "total": len(rows)}
    return Outcome(res, OK if passed == len(rows) else HYPOTHESIS_FAILED, f"{passed}/{len(rows)} checks pass", {})


COMMANDS: Dict[str, Callable] = {
    "hull": cmd_hull, "faces": cmd_faces, "fan": cmd_fan, "volume": cmd_volume,
    "mixed-volume": cmd_mixed_volume, "nonresonance": cmd_nonresonance, "check-nondeg": cmd_check_nondeg,
    "singular-locus": cmd_singular_locus, "milnor": cmd_milnor, "spectrum": cmd_spectrum, "lift": cmd_lift,
    "critical-count": cmd_critical_count, "euler": cmd_euler, "predict": cmd_predict, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized trials")
    common.add_argument("--trials", type=int, default=10, help="number of randomized trials")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock timing from the report")
    p = argparse.ArgumentParser(prog="laurentvan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"laurentvan {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name != "selftest":
            sp.add_argument("input", nargs="?", default="-", help="JSON input file, '-' for stdin")
        if name == "check-nondeg":
            sp.add_argument("--level", choices=("weak", "strong"), default="weak")
        if name == "predict":
            sp.add_argument("--theorem", default="auto",
                            help="auto, vtm, svtm, mvtm, smvtm, ssmvtm, ntm, nvtm or bkk")
        if name == "mixed-volume":
            sp.add_argument("--verify", action="store_true", help="also evaluate the interpolation oracle")
    return p


def _render_text(report: dict) -> str:
    res = report.get("result") or {}
    lines = [f"laurentvan {report['command']['name']}: {report['summary']} (exit {report['exit_code']})"]
    for key in ("value", "label", "status", "chi_complement", "mu", "total"):
        if key in res:
            lines.append(f"  {key}: {res[key]}")
    if "error" in report:
        lines.append(f"  error at {report['error']['path']}: {report['error']['message']}")
    return "\n".join(lines)


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    if args.trials < 1:
        args.trials = 1
    report = {"schema": SCHEMA, "tool": "laurentvan", "version": __version__,
              "command": {"name": args.command,
                          "options": {k: v for k, v in sorted(vars(args).items())
                                      if k not in ("command", "input", "format", "no_timing")}}}
    t0 = time.perf_counter()
    try:
        doc = _load(args.input) if args.command != "selftest" else {}
        out = COMMANDS[args.command](doc, args)
        report["command"]["input"] = out.echo
        report["result"] = out.result
        report["summary"] = out.summary
        code = out.code
    except InputError as e:
        code = INPUT_ERROR
        report["error"] = {"path": e.path, "message": e.message}
        report["summary"] = f"input error at {e.path}: {e.message}"
    except (PolytopeError, ValueError, KeyError, TypeError) as e:
        code = INPUT_ERROR
        report["error"] = {"path": "$", "message": f"{type(e).__name__}: {e}"}
        report["summary"] = f"input error: {e}"
    report["exit_code"] = code
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if args.format == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(_render_text(report) + "\n")
    stderr.write(f"laurentvan {args.command}: {report['summary']}\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
