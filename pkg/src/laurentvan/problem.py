"""The versioned JSON problem file (``"schema": 1``).

A problem describes k Laurent polynomials on (C^*)^(n-k) and a parameter
vector c in C^n.  Parsing errors carry the JSON path of the offending field.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence

from .exact import GaussRat, parse_gauss
from .laurent import GENERIC, LaurentPoly, LaurentSystem
from .nonresonance import Convention, ParameterVector

SCHEMA = 1


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _require(doc: dict, key: str, path: str = "$"):
    if not isinstance(doc, dict):
        raise InputError(path, "expected a JSON object")
    if key not in doc:
        raise InputError(f"{path}.{key}", "missing field")
    return doc[key]


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(path, f"expected an integer, got {x!r}")
    return x


def parse_matrix(rows, path: str, dim: Optional[int] = None) -> List[tuple]:
    if not isinstance(rows, list) or not rows:
        raise InputError(path, "expected a non-empty list of integer rows")
    out = []
    for i, r in enumerate(rows):
        if not isinstance(r, list):
            raise InputError(f"{path}[{i}]", "expected an integer array")
        row = tuple(_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(r))
        if dim is not None and len(row) != dim:
            raise InputError(f"{path}[{i}]", f"row has length {len(row)}, expected {dim}")
        out.append(row)
    if len({len(r) for r in out}) != 1:
        raise InputError(path, "rows have different lengths")
    return out


def parse_coeff(x, path: str):
    if x == "generic":
        return GENERIC
    try:
        return parse_gauss(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(path, f"bad coefficient {x!r}: {e}") from None


def coeff_to_json(c):
    return "generic" if c is GENERIC else c.to_json()


def parse_poly_records(recs, path: str, dim: Optional[int] = None) -> LaurentPoly:
    if not isinstance(recs, list) or not recs:
        raise InputError(path, "expected a non-empty list of {exponent, coeff} records")
    terms = {}
    for i, rec in enumerate(recs):
        p = f"{path}[{i}]"
        exp = tuple(_int(x, f"{p}.exponent[{j}]") for j, x in enumerate(_require(rec, "exponent", p)))
        if dim is not None and len(exp) != dim:
            raise InputError(f"{p}.exponent", f"length {len(exp)}, expected {dim}")
        if exp in terms:
            raise InputError(f"{p}.exponent", "duplicate exponent")
        c = parse_coeff(rec.get("coeff", "generic"), f"{p}.coeff")
        if c is not GENERIC and not c:
            raise InputError(f"{p}.coeff", "explicit zero coefficient")
        terms[exp] = c
    dims = {len(e) for e in terms}
    if len(dims) != 1:
        raise InputError(path, "exponents have different lengths")
    return LaurentPoly(terms, dims.pop())


@dataclass(frozen=True)
class ProblemFile:
    n: int
    k: int
    supports: tuple  # k tuples of exponent tuples
    coefficients: Optional[tuple]  # k tuples, GaussRat or GENERIC, aligned with supports
    parameters: Optional[tuple]  # n GaussRat
    convention: Convention = Convention.SECTION3
    milnor: Optional[tuple] = None  # tuples (point, mu)

    # ------------------------------------------------------------------
    @classmethod
    def from_json(cls, doc: Any) -> "ProblemFile":
        if not isinstance(doc, dict):
            raise InputError("$", "expected a JSON object")
        schema = doc.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise InputError("$.schema", f"unsupported schema {schema!r}; this tool reads schema {SCHEMA}")
        n = _int(_require(doc, "n"), "$.n")
        k = _int(_require(doc, "k"), "$.k")
        if not 1 <= k <= n:
            raise InputError("$.k", f"need 1 <= k <= n, got k = {k}, n = {n}")
        sup = _require(doc, "supports")
        if not isinstance(sup, list) or len(sup) != k:
            raise InputError("$.supports", f"expected {k} support matrices")
        supports = []
        for i, B in enumerate(sup):
            rows = parse_matrix(B, f"$.supports[{i}]", n - k if n > k else None)
            if len(set(rows)) != len(rows):
                raise InputError(f"$.supports[{i}]", "repeated exponent")
            supports.append(tuple(rows))
        coeffs = None
        if doc.get("coefficients") is not None:
            cs = doc["coefficients"]
            if not isinstance(cs, list) or len(cs) != k:
                raise InputError("$.coefficients", f"expected {k} coefficient lists")
            coeffs = []
            for i, (B, row) in enumerate(zip(supports, cs)):
                if not isinstance(row, list) or len(row) != len(B):
                    raise InputError(f"$.coefficients[{i}]", f"expected {len(B)} coefficients")
                parsed = tuple(parse_coeff(x, f"$.coefficients[{i}][{j}]") for j, x in enumerate(row))
                for j, x in enumerate(parsed):
                    if x is not GENERIC and not x:
                        raise InputError(f"$.coefficients[{i}][{j}]", "explicit zero coefficient")
                coeffs.append(parsed)
            coeffs = tuple(coeffs)
        params = None
        if doc.get("parameters") is not None:
            ps = doc["parameters"]
            if not isinstance(ps, list) or len(ps) != n:
                raise InputError("$.parameters", f"expected {n} entries")
            params = tuple(parse_coeff(x, f"$.parameters[{j}]") for j, x in enumerate(ps))
            if any(p is GENERIC for p in params):
                raise InputError("$.parameters", "parameters must be exact Gaussian rationals")
        try:
            conv = Convention(doc.get("convention", "section3"))
        except ValueError:
            raise InputError("$.convention", "expected 'section3' or 'section5'") from None
        milnor = None
        if doc.get("milnor") is not None:
            ms = doc["milnor"]
            if not isinstance(ms, list):
                raise InputError("$.milnor", "expected a list of {point, mu}")
            milnor = []
            for i, rec in enumerate(ms):
                pt = _require(rec, "point", f"$.milnor[{i}]")
                if not isinstance(pt, list) or len(pt) != n - k:
                    raise InputError(f"$.milnor[{i}].point", f"expected {n - k} coordinates")
                pt = tuple(parse_coeff(x, f"$.milnor[{i}].point[{j}]") for j, x in enumerate(pt))
                mu = _int(_require(rec, "mu", f"$.milnor[{i}]"), f"$.milnor[{i}].mu")
                if mu <= 0:
                    raise InputError(f"$.milnor[{i}].mu", "Milnor numbers are positive")
                milnor.append((pt, mu))
            milnor = tuple(milnor)
        return cls(n, k, tuple(supports), coeffs, params, conv, milnor)

    @classmethod
    def loads(cls, text: str) -> "ProblemFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("$", f"malformed JSON: {e}") from None
        return cls.from_json(doc)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "n": self.n,
            "k": self.k,
            "supports": [[list(r) for r in B] for B in self.supports],
            "convention": self.convention.value,
        }
        if self.coefficients is not None:
            out["coefficients"] = [[coeff_to_json(c) for c in row] for row in self.coefficients]
        if self.parameters is not None:
            out["parameters"] = [p.to_json() for p in self.parameters]
        if self.milnor is not None:
            out["milnor"] = [{"point": [p.to_json() for p in pt], "mu": mu} for pt, mu in self.milnor]
        return out

    # ------------------------------------------------------------------
    def system(self) -> LaurentSystem:
        polys = []
        for i, B in enumerate(self.supports):
            coeffs = self.coefficients[i] if self.coefficients is not None else (GENERIC,) * len(B)
            polys.append(LaurentPoly(dict(zip(B, coeffs)), self.n - self.k))
        return LaurentSystem(tuple(polys))

    def parameter(self) -> ParameterVector:
        if self.parameters is None:
            raise InputError("$.parameters", "this command needs the parameter vector c")
        return ParameterVector(self.parameters, self.k, self.convention)

    def milnor_records(self) -> Optional[List[dict]]:
        if self.milnor is None:
            return None
        return [{"point": [p.to_json() for p in pt], "mu": mu} for pt, mu in self.milnor]


def poly_to_json(p: LaurentPoly) -> list:
    return p.to_records()


def gauss_list(values: Sequence[GaussRat]) -> list:
    return [v.to_json() for v in values]
