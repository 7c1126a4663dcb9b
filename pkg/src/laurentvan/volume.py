"""Normalized lattice volumes and mixed volumes.

Two independent routes to the mixed volume are provided.  ``mixed_volume``
evaluates the alternating sum over sub-Minkowski-sums; ``mixed_volume_oracle``
fits the volume polynomial of lambda_1 P_1 + ... + lambda_r P_r by exact
Lagrange interpolation on nodes 1..n+1 (never touching the zero dilations the
alternating sum relies on) and reads off a single coefficient.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .exact import IntVec, vadd
from .kernels import simplex_volumes
from .linalg import inverse
from .polytope import DimensionMismatch, LatticePolytope, hull, minkowski_sum


def _triangulate(P: LatticePolytope) -> List[Tuple[IntVec, ...]]:
    """Pulling triangulation of a full-dimensional polytope."""
    facets = [vs for vs, _, _ in P.facet_data()]
    memo: Dict[FrozenSet[IntVec], List[Tuple[IntVec, ...]]] = {}

    def subfaces(face):
        cands = {face & f for f in facets if not face <= f}
        cands.discard(frozenset())
        return [c for c in cands if not any(c < o for o in cands)]

    def tri(face: FrozenSet[IntVec]) -> List[Tuple[IntVec, ...]]:
        if face in memo:
            return memo[face]
        if len(face) == 1:
            out = [tuple(face)]
        else:
            apex = min(face)
            out = []
            for g in subfaces(face):
                if apex in g:
                    continue
                out.extend((apex,) + s for s in tri(g))
        memo[face] = out
        return out

    return tri(frozenset(P.vertices))


def normalized_volume(P: LatticePolytope) -> int:
    """n! times the Euclidean volume; zero unless ``P`` is full-dimensional."""
    if not P.is_full_dimensional:
        return 0
    simplices = _triangulate(P)
    pts = list(P.vertices)
    index = {v: i for i, v in enumerate(pts)}
    return simplex_volumes(pts, [tuple(index[v] for v in s) for s in simplices])


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixedVolumeQuery:
    """n polytopes in R^n, kept in compact (polytope, count) form."""

    parts: Tuple[Tuple[LatticePolytope, int], ...]

    @classmethod
    def of(cls, polytopes: Sequence[LatticePolytope]) -> "MixedVolumeQuery":
        counts = Counter()
        order: List[LatticePolytope] = []
        for P in polytopes:
            if P not in counts:
                order.append(P)
            counts[P] += 1
        return cls.compact([(P, counts[P]) for P in order])

    @classmethod
    def compact(cls, pairs: Sequence[Tuple[LatticePolytope, int]]) -> "MixedVolumeQuery":
        pairs = tuple((P, int(m)) for P, m in pairs if m)
        if not pairs:
            raise ValueError("empty mixed volume query")
        n = pairs[0][0].ambient_dim
        if any(P.ambient_dim != n for P, _ in pairs):
            raise DimensionMismatch("mixed volume entries live in different spaces")
        if any(m < 0 for _, m in pairs):
            raise ValueError("multiplicities must be positive")
        if sum(m for _, m in pairs) != n:
            raise ValueError(f"multiplicities sum to {sum(m for _, m in pairs)}, ambient dimension is {n}")
        return cls(pairs)

    @property
    def n(self) -> int:
        return self.parts[0][0].ambient_dim

    def expanded(self) -> List[LatticePolytope]:
        return [P for P, m in self.parts for _ in range(m)]


class _SumVolume:
    """Vol_Z(lambda_1 P_1 + ... + lambda_r P_r) as a function of positive integer lambdas.

    For positive dilations the sum has a fixed combinatorial type, so one
    labelled hull and one pulling triangulation serve every lambda; each
    evaluation is just a batch of simplex determinants.
    """

    def __init__(self, polys: Sequence[LatticePolytope]):
        self.polys = list(polys)
        self.n = polys[0].ambient_dim
        labels: Dict[IntVec, Tuple[int, ...]] = {v: (i,) for i, v in enumerate(polys[0].vertices)}
        acc = polys[0]
        for P in polys[1:]:
            cand: Dict[IntVec, Tuple[int, ...]] = {}
            for a in acc.vertices:
                for j, b in enumerate(P.vertices):
                    cand.setdefault(vadd(a, b), labels[a] + (j,))
            acc = LatticePolytope(cand)
            labels = {v: cand[v] for v in acc.vertices}
        self.total = acc
        self.labels = [labels[v] for v in acc.vertices]
        if acc.is_full_dimensional:
            index = {v: i for i, v in enumerate(acc.vertices)}
            self.simplices = [tuple(index[v] for v in s) for s in _triangulate(acc)]
        else:
            self.simplices = []

    def __call__(self, lam: Sequence[int]) -> int:
        if not self.simplices:
            return 0
        if any(l <= 0 for l in lam):
            raise ValueError("dilations must be positive")
        pts = []
        for lab in self.labels:
            pt = [0] * self.n
            for l, P, j in zip(lam, self.polys, lab):
                v = P.vertices[j]
                for c in range(self.n):
                    pt[c] += l * v[c]
            pts.append(pt)
        return simplex_volumes(pts, self.simplices)


@lru_cache(maxsize=4096)
def _sum_volume(polys: Tuple[LatticePolytope, ...]) -> _SumVolume:
    return _SumVolume(polys)


def _dilated_volume(parts: Sequence[Tuple[LatticePolytope, int]]) -> int:
    live = tuple((P, k) for P, k in parts if k)
    if not live:
        return 0
    return _sum_volume(tuple(P for P, _ in live))([k for _, k in live])


def mixed_volume(q) -> int:
    """Alternating sum of normalized volumes of sub-sums, divided by n!."""
    if not isinstance(q, MixedVolumeQuery):
        q = MixedVolumeQuery.of(q)
    n = q.n
    total = 0
    # subsets I of {1..n} grouped by how many copies of each polytope they take
    for ks in product(*(range(m + 1) for _, m in q.parts)):
        size = sum(ks)
        if size == 0:
            continue
        weight = 1
        for k, (_, m) in zip(ks, q.parts):
            weight *= comb(m, k)
        vol = _dilated_volume([(P, k) for k, (P, _) in zip(ks, q.parts)])
        total += (-1) ** (n - size) * weight * vol
    res, rem = divmod(total, factorial(n))
    if rem:
        raise ArithmeticError(f"mixed volume sum {total} not divisible by {n}!")
    return res


@lru_cache(maxsize=None)
def _vandermonde_inverse(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    nodes = range(1, n + 2)
    vinv = inverse([[Fraction(x) ** j for j in range(n + 1)] for x in nodes])
    return tuple(tuple(r) for r in vinv)


def mixed_volume_oracle(q) -> int:
    """Coefficient extraction from the interpolated volume polynomial."""
    if not isinstance(q, MixedVolumeQuery):
        q = MixedVolumeQuery.of(q)
    n = q.n
    r = len(q.parts)
    w = _vandermonde_inverse(n)
    target = [m for _, m in q.parts]
    coef = Fraction(0)
    for idx in product(range(n + 1), repeat=r):
        weight = Fraction(1)
        for axis, i in enumerate(idx):
            weight *= w[target[axis]][i]
        if weight == 0:
            continue
        lam = [i + 1 for i in idx]
        vol = _dilated_volume([(P, l) for l, (P, _) in zip(lam, q.parts)])
        coef += weight * vol
    mfact = 1
    for m in target:
        mfact *= factorial(m)
    val = coef * mfact / factorial(n)
    if val.denominator != 1:
        raise ArithmeticError(f"interpolated mixed volume {val} is not an integer")
    return int(val)


def compositions(n: int, parts: int):
    """All tuples of ``parts`` positive integers summing to ``n``."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def mixed_volume_sum(polys: Sequence[LatticePolytope], n: int, oracle: bool = False) -> int:
    """Sum of Vol_Z(P_1^{m_1}, ..., P_i^{m_i}) over compositions m of n into i positive parts."""
    i = len(polys)
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= number of polytopes ({i}) <= n ({n})")
    if any(P.ambient_dim != n for P in polys):
        raise DimensionMismatch("polytopes must live in R^n")
    fn = mixed_volume_oracle if oracle else mixed_volume
    total = 0
    for ms in compositions(n, i):
        total += fn(MixedVolumeQuery.compact(_merge(polys, ms)))
    return total


def _merge(polys, ms):
    merged: Dict[LatticePolytope, int] = {}
    for P, m in zip(polys, ms):
        merged[P] = merged.get(P, 0) + m
    return list(merged.items())
