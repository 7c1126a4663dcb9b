"""Lattice polytopes, their faces, dual cones and fans.

Facets come from an exact double-description pass over the homogenized point
cone; no floating point is involved anywhere, so every face and conormal is a
certificate.  Lower-dimensional polytopes are handled by projecting onto a set
of coordinates that is injective on the affine hull; conormals found there are
padded with zeros, which gives valid (if non-canonical) ambient functionals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .exact import IntVec, as_intvec, dot, primitive_vector, rational_primitive, vadd, vsub
from .kernels import pairings
from .linalg import independent_rows, inverse, kernel_basis, rank, solve


class PolytopeError(ValueError):
    pass


class DimensionMismatch(PolytopeError):
    pass


class NotAFace(PolytopeError):
    pass


class DegenerateCone(PolytopeError):
    """The generated cone is not full-dimensional."""


# --------------------------------------------------------------------------
# double description

def _popcount(x: int) -> int:
    return bin(x).count("1")


def cone_facets(gens: Sequence[Sequence[int]]) -> List[Tuple[IntVec, int]]:
    """Facets of a full-dimensional pointed cone spanned by integer ``gens``.

    Returns ``(inner_normal, tight_mask)`` pairs; the normal is primitive and
    bit ``i`` of the mask is set iff ``gens[i]`` lies on the facet.  The
    facets are the extreme rays of the dual cone {u : <u, g> >= 0}, found by
    Motzkin's double description with the combinatorial adjacency test.
    """
    rows = [as_intvec(g) for g in gens]
    if not rows:
        raise DegenerateCone("no generators")
    dim = len(rows[0])
    # far-from-centroid rows first: likely extreme, so later rows rarely split rays
    m = len(rows)
    centre = [sum(c) for c in zip(*rows)]
    order = sorted(range(m), key=lambda i: -sum((m * x - c) ** 2 for x, c in zip(rows[i], centre)))
    init = [order[j] for j in independent_rows([rows[i] for i in order])]
    if len(init) < dim:
        raise DegenerateCone(f"generators span a {len(init)}-dimensional space in R^{dim}")

    inv = inverse([rows[i] for i in init])
    rays: List[IntVec] = []
    masks: List[int] = []
    for j in range(dim):
        rays.append(rational_primitive([inv[r][j] for r in range(dim)]))
        masks.append(sum(1 << init[i] for i in range(dim) if i != j))

    done = set(init)
    for i in order:
        if i in done:
            continue
        a = rows[i]
        vals = pairings(rays, a)
        plus = [k for k, v in enumerate(vals) if v > 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        bit = 1 << i
        new_rays = [rays[k] for k in plus]
        new_masks = [masks[k] for k in plus]
        for k in zero:
            new_rays.append(rays[k])
            new_masks.append(masks[k] | bit)
        if minus:
            for p in plus:
                zp = masks[p]
                for q in minus:
                    common = zp & masks[q]
                    if _popcount(common) < dim - 2:
                        continue
                    if any(w != p and w != q and (masks[w] & common) == common
                           for w in range(len(rays))):
                        continue
                    vp, vq = vals[p], vals[q]
                    comb = tuple(vp * x - vq * y for x, y in zip(rays[q], rays[p]))
                    new_rays.append(primitive_vector(comb))
                    new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
        done.add(i)

    out = []
    for r in rays:
        vals = pairings(rows, r)
        mask = 0
        for k, v in enumerate(vals):
            if v == 0:
                mask |= 1 << k
        out.append((r, mask))
    return out


# --------------------------------------------------------------------------
# polytopes and faces

@dataclass(frozen=True, eq=False)
class Face:
    """A face, identified by its vertex set; ``witness`` is some u with gamma_u = face."""

    parent: "LatticePolytope" = field(repr=False)
    vertices: FrozenSet[IntVec]
    dim: int
    witness: IntVec

    def __eq__(self, other):
        if not isinstance(other, Face):
            return NotImplemented
        return self.vertices == other.vertices and self.dim == other.dim

    def __hash__(self):
        return hash(self.vertices)

    def as_polytope(self) -> "LatticePolytope":
        return hull(self.vertices)

    def sorted_vertices(self) -> List[IntVec]:
        return sorted(self.vertices)

    def is_facet(self) -> bool:
        return self.dim == self.parent.dim - 1


class LatticePolytope:
    """Convex hull of a finite set of lattice points."""

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = sorted({as_intvec(p) for p in points})
        if not pts:
            raise PolytopeError("a polytope needs at least one point")
        d = len(pts[0])
        if d == 0 or any(len(p) != d for p in pts):
            raise DimensionMismatch("points must share a positive ambient dimension")
        self.ambient_dim = d
        self.points: Tuple[IntVec, ...] = tuple(pts)
        p0 = pts[0]
        diffs = [vsub(p, p0) for p in pts[1:]]
        self.dim = rank(diffs) if diffs else 0
        if self.dim == 0:
            self.vertices: Tuple[IntVec, ...] = (p0,)
            self._facet_data: List[Tuple[FrozenSet[IntVec], IntVec, int]] = []
            return
        # coordinates injective on the affine hull
        cols = [[r[j] for r in diffs] for j in range(d)]
        self._coords = independent_rows(cols)
        proj = [tuple(p[j] for j in self._coords) + (1,) for p in pts]
        facets = cone_facets(proj)
        n = len(pts)
        vmask = 0
        for k in range(n):
            acc = (1 << n) - 1
            for _, m in facets:
                if m >> k & 1:
                    acc &= m
            if acc == 1 << k:
                vmask |= 1 << k
        self.vertices = tuple(p for k, p in enumerate(pts) if vmask >> k & 1)
        data = []
        for normal, m in facets:
            u_loc = primitive_vector(normal[:-1])
            u = [0] * d
            for j, c in zip(self._coords, u_loc):
                u[j] = c
            u = tuple(u)
            verts = frozenset(p for k, p in enumerate(pts) if (m & vmask) >> k & 1)
            data.append((verts, u, min(dot(u, v) for v in verts)))
        data.sort(key=lambda t: sorted(t[0]))
        self._facet_data = data

    # ------------------------------------------------------------------
    def __repr__(self):
        return f"LatticePolytope(vertices={list(self.vertices)}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def lineality(self) -> List[IntVec]:
        """Integer basis of the conormal space of the affine hull."""
        p0 = self.vertices[0]
        diffs = [vsub(v, p0) for v in self.vertices[1:]]
        return kernel_basis(diffs, self.ambient_dim) if diffs else [
            tuple(int(i == j) for i in range(self.ambient_dim)) for j in range(self.ambient_dim)]

    def facets(self) -> List[Face]:
        return [Face(self, vs, self.dim - 1, u) for vs, u, _ in self._facet_data]

    def facet_data(self) -> List[Tuple[FrozenSet[IntVec], IntVec, int]]:
        """(vertex set, primitive inner conormal, minimum) for every facet."""
        return list(self._facet_data)

    @cached_property
    def _lattice(self) -> Dict[FrozenSet[IntVec], Face]:
        top = frozenset(self.vertices)
        zero = tuple([0] * self.ambient_dim)
        faces: Dict[FrozenSet[IntVec], Face] = {top: Face(self, top, self.dim, zero)}
        level = [top]
        fsets = [(vs, u) for vs, u, _ in self._facet_data]
        dim = self.dim
        while level and dim > 0:
            dim -= 1
            nxt = []
            for f in level:
                for g in _subfacets(f, [vs for vs, _ in fsets]):
                    if g not in faces:
                        w = [0] * self.ambient_dim
                        for vs, u in fsets:
                            if g <= vs:
                                w = [a + b for a, b in zip(w, u)]
                        faces[g] = Face(self, g, dim, tuple(w))
                        nxt.append(g)
            level = nxt
        return faces

    def faces(self) -> List[Face]:
        """All nonempty faces, by decreasing dimension, then vertex order."""
        return sorted(self._lattice.values(), key=lambda f: (-f.dim, sorted(f.vertices)))

    def face_of(self, vertices: Iterable[Sequence[int]]) -> Face:
        key = frozenset(as_intvec(v) for v in vertices)
        try:
            return self._lattice[key]
        except KeyError:
            raise NotAFace(f"{sorted(key)} is not a face of {self!r}") from None

    def is_face(self, vertices: Iterable[Sequence[int]]) -> bool:
        return frozenset(as_intvec(v) for v in vertices) in self._lattice

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(vadd(v, t) for v in self.vertices)

    def dilate(self, k: int) -> "LatticePolytope":
        if k < 0:
            raise ValueError("dilation factor must be nonnegative")
        return LatticePolytope(tuple(k * x for x in v) for v in self.vertices)

    def to_matrix(self) -> List[List[int]]:
        return [list(p) for p in self.vertices]


def _subfacets(face: FrozenSet, facets: List[FrozenSet]) -> List[FrozenSet]:
    cands = {face & f for f in facets if not face <= f}
    cands.discard(frozenset())
    return [c for c in cands if not any(c < o for o in cands)]


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    return LatticePolytope(points)


def supporting_face(P: LatticePolytope, u: Sequence[int]) -> Face:
    """The face of ``P`` on which ``<u, .>`` attains its minimum."""
    u = as_intvec(u)
    if len(u) != P.ambient_dim:
        raise DimensionMismatch(f"covector has length {len(u)}, polytope lives in R^{P.ambient_dim}")
    vals = pairings(P.vertices, u)
    lo = min(vals)
    verts = frozenset(v for v, x in zip(P.vertices, vals) if x == lo)
    try:
        f = P._lattice[verts]
        return Face(P, f.vertices, f.dim, u)
    except KeyError:  # pragma: no cover - every minimizer set is a face
        raise NotAFace("minimizer set is not a face") from None


# --------------------------------------------------------------------------
# dual cones and fans

@dataclass(frozen=True)
class DualCone:
    """sigma(gamma): rays plus a lineality basis (nonempty iff the parent is not full-dimensional)."""

    face: Face
    rays: Tuple[IntVec, ...]
    lineality: Tuple[IntVec, ...]
    dim: int

    def interior_point(self) -> IntVec:
        d = self.face.parent.ambient_dim
        w = [0] * d
        for r in self.rays:
            w = [a + b for a, b in zip(w, r)]
        return tuple(w)

    def contains(self, u: Sequence[int]) -> bool:
        """Membership via Caratheodory: u is a conic combination of linearly independent generators."""
        u = [Fraction(x) for x in as_intvec(u)]
        gens = list(self.rays) + [l for l in self.lineality] + [tuple(-x for x in l) for l in self.lineality]
        if not any(u):
            return True
        d = len(u)
        for size in range(1, min(d, len(gens)) + 1):
            for sub in combinations(range(len(gens)), size):
                cols = [gens[i] for i in sub]
                if rank(cols) < size:
                    continue
                lam = _least_squares_exact(cols, u)
                if lam is None:
                    continue
                if all(x >= 0 for x in lam):
                    return True
        return False


def _least_squares_exact(cols, target) -> Optional[List[Fraction]]:
    """Exact lambda with sum lambda_i cols_i = target, or None."""
    k = len(cols)
    gram = [[dot(cols[i], cols[j]) for j in range(k)] for i in range(k)]
    rhs = [dot(c, target) for c in cols]
    lam = solve(gram, rhs)
    back = [sum(lam[i] * cols[i][j] for i in range(k)) for j in range(len(target))]
    return lam if back == list(target) else None


@dataclass(frozen=True)
class Fan:
    cones: Tuple[DualCone, ...]
    ambient_dim: int

    def maximal_cones(self) -> List[DualCone]:
        top = max(c.dim for c in self.cones)
        return [c for c in self.cones if c.dim == top]

    def rays(self) -> List[IntVec]:
        return sorted({r for c in self.cones for r in c.rays})

    def cone_of(self, face: Face) -> DualCone:
        for c in self.cones:
            if c.face == face:
                return c
        raise NotAFace("face not indexed by this fan")

    def to_json(self) -> dict:
        rays = self.rays()
        index = {r: i for i, r in enumerate(rays)}
        return {
            "rays": [list(r) for r in rays],
            "cones": [
                {
                    "face": [list(v) for v in c.face.sorted_vertices()],
                    "face_dim": c.face.dim,
                    "rays": sorted(index[r] for r in c.rays),
                    "dim": c.dim,
                }
                for c in self.cones
            ],
            "lineality": [list(l) for l in (self.cones[0].lineality if self.cones else ())],
        }


def dual_cone(P: LatticePolytope, face: Face) -> DualCone:
    rays = tuple(sorted(u for vs, u, _ in P.facet_data() if face.vertices <= vs))
    lin = tuple(P.lineality) if not P.is_full_dimensional else ()
    return DualCone(face, rays, lin, P.ambient_dim - face.dim)


def dual_fan(P: LatticePolytope) -> Fan:
    return Fan(tuple(dual_cone(P, f) for f in P.faces()), P.ambient_dim)


# --------------------------------------------------------------------------
# Minkowski sums, Cayley cones and joins

def _check_same_ambient(Ps: Sequence[LatticePolytope]) -> int:
    if not Ps:
        raise PolytopeError("need at least one polytope")
    d = Ps[0].ambient_dim
    if any(P.ambient_dim != d for P in Ps):
        raise DimensionMismatch("polytopes live in different ambient spaces")
    return d


def minkowski_sum(Ps: Sequence[LatticePolytope]) -> LatticePolytope:
    _check_same_ambient(Ps)
    acc = Ps[0]
    for P in Ps[1:]:
        acc = LatticePolytope(vadd(a, b) for a in acc.vertices for b in P.vertices)
    return acc


def face_decompose(Ps: Sequence[LatticePolytope], gamma: Face,
                   total: Optional[LatticePolytope] = None) -> List[Face]:
    """Summand faces (gamma_1, ..., gamma_p) with gamma = gamma_1 + ... + gamma_p."""
    total = total if total is not None else minkowski_sum(Ps)
    if not total.is_face(gamma.vertices):
        raise NotAFace("gamma is not a face of the Minkowski sum")
    u = dual_cone(total, total.face_of(gamma.vertices)).interior_point()
    return [supporting_face(P, u) for P in Ps]


def facet_conormal(P: LatticePolytope, gamma: Face) -> Tuple[IntVec, int]:
    """Primitive inner conormal nu of a facet and m = min over P of <nu, .>."""
    if not P.is_full_dimensional:
        raise PolytopeError("facet conormals need a full-dimensional polytope")
    for vs, u, m in P.facet_data():
        if vs == gamma.vertices:
            return u, m
    raise NotAFace("not a facet of this polytope")


@dataclass(frozen=True)
class PolyCone:
    ambient_dim: int
    generators: Tuple[IntVec, ...]
    facet_conormals: Tuple[IntVec, ...]
    facet_generators: Tuple[FrozenSet[int], ...]

    def facets(self) -> List[Tuple[IntVec, FrozenSet[int]]]:
        return list(zip(self.facet_conormals, self.facet_generators))


def cone(generators: Sequence[Sequence[int]]) -> PolyCone:
    gens = tuple(as_intvec(g) for g in generators)
    data = cone_facets(gens)
    data.sort()
    return PolyCone(
        len(gens[0]), gens,
        tuple(u for u, _ in data),
        tuple(frozenset(i for i in range(len(gens)) if m >> i & 1) for _, m in data),
    )


def cayley_generators(Bs: Sequence[Iterable[Sequence[int]]]) -> List[IntVec]:
    k = len(Bs)
    gens = []
    for i, B in enumerate(Bs):
        pts = sorted({as_intvec(b) for b in B})
        if not pts:
            raise PolytopeError(f"support {i} is empty")
        e = tuple(int(j == i) for j in range(k))
        gens.extend(p + e for p in pts)
    dims = {len(g) for g in gens}
    if len(dims) != 1:
        raise DimensionMismatch("supports live in different lattices")
    return gens


def cayley_cone(Bs: Sequence[Iterable[Sequence[int]]]) -> PolyCone:
    """K = R_+ A with A = {(b, e_i) : b in B_i}; must be full-dimensional."""
    return cone(cayley_generators(Bs))


def join_polytope(Ps: Sequence[LatticePolytope]) -> LatticePolytope:
    """Convex hull of the union of P_i x {e_i}."""
    _check_same_ambient(Ps)
    k = len(Ps)
    pts = []
    for i, P in enumerate(Ps):
        e = tuple(int(j == i) for j in range(k))
        pts.extend(v + e for v in P.vertices)
    return LatticePolytope(pts)


# --------------------------------------------------------------------------
# similarity (positive rational dilation + translation)

def similar(P: LatticePolytope, Q: LatticePolytope) -> bool:
    if P.ambient_dim != Q.ambient_dim or P.dim != Q.dim or len(P.vertices) != len(Q.vertices):
        return False
    if P.dim == 0:
        return True
    cp = [Fraction(sum(c), len(P.vertices)) for c in zip(*P.vertices)]
    cq = [Fraction(sum(c), len(Q.vertices)) for c in zip(*Q.vertices)]
    rp = sorted(tuple(Fraction(x) - c for x, c in zip(v, cp)) for v in P.vertices)
    rq = sorted(tuple(Fraction(x) - c for x, c in zip(v, cq)) for v in Q.vertices)
    # scale from the first nonzero coordinate of any centred vertex
    for a, b in zip(rp, rq):
        for x, y in zip(a, b):
            if x != 0:
                lam = y / x
                if lam <= 0:
                    return False
                return sorted(tuple(lam * x for x in v) for v in rp) == rq
    return False


# --------------------------------------------------------------------------
# polyhedra of the form conv(S) + R_+^d

@dataclass(frozen=True)
class OrthantPolyhedron:
    """conv(points) + R_+^d, as facets (u, m, tight points) and its compact faces."""

    ambient_dim: int
    points: Tuple[IntVec, ...]
    facets: Tuple[Tuple[IntVec, int, FrozenSet[IntVec]], ...]
    compact_faces: Tuple[FrozenSet[IntVec], ...]

    def compact_facets(self) -> List[Tuple[IntVec, int, FrozenSet[IntVec]]]:
        return [f for f in self.facets if all(x > 0 for x in f[0])]


def orthant_polyhedron(points: Iterable[Sequence[int]]) -> OrthantPolyhedron:
    pts = tuple(sorted({as_intvec(p) for p in points}))
    if not pts:
        raise PolytopeError("empty support")
    d = len(pts[0])
    if any(x < 0 for p in pts for x in p):
        raise PolytopeError("support must lie in the nonnegative orthant")
    gens = [p + (1,) for p in pts] + [tuple(int(i == j) for j in range(d)) + (0,) for i in range(d)]
    npts = len(pts)
    point_bits = (1 << npts) - 1
    facets = []
    masks = []
    for normal, mask in cone_facets(gens):
        u = normal[:-1]
        if not any(u):
            continue  # the face at infinity
        tight = frozenset(p for k, p in enumerate(pts) if mask >> k & 1)
        facets.append((u, -normal[-1], tight))
        masks.append(mask)
    # every face is an intersection of facets; compact ones contain no ray
    faces = set(masks)
    frontier = list(masks)
    while frontier:
        nxt = []
        for f in frontier:
            for g in masks:
                h = f & g
                if h & point_bits and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        frontier = nxt
    compact = sorted(
        {frozenset(p for k, p in enumerate(pts) if f >> k & 1) for f in faces if not f >> npts},
        key=lambda s: (len(s), sorted(s)))
    facets.sort(key=lambda f: (f[0], f[1]))
    return OrthantPolyhedron(d, pts, tuple(facets), tuple(compact))
