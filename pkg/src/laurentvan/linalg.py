"""Small exact linear algebra over ZZ and QQ.

Matrices are lists of rows.  Sizes here are desk scale (dimension <= ~8), so
plain Python loops over Fractions are fine except for the determinant, which
goes through the kernel dispatcher.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .exact import IntVec, primitive_vector, rational_primitive
from .kernels import int_det


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over QQ; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


class _Echelon:
    """Incremental fraction-free row echelon basis over ZZ (inputs are integer or rational rows)."""

    def __init__(self):
        self.rows: List[List] = []
        self.pivots: List[int] = []

    def add(self, row) -> bool:
        """Reduce ``row`` against the basis; keep it and return True if independent."""
        r = list(row)
        for b, p in zip(self.rows, self.pivots):
            if r[p]:
                f, g = r[p], b[p]
                r = [g * x - f * y for x, y in zip(r, b)]
        for j, x in enumerate(r):
            if x:
                self.rows.append(r)
                self.pivots.append(j)
                return True
        return False


def rank(rows: Sequence[Sequence]) -> int:
    ech = _Echelon()
    return sum(ech.add(r) for r in rows)


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> List[IntVec]:
    """Primitive integer basis (over QQ) of {x : rows . x = 0}."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in enumerate(piv):
            x[pc] = -red[r][f]
        basis.append(rational_primitive(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve the square nonsingular system a x = b over QQ."""
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i])] for i in range(n)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[int]]) -> int:
    return int_det([list(r) for r in a])


def independent_rows(rows: Sequence[Sequence]) -> List[int]:
    """Indices of a maximal linearly independent subset, greedily in order."""
    ech = _Echelon()
    return [i for i, r in enumerate(rows) if ech.add(r)]


def unimodular_echelon(cols: Sequence[Sequence[int]], dim: int) -> Tuple[List[List[int]], int]:
    """Unimodular U with U @ D = [H; 0], D having ``cols`` as columns.

    Returns (U, r) where r is the rank.  U maps the saturated lattice
    span(D) cap ZZ^dim onto ZZ^r x 0.
    """
    u = [[int(i == j) for j in range(dim)] for i in range(dim)]
    m = [[int(c[i]) for c in cols] for i in range(dim)]
    ncols = len(cols)
    r = 0
    for c in range(ncols):
        if r == dim:
            break
        while True:
            nz = [i for i in range(r, dim) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, dim):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if any(m[i][c] != 0 for i in range(r, dim)):
            r += 1
    return u, r


def matvec(a: Sequence[Sequence], v: Sequence):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def normal_of(rows: Sequence[Sequence[int]], dim: int) -> IntVec:
    """Primitive normal to the hyperplane spanned by ``dim - 1`` independent rows."""
    ker = kernel_basis(rows, dim)
    if len(ker) != 1:
        raise ValueError("rows do not span a hyperplane")
    return primitive_vector(ker[0])
