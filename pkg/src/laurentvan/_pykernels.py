"""Pure-Python reference kernels.

These are the fallback path and the ground truth for the compiled kernels:
every function here has a twin in ``_ckernels.pyx`` with the same contract.
"""
from __future__ import annotations

from typing import List, Sequence


def int_det(m: List[List[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def pairings(rows: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    """Inner products of every row with ``v``."""
    return [sum(a * b for a, b in zip(r, v)) for r in rows]


def simplex_volumes(points: Sequence[Sequence[int]], simplices: Sequence[Sequence[int]]) -> int:
    """Sum of |det(p1 - p0, ..., pd - p0)| over simplices given as index tuples."""
    total = 0
    for s in simplices:
        p0 = points[s[0]]
        m = [[a - b for a, b in zip(points[i], p0)] for i in s[1:]]
        total += abs(int_det(m))
    return total
