"""Hot-loop kernel dispatch.

The compiled ``_ckernels`` extension works in 64-bit machine integers; it is
used only when an a-priori bound shows no intermediate value can overflow.
Everything else (and every call when the extension is not built) goes to the
pure-Python twins in ``_pykernels``.  Set ``LAURENTVAN_PURE_PYTHON=1`` to force
the fallback.
"""
from __future__ import annotations

import os
from typing import List, Sequence

from . import _pykernels

try:
    if os.environ.get("LAURENTVAN_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced by environment")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_LIMIT = 1 << 62


def _max_abs(rows) -> int:
    return max((abs(x) for r in rows for x in r), default=0)


def _det_fits(n: int, bound: int) -> bool:
    # Bareiss intermediates are minors (Hadamard bound H) and products of two
    # minors; require H**2 = (n * bound**2) ** n below the limit.
    return (n * bound * bound) ** n < _LIMIT


def int_det(m: List[List[int]]) -> int:
    n = len(m)
    if _ckernels is not None and n and _det_fits(n, _max_abs(m)):
        return _ckernels.int_det(m)
    return _pykernels.int_det(m)


def pairings(rows: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    if _ckernels is not None and rows:
        d = len(v)
        if d * _max_abs(rows) * _max_abs([v]) < _LIMIT:
            return _ckernels.pairings(rows, v)
    return _pykernels.pairings(rows, v)


def simplex_volumes(points: Sequence[Sequence[int]], simplices: Sequence[Sequence[int]]) -> int:
    if _ckernels is not None and simplices:
        d = len(simplices[0]) - 1
        # differences of points at most double the coordinate bound
        b = 2 * _max_abs(points)
        if d and _det_fits(d, b) and len(simplices) * int((d * b * b) ** (d / 2) + 1) < _LIMIT:
            return _ckernels.simplex_volumes(points, simplices)
    return _pykernels.simplex_volumes(points, simplices)
