import os
import subprocess
import sys

import pytest
import sympy
from hypothesis import given, strategies as st

from laurentvan import _pykernels, kernels

try:
    from laurentvan import _ckernels
except ImportError:  # the extension is optional
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

small = st.integers(-40, 40)


def square_matrices(max_n=5, elems=small):
    return st.integers(1, max_n).flatmap(lambda n: st.lists(st.lists(elems, min_size=n, max_size=n),
                                                            min_size=n, max_size=n))


@given(square_matrices())
def test_python_det_matches_sympy(m):
    assert _pykernels.int_det(m) == sympy.Matrix(m).det()


@needs_c
@given(square_matrices())
def test_backends_agree_on_det(m):
    assert _ckernels.int_det(m) == _pykernels.int_det(m)


@needs_c
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.lists(st.lists(small, min_size=d, max_size=d), min_size=1, max_size=8),
    st.lists(small, min_size=d, max_size=d))))
def test_backends_agree_on_pairings(args):
    rows, v = args
    assert list(_ckernels.pairings(rows, v)) == _pykernels.pairings(rows, v)


@needs_c
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.lists(st.lists(small, min_size=d, max_size=d), min_size=d + 1, max_size=7), st.just(d))), st.data())
def test_backends_agree_on_simplex_volumes(args, data):
    pts, d = args
    idx = st.lists(st.integers(0, len(pts) - 1), min_size=d + 1, max_size=d + 1)
    simplices = data.draw(st.lists(idx, min_size=1, max_size=6))
    assert _ckernels.simplex_volumes(pts, simplices) == _pykernels.simplex_volumes(pts, simplices)


def test_dispatch_falls_back_on_large_entries():
    big = [[10 ** 30, 1], [1, 10 ** 30]]
    assert kernels.int_det(big) == 10 ** 60 - 1


def test_pure_python_switch():
    env = dict(os.environ, LAURENTVAN_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from laurentvan import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
