"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel directly on both backends, then times an end-to-end mixed
volume computation in a subprocess with and without LAURENTVAN_PURE_PYTHON.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from laurentvan import _pykernels

try:
    from laurentvan import _ckernels
except ImportError:
    _ckernels = None


def _cases(rng: random.Random):
    dets = [[[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)] for _ in range(200)]
    pts = [tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(40)]
    simplices = [tuple(rng.sample(range(len(pts)), 4)) for _ in range(400)]
    rows = [[rng.randint(-50, 50) for _ in range(4)] for _ in range(500)]
    v = [rng.randint(-50, 50) for _ in range(4)]
    return {
        "int_det": lambda k: [k.int_det(m) for m in dets],
        "simplex_volumes": lambda k: k.simplex_volumes(pts, simplices),
        "pairings": lambda k: k.pairings(rows, v),
    }


_E2E = """
import random, time
from laurentvan.polytope import LatticePolytope
from laurentvan.volume import mixed_volume
rng = random.Random(3)
Ps = [LatticePolytope([tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(8)]) for _ in range(3)]
t = time.perf_counter()
for _ in range(3):
    mixed_volume(Ps)
print(time.perf_counter() - t)
"""


def _e2e(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("LAURENTVAN_PURE_PYTHON", None)
    if pure:
        env["LAURENTVAN_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _E2E], env=env, check=True,
                         capture_output=True, text=True).stdout
    return float(out.strip())


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    cases = _cases(random.Random(0))
    print(f"{'kernel':<18}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in cases.items():
        if _ckernels is not None:
            assert fn(_pykernels) == fn(_ckernels), name
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<18}{py:>14.2f}{'n/a':>14}{'':>10}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<18}{py:>14.2f}{cy:>14.2f}{py / cy:>9.1f}x")
    py = _e2e(True)
    cy = _e2e(False)
    print(f"{'mixed_volume e2e':<18}{py * 1e3:>14.0f}{cy * 1e3:>14.0f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
