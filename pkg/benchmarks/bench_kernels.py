"""Time the compiled mod-p kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Both backends receive identical inputs and their outputs are compared
before any timing is reported.
"""

import argparse
import random
import sys
import time

from geprofi import _kernels_py
from geprofi.ideals import basis

try:
    from geprofi import _kernels
except ImportError:
    _kernels = None


def _cases(rng):
    p_big, p_mid, p_small = 30011, 101, 17
    mat = [[rng.randrange(p_big) for _ in range(60)] for _ in range(45)]
    quad = basis(5, 2)
    forms = [[rng.randrange(p_mid) for _ in range(len(quad.exponents))] for _ in range(3)]
    pts = [tuple(rng.randrange(p_mid) for _ in range(5)) for _ in range(4000)]
    surf = basis(4, 3)
    cubic = [[rng.randrange(p_big) for _ in range(len(surf.exponents))]]
    a = [rng.randrange(p_big) for _ in range(4)]
    b = [rng.randrange(p_big) for _ in range(4)]
    curve = [[rng.randrange(p_big) for _ in range(6)] for _ in range(4)]
    return [
        ("rref_mod_p 45x60", "rref_mod_p", (mat, 60, p_big)),
        ("zero_mask 4000 pts", "zero_mask", (pts, quad.exponents, forms, p_mid)),
        ("common_zeros P^4(F_17)", "common_zeros", (p_small, 4, quad.exponents, forms)),
        ("line_zeros p=30011", "line_zeros", (a, b, surf.exponents, cubic, p_big)),
        ("curve_zeros p=30011", "curve_zeros", (curve, surf.exponents, cubic, p_big)),
    ]


def _time(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(args.seed)
    print(f"{'kernel':28} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, name, fargs in _cases(rng):
        tp, op = _time(getattr(_kernels_py, name), fargs, args.repeat)
        tc, oc = _time(getattr(_kernels, name), fargs, args.repeat)
        if op != oc:
            print(f"{label}: backends disagree")
            return 1
        print(f"{label:28} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
