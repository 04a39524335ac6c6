"""Pick the compiled mod-p kernels when available, else the Python ones.

Set ``GEPROFI_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if not os.environ.get("GEPROFI_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"


def rref_mod_p(rows, ncols, p):
    return kernels.rref_mod_p(rows, ncols, p)


def zero_mask(points, exps, coeffs, p):
    return kernels.zero_mask(points, exps, coeffs, p)


def projective_points(p, n):
    return kernels.projective_points(p, n)


def common_zeros(p, n, exps, coeffs):
    return kernels.common_zeros(p, n, exps, coeffs)


def line_zeros(a, b, exps, coeffs, p):
    return kernels.line_zeros(a, b, exps, coeffs, p)


def curve_zeros(forms, exps, coeffs, p):
    return kernels.curve_zeros(forms, exps, coeffs, p)
