# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: elimination, batched form evaluation, enumeration.

Moduli must be below 2**31 so products fit in a signed 64-bit integer.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _powmod(i64 b, i64 e, i64 p) nogil:
    cdef i64 r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


def rref_mod_p(rows, int ncols, i64 p):
    cdef int nrows = len(rows)
    cdef i64 *m = <i64 *> malloc(max(nrows * ncols, 1) * sizeof(i64))
    if m == NULL:
        raise MemoryError()
    cdef int i, j, c, r = 0, piv
    cdef i64 inv, f, t
    pivots = []
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                t = row[j] % p
                m[i * ncols + j] = t
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
            inv = _powmod(m[r * ncols + c], p - 2, p)
            if inv != 1:
                for j in range(ncols):
                    m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r and m[i * ncols + c] != 0:
                    f = m[i * ncols + c]
                    for j in range(ncols):
                        t = (m[i * ncols + j] - f * m[r * ncols + j]) % p
                        if t < 0:
                            t += p
                        m[i * ncols + j] = t
            pivots.append(c)
            r += 1
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(m)
    return out, pivots


cdef bint _all_vanish(i64 *pt, int nv, i64 *ex, int nm, i64 *co, int nf,
                      i64 *mv, i64 p) nogil:
    cdef int k, j, f
    cdef i64 v, s
    for k in range(nm):
        v = 1
        for j in range(nv):
            if ex[k * nv + j]:
                v = v * _powmod(pt[j], ex[k * nv + j], p) % p
        mv[k] = v
    for f in range(nf):
        s = 0
        for k in range(nm):
            s = (s + co[f * nm + k] * mv[k]) % p
        if s != 0:
            return False
    return True


cdef i64 *_pack(list rows, int width, i64 p) except NULL:
    cdef int n = len(rows), i, j
    cdef i64 *buf = <i64 *> malloc(max(n * width, 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        for j in range(width):
            buf[i * width + j] = rows[i][j] % p if p > 0 else rows[i][j]
    return buf


def zero_mask(points, exps, coeffs, i64 p):
    points = list(points)
    exps = list(exps)
    coeffs = list(coeffs)
    cdef int nm = len(exps)
    cdef int nv = len(exps[0]) if nm else (len(points[0]) if points else 0)
    cdef int nf = len(coeffs)
    cdef int npts = len(points), i, j
    cdef i64 *ex = _pack(exps, nv, 0)
    cdef i64 *co = _pack(coeffs, nm, p)
    cdef i64 *mv = <i64 *> malloc(max(nm, 1) * sizeof(i64))
    cdef i64 *pt = <i64 *> malloc(max(nv, 1) * sizeof(i64))
    mask = []
    try:
        for i in range(npts):
            row = points[i]
            for j in range(nv):
                pt[j] = row[j] % p
            mask.append(bool(_all_vanish(pt, nv, ex, nm, co, nf, mv, p)))
    finally:
        free(ex); free(co); free(mv); free(pt)
    return mask


def projective_points(i64 p, int n):
    cdef int lead, tail, j
    cdef i64 idx, k, total
    out = []
    for lead in range(n + 1):
        tail = n - lead
        total = 1
        for j in range(tail):
            total *= p
        for idx in range(total):
            rest = [0] * tail
            k = idx
            for j in range(tail - 1, -1, -1):
                rest[j] = k % p
                k //= p
            out.append((0,) * lead + (1,) + tuple(rest))
    return out


def common_zeros(i64 p, int n, exps, coeffs):
    exps = list(exps)
    coeffs = list(coeffs)
    cdef int nv = n + 1
    cdef int nm = len(exps), nf = len(coeffs)
    cdef int lead, tail, j
    cdef i64 idx, k, total
    cdef i64 *ex = _pack(exps, nv, 0)
    cdef i64 *co = _pack(coeffs, nm, p)
    cdef i64 *mv = <i64 *> malloc(max(nm, 1) * sizeof(i64))
    cdef i64 *pt = <i64 *> malloc(nv * sizeof(i64))
    out = []
    try:
        for lead in range(n + 1):
            tail = n - lead
            total = 1
            for j in range(tail):
                total *= p
            for j in range(lead):
                pt[j] = 0
            pt[lead] = 1
            for idx in range(total):
                k = idx
                for j in range(n, lead, -1):
                    pt[j] = k % p
                    k //= p
                if _all_vanish(pt, nv, ex, nm, co, nf, mv, p):
                    out.append(tuple([pt[j] for j in range(nv)]))
    finally:
        free(ex); free(co); free(mv); free(pt)
    return out


cdef tuple _canonical(i64 *v, int nv, i64 p):
    cdef int j = 0
    while v[j] == 0:
        j += 1
    cdef i64 inv = _powmod(v[j], p - 2, p)
    return tuple([v[k] * inv % p for k in range(nv)])


def line_zeros(a, b, exps, coeffs, i64 p):
    exps = list(exps)
    coeffs = list(coeffs)
    cdef int nv = len(a)
    cdef int nm = len(exps), nf = len(coeffs), j
    cdef i64 lam
    cdef i64 *ex = _pack(exps, nv, 0)
    cdef i64 *co = _pack(coeffs, nm, p)
    cdef i64 *mv = <i64 *> malloc(max(nm, 1) * sizeof(i64))
    cdef i64 *pa = <i64 *> malloc(nv * sizeof(i64))
    cdef i64 *pb = <i64 *> malloc(nv * sizeof(i64))
    cdef i64 *pt = <i64 *> malloc(nv * sizeof(i64))
    cdef bint nonzero
    out = []
    try:
        for j in range(nv):
            pa[j] = a[j] % p
            pb[j] = b[j] % p
        nonzero = False
        for j in range(nv):
            if pa[j]:
                nonzero = True
        if nonzero and _all_vanish(pa, nv, ex, nm, co, nf, mv, p):
            out.append(_canonical(pa, nv, p))
        for lam in range(p):
            nonzero = False
            for j in range(nv):
                pt[j] = (lam * pa[j] + pb[j]) % p
                if pt[j]:
                    nonzero = True
            if nonzero and _all_vanish(pt, nv, ex, nm, co, nf, mv, p):
                out.append(_canonical(pt, nv, p))
    finally:
        free(ex); free(co); free(mv); free(pa); free(pb); free(pt)
    return out


def curve_zeros(forms, exps, coeffs, i64 p):
    forms = list(forms)
    exps = list(exps)
    coeffs = list(coeffs)
    cdef int nv = len(forms)
    cdef int deg = len(forms[0]) - 1
    cdef int nm = len(exps), nf = len(coeffs), j, k
    cdef i64 t, acc
    cdef i64 *fc = _pack(forms, deg + 1, p)
    cdef i64 *ex = _pack(exps, nv, 0)
    cdef i64 *co = _pack(coeffs, nm, p)
    cdef i64 *mv = <i64 *> malloc(max(nm, 1) * sizeof(i64))
    cdef i64 *pt = <i64 *> malloc(nv * sizeof(i64))
    cdef bint nonzero
    out = []
    try:
        # parameter (0:1) first, then (1:t) for t = 0..p-1
        nonzero = False
        for j in range(nv):
            pt[j] = fc[j * (deg + 1) + deg]
            if pt[j]:
                nonzero = True
        if nonzero and _all_vanish(pt, nv, ex, nm, co, nf, mv, p):
            out.append(_canonical(pt, nv, p))
        for t in range(p):
            nonzero = False
            for j in range(nv):
                # Horner in t over coefficients of s^(deg-k) t^k with s = 1
                acc = 0
                for k in range(deg, -1, -1):
                    acc = (acc * t + fc[j * (deg + 1) + k]) % p
                pt[j] = acc
                if acc:
                    nonzero = True
            if nonzero and _all_vanish(pt, nv, ex, nm, co, nf, mv, p):
                out.append(_canonical(pt, nv, p))
    finally:
        free(fc); free(ex); free(co); free(mv); free(pt)
    return out
