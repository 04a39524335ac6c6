"""Pure-Python versions of the mod-p kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is not built or ``GEPROFI_PURE_PYTHON`` is set.
"""


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form of an integer matrix modulo ``p``.

    Returns ``(nonzero_rows, pivot_columns)``.  Input rows are not modified.
    """
    m = [[v % p for v in row] for row in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        row = m[r]
        if inv != 1:
            row = m[r] = [(v * inv) % p for v in row]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                other = m[i]
                m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _monomial_values(point, exps, p):
    out = []
    for e in exps:
        v = 1
        for x, k in zip(point, e):
            if k:
                v = v * pow(x, k, p) % p
        out.append(v)
    return out


def zero_mask(points, exps, coeffs, p):
    """For each point, whether every form (rows of ``coeffs``) vanishes there."""
    mask = []
    for pt in points:
        mv = _monomial_values(pt, exps, p)
        ok = True
        for row in coeffs:
            if sum(c * v for c, v in zip(row, mv)) % p:
                ok = False
                break
        mask.append(ok)
    return mask


def projective_points(p, n):
    """All points of P^n(F_p) as canonical tuples (first nonzero entry 1)."""
    out = []
    for lead in range(n + 1):
        tail = n - lead
        for idx in range(p ** tail):
            rest = []
            k = idx
            for _ in range(tail):
                rest.append(k % p)
                k //= p
            out.append((0,) * lead + (1,) + tuple(reversed(rest)))
    return out


def common_zeros(p, n, exps, coeffs):
    """Points of P^n(F_p) on which all forms vanish, in enumeration order."""
    # evaluate the first form first, then only the survivors against the rest
    pts = projective_points(p, n)
    if not coeffs:
        return pts
    first = zero_mask(pts, exps, coeffs[:1], p)
    survivors = [pt for pt, ok in zip(pts, first) if ok]
    if len(coeffs) == 1:
        return survivors
    rest = zero_mask(survivors, exps, coeffs[1:], p)
    return [pt for pt, ok in zip(survivors, rest) if ok]


def _canonical(v, p):
    lead = next(x for x in v if x)
    inv = pow(lead, p - 2, p)
    return tuple(x * inv % p for x in v)


def line_zeros(a, b, exps, coeffs, p):
    """Points of the line ab over F_p (canonical tuples) where every form vanishes.

    Candidates that vanish mod ``p`` (when a and b are proportional mod p) are skipped.
    """
    cands = [[x % p for x in a]] + [[(lam * x + y) % p for x, y in zip(a, b)] for lam in range(p)]
    cands = [v for v in cands if any(v)]
    mask = zero_mask(cands, exps, coeffs, p)
    return [_canonical(v, p) for v, ok in zip(cands, mask) if ok]


def curve_zeros(forms, exps, coeffs, p):
    """Images of the p + 1 parameters of a binary-form map where every form vanishes.

    Parameters mapping to the zero vector (base points) are skipped.
    """
    n = len(forms[0]) - 1
    cands = []
    for s, t in [(0, 1)] + [(1, t) for t in range(p)]:
        v = [sum(c * pow(s, n - k, p) * pow(t, k, p) for k, c in enumerate(f)) % p for f in forms]
        if any(v):
            cands.append(v)
    mask = zero_mask(cands, exps, coeffs, p)
    return [_canonical(v, p) for v, ok in zip(cands, mask) if ok]
