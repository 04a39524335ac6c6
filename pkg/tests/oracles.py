"""Independent closed-form values used as test oracles."""

from itertools import combinations

from geprofi import QQ
from geprofi.ideals import Form
from geprofi.projgeom import ProjPoint, intersect, random_point, span


def cone_formula(a) -> Form:
    """The quadric cone through the ten-point example with vertex ``a``.

    Coefficient of x_i x_j (i < j) is
    (-1)^(i+j) (a_j - a_i)(a_m - a_l)(a_m - a_k)(a_l - a_k), where k < l < m
    are the three remaining indices of {0, ..., 4}.
    """
    terms = {}
    for i, j in combinations(range(5), 2):
        k, l, m = sorted(set(range(5)) - {i, j})
        c = (-1) ** (i + j) * (a[j] - a[i]) * (a[m] - a[l]) * (a[m] - a[k]) * (a[l] - a[k])
        e = [0] * 5
        e[i] += 1
        e[j] += 1
        terms[tuple(e)] = c
    return Form.from_dict(5, 2, terms, QQ)


def planes_through_two_planes(d, rs, field=QQ):
    """d planes each meeting two fixed planes of P^4 in a line.

    Two general planes of P^4 meet in one point O; a plane meeting both in
    lines is spanned by a line of each, and those lines meet, necessarily
    at O.  Returns ``(big_planes, planes, lines)`` with ``lines[i][j]`` the
    line of ``planes[i]`` inside ``big_planes[j]``.
    """
    while True:
        big = [span([random_point(rs, 4, field) for _ in range(3)]) for _ in range(2)]
        if big[0].dim == big[1].dim == 2 and len(intersect(big)) == 1:
            break
    (o,) = intersect(big)
    o = ProjPoint(o, field)
    planes, lines = [], []
    while len(planes) < d:
        pair = []
        for pl in big:
            a, b, c = pl.basis
            r, s, t = rs.sample(field, 3)
            v = [r * x + s * y + t * z for x, y, z in zip(a.coords, b.coords, c.coords)]
            if all(x == 0 for x in v) or ProjPoint(v, field) == o:
                break
            pair.append(span([o, ProjPoint(v, field)]))
        if len(pair) < 2 or span(pair).dim != 2:
            continue
        cand = span(pair)
        if any(span([cand, other]).dim != 4 for other in planes):
            continue
        lines.append(pair)
        planes.append(cand)
    return big, planes, lines


def two_plane_hypotheses(big, planes, lines) -> bool:
    """Any two planes span P^4; each meets each big plane in exactly the recorded line; lines distinct."""
    if any(span([a, b]).dim != 4 for i, a in enumerate(planes) for b in planes[i + 1 :]):
        return False
    for pl, pair in zip(planes, lines):
        for bigp, ln in zip(big, pair):
            if len(intersect([pl, bigp])) != 2 or not all(pl.contains(x) and bigp.contains(x) for x in ln.basis):
                return False
    flat = [ln for pair in lines for ln in pair]
    return all(a != b for i, a in enumerate(flat) for b in flat[i + 1 :])


def _bump(v):
    from fractions import Fraction

    if isinstance(v, bool):
        return [not v]
    if isinstance(v, int):
        return [v + 1]
    if isinstance(v, str):
        try:
            x = Fraction(v)
        except ValueError:
            return [v + "x"]
        return [str(x + 1) if (x + 1).denominator == 1 else f"{(x + 1).numerator}/{(x + 1).denominator}"]
    if v is None:
        return [0]
    return []


def single_leaf_mutations(doc):
    """Every copy of ``doc`` with exactly one scalar leaf changed, plus one-element list deletions.

    Yields ``(path, mutated_doc)``.
    """
    import copy

    def walk(node, path):
        if isinstance(node, dict):
            for k, v in node.items():
                yield from walk(v, path + (k,))
        elif isinstance(node, list):
            for i, v in enumerate(node):
                yield from walk(v, path + (i,))
            if node:
                yield path, ("drop", len(node) - 1)
        else:
            for new in _bump(node):
                yield path, ("set", new)

    for path, (op, arg) in list(walk(doc, ())):
        out = copy.deepcopy(doc)
        target = out
        for key in path[:-1] if op == "set" else path:
            target = target[key]
        if op == "set":
            target[path[-1]] = arg
        else:
            del target[arg]
        yield path, out
