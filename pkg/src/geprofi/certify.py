"""Full-intersection certificates and the procedures that produce them.

A certificate records a projection center, the projected configuration in
P^3, a surface form of degree d vanishing on it and a curve witness of degree
b.  :func:`verify_certificate` re-derives every claim from the raw data, so
a certificate can be checked without trusting the code that produced it.

Curve witnesses come in three shapes:

``PAIRED_LINES``
    b lines, each through two image points (d = 2).
``CONE_LINES``
    b lines with d image points each, on a cone whose vertex is recorded.
``PARAM_CURVE``
    a parametrized rational curve with one parameter per image point.

For the line shapes, every line must meet the surface exactly in its
assigned points: the surface restricted to the line is a nonzero binary form
proportional to the product of the linear factors of those points.  For the
curve shape the same identity is checked for the pullback along the
parametrization, which also forces the parametrization to be birational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .constructions import ConstructionRecord, Kind
from .errors import PreconditionError
from .exactlin import Matrix, rank, rref, solve
from .field import Field, PrimeField, RandomSource, parse_field
from .ideals import Form, FormSpace, MonomialBasis, hilbert_value, ideal_slice
from .projgeom import (
    Flat,
    PointConfig,
    ProjPoint,
    RationalCurve,
    as_point,
    binary_common_factor,
    binary_product,
    canonical_param,
    common_point,
    intersect,
    curve_eval,
    lgp_violation,
    params_distinct,
    project,
    project_point,
    projection_matrix,
    proportional,
    random_point,
    span,
    span_dim,
)

FORMAT_VERSION = 1
DEFAULT_RETRIES = 5
BACKTRACK_LIMIT = 10**7


class WitnessKind(enum.Enum):
    PAIRED_LINES = "PAIRED_LINES"
    CONE_LINES = "CONE_LINES"
    PARAM_CURVE = "PARAM_CURVE"


# -- incidence helpers -------------------------------------------------------


def _det(rows) -> object:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = rows[0][0] - rows[0][0]
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            term = rows[0][j] * _det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


class SpanTest:
    """Membership test for the span of k independent vectors.

    ``x`` lies in the span iff every (k+1)-minor of the stacked matrix
    vanishes; each such minor is a linear form in ``x`` whose coefficients
    are the k-minors of the spanning rows.
    """

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        self.k = len(rows)
        ncols = len(rows[0])
        minors = {}
        for cols in combinations(range(ncols), self.k):
            minors[cols] = _det([[r[c] for c in cols] for r in rows])
        self.independent = any(v != 0 for v in minors.values())
        self.forms = []
        for cols in combinations(range(ncols), self.k + 1):
            terms = []
            for pos, c in enumerate(cols):
                rest = tuple(x for x in cols if x != c)
                m = minors[rest]
                if m != 0:
                    terms.append((c, m if (pos + self.k) % 2 == 0 else -m))
            if terms:
                self.forms.append(terms)

    def __call__(self, x: Sequence) -> bool:
        for terms in self.forms:
            s = 0
            for c, m in terms:
                if x[c]:
                    s = s + m * x[c]
            if s != 0:
                return False
        return True


def _coords(cfg: PointConfig) -> list[tuple]:
    """Coordinates with denominators cleared (integer rows over Q)."""
    if isinstance(cfg.field, PrimeField):
        return [p.coords for p in cfg.points]
    from .exactlin import integer_row

    return [tuple(integer_row(p.coords)) for p in cfg.points]


def line_families(cfg: PointConfig, min_size: int = 2) -> list[tuple[int, ...]]:
    """All lines spanned by configuration points, as sorted index tuples."""
    rows = _coords(cfg)
    n = len(rows)
    seen: set = set()
    out = []
    for i, j in combinations(range(n), 2):
        if (i, j) in seen:
            continue
        test = SpanTest([rows[i], rows[j]])
        members = tuple(k for k in range(n) if k in (i, j) or test(rows[k]))
        for a, c in combinations(members, 2):
            seen.add((a, c))
        if len(members) >= min_size:
            out.append(members)
    return sorted(out)


def plane_families(cfg: PointConfig, min_size: int = 3) -> list[tuple[int, ...]]:
    """All planes spanned by non-collinear triples, as sorted index tuples."""
    rows = _coords(cfg)
    n = len(rows)
    seen: set = set()
    out = []
    for i, j, k in combinations(range(n), 3):
        if (i, j, k) in seen:
            continue
        test = SpanTest([rows[i], rows[j], rows[k]])
        if not test.independent:
            continue
        members = tuple(m for m in range(n) if m in (i, j, k) or test(rows[m]))
        for tri in combinations(members, 3):
            seen.add(tri)
        if len(members) >= min_size:
            out.append(members)
    return sorted(set(out))


def _maximal(families: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    sets = [set(f) for f in families]
    return sorted(f for f, s in zip(families, sets) if not any(s < t for t in sets))


# -- linear general position -------------------------------------------------


@dataclass(frozen=True)
class LGPResult:
    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def is_lgp(cfg: PointConfig) -> LGPResult:
    bad = lgp_violation(cfg)
    return LGPResult(bad is None, bad)


# -- quadric helpers ---------------------------------------------------------


def quadric_contains_line(q: Form, a, b) -> bool:
    """A quadric contains the line ab iff q(a) = q(b) = polar(a, b) = 0."""
    a = a.coords if isinstance(a, ProjPoint) else a
    b = b.coords if isinstance(b, ProjPoint) else b
    qa, qb = q(a), q(b)
    if qa != 0 or qb != 0:
        return False
    return q([x + y for x, y in zip(a, b)]) - qa - qb == 0


def is_vertex(form: Form, pt) -> bool:
    return all(g == 0 for g in form.gradient(pt))


def quadric_rank(q: Form) -> int:
    return rank(q.symmetric_matrix())


def _directional_derivative(form: Form, v: Sequence) -> Form:
    lower = MonomialBasis(form.num_vars, form.degree - 1)
    total = Form(lower, [form.field.zero] * len(lower), form.field)
    for i, c in enumerate(v):
        if c != 0:
            total = total + form.partial(i).scale(c)
    return total


def is_cone_with_vertex(form: Form, vertex) -> bool:
    """F is a cone with vertex v iff the derivative of F in direction v vanishes."""
    vertex = as_point(vertex, form.field)
    return _directional_derivative(form, vertex.coords).is_zero()


# -- pairing -----------------------------------------------------------------


@dataclass
class Pairing:
    pairs: list[tuple[int, int]] | None
    path: str


def pair_partition(image: PointConfig, quadric: Form, step_limit: int = BACKTRACK_LIMIT) -> Pairing:
    """Match the points of ``image`` into pairs whose lines are not on ``quadric``.

    Hypotheses: even size 2b >= 4, the quadric vanishes on every point, no
    point is a vertex of it, and either the quadric is a pair of planes with
    b points on each, or no b + 1 points are collinear.
    """
    n = len(image)
    if n < 4 or n % 2:
        raise PreconditionError("pairing needs an even number (>= 4) of points")
    if image.ambient_dim != 3 or quadric.num_vars != 4 or quadric.degree != 2:
        raise PreconditionError("pairing works with a quadric surface in P^3")
    b = n // 2
    pts = [p.coords for p in image.points]
    if any(quadric(p) != 0 for p in pts):
        raise PreconditionError("quadric does not vanish on every point")
    for i, p in enumerate(pts):
        if is_vertex(quadric, p):
            raise PreconditionError(f"no-vertex hypothesis violated: point {i} is a vertex of the quadric")

    def on_q(i, j):
        return quadric_contains_line(quadric, pts[i], pts[j])

    if quadric_rank(quadric) <= 2:
        sides = _plane_sides(pts, on_q)
        if sides is not None and len(sides[0]) == len(sides[1]) == b:
            return Pairing(list(zip(sides[0], sides[1])), "two-plane")
    lines = line_families(image)
    if any(len(ln) > b for ln in lines):
        raise PreconditionError(f"hypothesis violated: more than {b} collinear points and not two equidistributed planes")
    res = _lemma_pairs(list(range(n)), lines, on_q)
    if res is not None:
        return Pairing(sorted(res), "lemma")
    res = _backtrack_pairs(n, on_q, step_limit)
    return Pairing(res, "backtracking" if res is not None else "exhausted")


def _plane_sides(pts, on_q):
    a = [0]
    rest = []
    for k in range(1, len(pts)):
        (a if on_q(0, k) else rest).append(k)
    if not rest:
        return None
    if any(not on_q(rest[0], k) for k in rest) or any(on_q(x, y) for x in a for y in rest):
        return None
    return a, rest


def _lemma_pairs(idx: list[int], lines: list[tuple[int, ...]], on_q):
    """The inductive pairing procedure on the index set ``idx``."""
    if len(idx) == 4:
        p = idx
        for m in (((p[0], p[1]), (p[2], p[3])), ((p[0], p[2]), (p[1], p[3])), ((p[0], p[3]), (p[1], p[2]))):
            if not on_q(*m[0]) and not on_q(*m[1]):
                return list(m)
        return None
    alive = set(idx)
    restricted = [tuple(k for k in ln if k in alive) for ln in lines]
    restricted = [ln for ln in restricted if len(ln) >= 2]
    if not restricted:
        return None
    top = max(len(ln) for ln in restricted)
    l1 = min(ln for ln in restricted if len(ln) == top)
    rest = [tuple(k for k in ln if k not in l1) for ln in restricted]
    rest = [ln for ln in rest if len(ln) >= 2]
    if rest:
        top2 = max(len(ln) for ln in rest)
        l2 = min(ln for ln in rest if len(ln) == top2)
    else:
        others = [k for k in idx if k not in l1]
        l2 = tuple(others[:2])
    y = [l1[0], l1[1], l2[0], l2[1]]
    cross = [(y[0], y[2]), (y[0], y[3]), (y[1], y[2]), (y[1], y[3])]
    same = [(y[0], y[1]), (y[2], y[3])]
    half = len(idx) // 2 - 1
    for i, j in cross + same:
        if on_q(i, j):
            continue
        remaining = [k for k in idx if k not in (i, j)]
        rs = set(remaining)
        if any(sum(1 for k in ln if k in rs) > half for ln in restricted):
            continue
        sub = _lemma_pairs(remaining, lines, on_q)
        if sub is not None:
            return [(i, j)] + sub
    return None


def _backtrack_pairs(n: int, on_q, step_limit: int):
    used = [False] * n
    pairs: list[tuple[int, int]] = []
    steps = 0

    def go() -> bool:
        nonlocal steps
        first = next((k for k in range(n) if not used[k]), None)
        if first is None:
            return True
        used[first] = True
        for j in range(first + 1, n):
            steps += 1
            if steps > step_limit:
                break
            if used[j] or on_q(first, j):
                continue
            used[j] = True
            pairs.append((first, j))
            if go():
                return True
            pairs.pop()
            used[j] = False
        used[first] = False
        return False

    return list(pairs) if go() else None


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class LineComponent:
    """A line with the image indices assigned to it.

    The spanning points are replaced by the reduced echelon basis of the
    line, so each line has exactly one encoding.  Dependent spanning points
    are kept as given and rejected by the verifier.
    """

    a: ProjPoint
    b: ProjPoint
    assigned: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b) or self.a.field != self.b.field:
            return
        red, piv = rref(Matrix([self.a.coords, self.b.coords], self.a.field))
        if len(piv) == 2:
            object.__setattr__(self, "a", ProjPoint(red.row(0), self.a.field))
            object.__setattr__(self, "b", ProjPoint(red.row(1), self.a.field))

    def to_json(self) -> dict:
        return {"points": [self.a.to_json(), self.b.to_json()], "assigned": list(self.assigned)}


@dataclass
class CurveWitness:
    kind: WitnessKind
    lines: list[LineComponent] = dc_field(default_factory=list)
    vertex: ProjPoint | None = None
    curve: RationalCurve | None = None
    params: list[tuple] | None = None

    def to_json(self) -> dict:
        if self.kind is WitnessKind.PARAM_CURVE:
            f = self.curve.field
            data = {
                "curve": self.curve.to_json(),
                "params": [[f.to_json(x) for x in canonical_param(prm, f)] for prm in self.params],
            }
        else:
            data = {"lines": [ln.to_json() for ln in self.lines]}
            if self.kind is WitnessKind.CONE_LINES:
                data["vertex"] = self.vertex.to_json()
        return {"kind": self.kind.value, "data": data}


@dataclass
class GeprofiCertificate:
    b: int
    d: int
    center: ProjPoint
    image: PointConfig
    surface: Form
    curve_witness: CurveWitness
    transcript: list[dict]
    source: PointConfig | None = None

    @property
    def field(self) -> Field:
        return self.image.field

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "field": self.field.tag(),
            "b": self.b,
            "d": self.d,
            "center": self.center.to_json(),
            "source": self.source.to_json() if self.source is not None else None,
            "image": self.image.to_json(),
            "surface_witness": self.surface.to_json(),
            "curve_witness": self.curve_witness.to_json(),
            "transcript": [dict(t) for t in self.transcript],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GeprofiCertificate":
        """Parse a certificate document; malformed input raises ``PreconditionError``."""
        try:
            if doc.get("format_version") != FORMAT_VERSION:
                raise ValueError(f"unsupported format_version {doc.get('format_version')!r}")
            field = parse_field(doc["field"])
            for key in ("image", "surface_witness"):
                if parse_field(doc[key].get("field", "Q")) != field:
                    raise ValueError(f"{key} field differs from certificate field")
            b, d = doc["b"], doc["d"]
            if not isinstance(b, int) or not isinstance(d, int) or isinstance(b, bool) or isinstance(d, bool):
                raise ValueError("b and d must be integers")
            center = ProjPoint.from_json(doc["center"], field)
            source = PointConfig.from_json(doc["source"]) if doc.get("source") is not None else None
            if source is not None and source.field != field:
                raise ValueError("source field differs from certificate field")
            image = PointConfig.from_json(doc["image"])
            surface = Form.from_json(doc["surface_witness"])
            cw = doc["curve_witness"]
            kind = WitnessKind(cw["kind"])
            data = cw["data"]
            if kind is WitnessKind.PARAM_CURVE:
                curve = RationalCurve.from_json(data["curve"])
                if curve.field != field:
                    raise ValueError("curve field differs from certificate field")
                params = [(field.from_json(s), field.from_json(t)) for s, t in data["params"]]
                witness = CurveWitness(kind, curve=curve, params=params)
            else:
                lines = []
                for ln in data["lines"]:
                    pa, pb = (ProjPoint.from_json(x, field) for x in ln["points"])
                    assigned = ln["assigned"]
                    if not all(isinstance(i, int) and not isinstance(i, bool) for i in assigned):
                        raise ValueError("assigned indices must be integers")
                    lines.append(LineComponent(pa, pb, tuple(assigned)))
                vertex = ProjPoint.from_json(data["vertex"], field) if kind is WitnessKind.CONE_LINES else None
                witness = CurveWitness(kind, lines=lines, vertex=vertex)
            transcript = [dict(t) for t in doc["transcript"]]
        except PreconditionError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError) as exc:
            raise PreconditionError(f"malformed certificate: {exc}") from exc
        cert = cls(b, d, center, image, surface, witness, transcript, source)
        # projective data must use its canonical representative
        if cert.to_json() != doc:
            raise PreconditionError("malformed certificate: non-canonical encoding")
        return cert


@dataclass
class Verification:
    ok: bool
    transcript: list[dict]
    failed: str | None = None
    detail: str | None = None

    def __bool__(self):
        return self.ok


class _Fail(Exception):
    def __init__(self, check: str, detail: str):
        super().__init__(detail)
        self.check = check
        self.detail = detail


def _line_param(pt: ProjPoint, a: ProjPoint, b: ProjPoint):
    m = Matrix([a.coords, b.coords], pt.field).transpose()
    sol = solve(m, pt.coords)
    return None if sol is None else tuple(sol)


def _run_checks(cert: GeprofiCertificate) -> list[dict]:
    """Every verification step, in order; raises ``_Fail`` at the first failure."""
    log: list[dict] = []
    field = cert.field

    def ok(check, **extra):
        log.append({"check": check, "status": "pass", **extra})

    def need(cond, check, detail):
        if not cond:
            raise _Fail(check, detail)

    b, d = cert.b, cert.d
    need(b >= 1 and d >= 1, "header", "b and d must be positive")
    need(cert.image.ambient_dim == 3, "header", "image must lie in P^3")
    need(cert.center.ambient_dim == 4 and cert.center.field == field, "header", "center must be a point of P^4")
    ok("header", field=field.tag(), format_version=FORMAT_VERSION)

    image = cert.image
    need(len(image) == b * d, "image cardinality", f"{len(image)} image points, expected b*d = {b * d}")
    ok("image cardinality", value=b * d)

    f = cert.surface
    need(f.field == field and f.num_vars == 4 and f.degree == d, "surface degree", "surface witness must be a form of degree d in 4 variables")
    need(not f.is_zero(), "surface degree", "surface witness is the zero form")
    ok("surface degree", value=d)

    bad = [i for i, p in enumerate(image.points) if f(p) != 0]
    need(not bad, "surface_witness vanishing", f"surface does not vanish at image point {bad[:1]}")
    ok("surface_witness vanishing")

    w = cert.curve_witness
    if w.kind is WitnessKind.PARAM_CURVE:
        _check_param_curve(cert, w, ok, need)
    else:
        _check_lines(cert, w, ok, need)

    if d == 2:
        log.append({"check": "quadric rank", "status": "info", "value": quadric_rank(f)})

    if cert.source is None:
        log.append({"check": "source projection", "status": "skipped"})
    else:
        src = cert.source
        need(src.ambient_dim == 4 and len(src) == b * d, "source projection", "source must be b*d points of P^4")
        need(cert.center not in src.points, "source projection", "center is a source point")
        proj = project(src, cert.center)
        need(not proj.collided, "source projection", "source points collide under the projection")
        need(proj.image == image, "source projection", "image differs from the projection of the source")
        ok("source projection")
    return log


def _check_lines(cert, w: CurveWitness, ok, need) -> None:
    b, d, image, f = cert.b, cert.d, cert.image, cert.surface
    if w.kind is WitnessKind.PAIRED_LINES:
        need(d == 2 and all(len(ln.assigned) == 2 for ln in w.lines), "line components partition", "paired lines need d = 2 and two points per line")
    need(len(w.lines) == b, "line components partition", f"{len(w.lines)} lines, expected b = {b}")
    flat = [i for ln in w.lines for i in ln.assigned]
    need(sorted(flat) == list(range(len(image))), "line components partition", "assigned indices do not partition the image")
    need(all(len(ln.assigned) == d for ln in w.lines), "line components partition", "every line needs d assigned points")
    ok("line components partition", value=b)

    params = []
    for k, ln in enumerate(w.lines):
        need(ln.a.field == cert.field and ln.a.ambient_dim == 3 and ln.b.ambient_dim == 3 and ln.a != ln.b, "point-on-line", f"line {k} is not spanned by two distinct points of P^3")
        ps = []
        for i in ln.assigned:
            prm = _line_param(image[i], ln.a, ln.b)
            need(prm is not None, "point-on-line", f"image point {i} is not on line {k}")
            ps.append(prm)
        params.append(ps)
    ok("point-on-line")

    pullbacks = [f.restrict_to_line(ln.a, ln.b) for ln in w.lines]
    for k, pb in enumerate(pullbacks):
        need(any(c != 0 for c in pb), "line not on surface", f"line {k} lies on the surface")
    ok("line not on surface")

    for k, (pb, ps) in enumerate(zip(pullbacks, params)):
        need(proportional(pb, binary_product(ps, cert.field)), "line exactness", f"line {k} meets the surface outside its assigned points")
    ok("line exactness", value=b * d)

    if w.kind is WitnessKind.CONE_LINES:
        v = w.vertex
        need(v is not None and v.field == cert.field and v.ambient_dim == 3, "cone vertex", "cone vertex missing")
        need(is_cone_with_vertex(f, v), "cone vertex", "surface is not a cone with the recorded vertex")
        need(v not in image.points, "cone vertex", "cone vertex is an image point")
        ok("cone vertex")


def _check_param_curve(cert, w: CurveWitness, ok, need) -> None:
    b, d, image, f = cert.b, cert.d, cert.image, cert.surface
    c = w.curve
    need(c is not None and c.ambient_dim == 3 and c.degree == b and c.field == cert.field, "curve parametrization", "curve must be a degree-b parametrization into P^3")
    need(not binary_common_factor(c.forms), "curve parametrization", "parametrization has a base point")
    need(w.params is not None and len(w.params) == len(image), "curve parametrization", "one parameter per image point is required")
    need(all(not (s == 0 and t == 0) for s, t in w.params), "curve parametrization", "(0,0) is not a parameter")
    need(params_distinct(w.params, cert.field), "curve parametrization", "parameters are not distinct")
    ok("curve parametrization", value=b)

    for i, prm in enumerate(w.params):
        need(curve_eval(c, prm) == image[i], "point-on-curve", f"parameter {i} does not map to image point {i}")
    ok("point-on-curve")

    pb = f.pullback(c.forms)
    need(any(x != 0 for x in pb), "curve not on surface", "curve lies on the surface")
    ok("curve not on surface")
    need(proportional(pb, binary_product(w.params, cert.field)), "parameter exactness", "curve meets the surface outside the image points")
    ok("parameter exactness", value=b * d)


def verify_certificate(cert: GeprofiCertificate) -> Verification:
    """Re-run every check from raw data and compare with the stored transcript."""
    try:
        log = _run_checks(cert)
    except _Fail as exc:
        return Verification(False, [{"check": exc.check, "status": "fail"}], exc.check, exc.detail)
    except (PreconditionError, ZeroDivisionError, TypeError) as exc:
        return Verification(False, [{"check": "well-formed", "status": "fail"}], "well-formed", str(exc))
    if cert.transcript != log:
        return Verification(False, log, "transcript", "stored transcript differs from the recomputed one")
    return Verification(True, log)


def verify_document(doc: dict) -> Verification:
    try:
        cert = GeprofiCertificate.from_json(doc)
    except PreconditionError as exc:
        return Verification(False, [{"check": "well-formed", "status": "fail"}], "well-formed", str(exc))
    return verify_certificate(cert)


def _seal(cert: GeprofiCertificate) -> GeprofiCertificate | None:
    """Fill in the transcript; ``None`` if the certificate does not verify."""
    try:
        cert.transcript = _run_checks(cert)
    except (_Fail, PreconditionError, ZeroDivisionError):
        return None
    return cert if verify_certificate(cert).ok else None


def _note(log, msg: str) -> None:
    if log is not None:
        log.append(msg)


# -- certifiers --------------------------------------------------------------


def _sample_center(cfg: PointConfig, rs: RandomSource) -> ProjPoint:
    while True:
        c = random_point(rs, cfg.ambient_dim, cfg.field)
        if c not in cfg.points:
            return c


def _choose_quadric(space: FormSpace, image: PointConfig, rs: RandomSource, tries: int = 12) -> Form | None:
    """A quadric of ``space`` with no image point as vertex, irreducible if possible."""
    candidates = space.forms() if space.dim == 1 else [space.random_member(rs) for _ in range(tries)]
    fallback = None
    for q in candidates:
        if any(is_vertex(q, p) for p in image.points):
            continue
        if quadric_rank(q) >= 3:
            return q
        fallback = fallback or q
    return fallback


def _paired_certificate(cfg, center, proj, q, pairs) -> GeprofiCertificate | None:
    image = proj.image
    lines = [LineComponent(image[i], image[j], (i, j)) for i, j in pairs]
    cert = GeprofiCertificate(
        len(pairs), 2, center, image, q.normalized(), CurveWitness(WitnessKind.PAIRED_LINES, lines), [], cfg
    )
    return _seal(cert)


def certify_b2(cfg: PointConfig, rs: RandomSource, retries: int = DEFAULT_RETRIES, log: list | None = None):
    """Certificate that ``cfg`` (2b points of P^4) projects onto b lines on a quadric."""
    if cfg.ambient_dim != 4:
        raise PreconditionError("certify_b2 expects points of P^4")
    if len(cfg) < 4 or len(cfg) % 2:
        raise PreconditionError("certify_b2 expects an even number (>= 4) of points")
    for attempt in range(retries):
        rs_a = rs.child("b2", attempt)
        center = _sample_center(cfg, rs_a)
        proj = project(cfg, center)
        if proj.collided:
            _note(log, f"attempt {attempt}: two points collide under projection")
            continue
        space = ideal_slice(proj.image, 2)
        if space.dim == 0:
            _note(log, f"attempt {attempt}: projected points lie on no quadric")
            continue
        q = _choose_quadric(space, proj.image, rs_a)
        if q is None:
            _note(log, f"attempt {attempt}: every sampled quadric has an image point as vertex")
            continue
        try:
            pairing = pair_partition(proj.image, q)
        except PreconditionError as exc:
            _note(log, f"attempt {attempt}: {exc}")
            continue
        if pairing.pairs is None:
            _note(log, f"attempt {attempt}: no admissible pairing")
            continue
        cert = _paired_certificate(cfg, center, proj, q, pairing.pairs)
        if cert is not None:
            _note(log, f"attempt {attempt}: certified via {pairing.path} pairing; quadric space dim {space.dim}")
            return cert
    _note(log, "no certificate found (absence is not a proof)")
    return None


def certify_cone_construction(cfg: PointConfig, record: ConstructionRecord, rs: RandomSource, retries: int = DEFAULT_RETRIES, log: list | None = None):
    """Certificate via a cone over a plane curve with vertex at the image of a special point."""
    if record.kind is Kind.GRID_EXTENSION:
        special = record.points["P_0"]
        line_names = [n for n in record.flats if n.startswith(("L_", "N_"))] + ["L", "L'"]
        d = int(record.parameters["d"])
    elif record.kind in (Kind.CONCURRENT_LINES, Kind.EXAMPLE_3_2):
        special = record.points["O"]
        line_names = [n for n in record.flats if n.startswith("line_")]
        d = 2
    else:
        raise PreconditionError(f"no cone construction for {record.kind.value}")
    if len(cfg) % d:
        raise PreconditionError("configuration size is not a multiple of d")
    b = len(cfg) // d
    for attempt in range(retries):
        rs_a = rs.child("cone", attempt)
        center = _sample_center(cfg, rs_a)
        if center == special:
            continue
        proj = project(cfg, center)
        if proj.collided:
            _note(log, f"attempt {attempt}: collision under projection")
            continue
        image = proj.image
        vertex = project_point(special, center)
        if vertex in image.points:
            _note(log, f"attempt {attempt}: cone vertex is an image point")
            continue
        flat_img = project(image, vertex).image
        curves = ideal_slice(flat_img, d)
        if curves.dim == 0:
            _note(log, f"attempt {attempt}: no plane curve of degree {d} through the doubly projected points")
            continue
        m = projection_matrix(vertex)
        lift_rows = [list(m.row(j)) for j in range(m.rows)]
        g = curves.forms()[0] if curves.dim == 1 else curves.random_member(rs_a)
        cone = g.substitute(lift_rows).normalized()
        if record.kind is Kind.GRID_EXTENSION:
            lines = []
            for name in line_names:
                flat = record.flats[name]
                pa, pb = (project_point(p, center) for p in flat.basis[:2])
                lines.append(LineComponent(pa, pb, tuple(proj.index_map[i] for i in record.members[name])))
            witness = CurveWitness(WitnessKind.CONE_LINES, lines, vertex=vertex)
            cert = _seal(GeprofiCertificate(b, d, center, image, cone, witness, [], cfg))
            if cert is not None:
                _note(log, f"attempt {attempt}: cone over a plane curve from a pencil of dim {curves.dim}")
                return cert
            _note(log, f"attempt {attempt}: a recorded line lies on the cone")
            continue
        # concurrent lines: the recorded lines pass through the vertex and lie on
        # the cone, so the b lines of the witness come from the pairing procedure
        try:
            pairing = pair_partition(image, cone)
        except PreconditionError as exc:
            _note(log, f"attempt {attempt}: {exc}")
            continue
        if pairing.pairs is None:
            continue
        cert = _paired_certificate(cfg, center, proj, cone, pairing.pairs)
        if cert is not None:
            _note(log, f"attempt {attempt}: quadric cone of rank {quadric_rank(cone)}; {pairing.path} pairing")
            return cert
    _note(log, "no certificate found (absence is not a proof)")
    return None


def certify_on_curve(curve: RationalCurve, params: Sequence, d: int, rs: RandomSource, retries: int = DEFAULT_RETRIES, log: list | None = None):
    """Certificate for points of a rational curve in P^4 cut by a degree-d surface after projection."""
    field = curve.field
    params = [tuple(field(x) for x in p) for p in params]
    b = curve.degree
    if curve.ambient_dim != 4:
        raise PreconditionError("certify_on_curve expects a curve in P^4")
    if len(params) != b * d:
        raise PreconditionError(f"need b*d = {b * d} parameters, got {len(params)}")
    if not params_distinct(params, field):
        raise PreconditionError("parameters must be pairwise distinct")
    cfg = PointConfig([curve_eval(curve, p) for p in params], field)
    for attempt in range(retries):
        rs_a = rs.child("curve", attempt)
        center = _sample_center(cfg, rs_a)
        proj = project(cfg, center)
        if proj.collided:
            _note(log, f"attempt {attempt}: collision under projection")
            continue
        try:
            pcurve = curve.compose(projection_matrix(center))
        except PreconditionError:
            _note(log, f"attempt {attempt}: center lies on the curve")
            continue
        image = proj.image
        space = ideal_slice(image, d)
        forms = space.forms()
        pulled = [fm.pullback(pcurve.forms) for fm in forms]
        on_curve = len(forms) - (rank(Matrix(pulled, field)) if forms else 0)
        _note(log, f"attempt {attempt}: dim[I_image]_{d} = {space.dim}, dim[I_curve+image]_{d} = {on_curve}")
        if space.dim <= on_curve:
            continue
        surface = None
        for _ in range(10):
            cand = space.random_member(rs_a)
            if any(x != 0 for x in cand.pullback(pcurve.forms)):
                surface = cand.normalized()
                break
        if surface is None:
            continue
        img_params = [None] * len(image)
        for i, prm in enumerate(params):
            img_params[proj.index_map[i]] = prm
        witness = CurveWitness(WitnessKind.PARAM_CURVE, curve=pcurve, params=img_params)
        cert = _seal(GeprofiCertificate(b, d, center, image, surface, witness, [], cfg))
        if cert is not None:
            return cert
        _note(log, f"attempt {attempt}: pullback is not the product of the parameter factors")
    _note(log, "no certificate found (absence is not a proof)")
    return None


# -- twisted cubics ----------------------------------------------------------


def no_twisted_cubic_check(cfg: PointConfig, rs: RandomSource, centers: int = 5, log: list | None = None) -> bool:
    """True when no sampled projection of the 7 points lies on a twisted cubic.

    A projection with three collinear or four coplanar points cannot lie on
    a twisted cubic.  Otherwise the quadrics through the image form a net;
    if it lay on a twisted cubic the net would be the cubic's ideal in degree
    2, which has two linear syzygies.  So the net's degree-3 multiples
    spanning the full 12 dimensions rules a twisted cubic out.
    """
    if len(cfg) != 7:
        raise PreconditionError("no_twisted_cubic_check expects 7 points")
    if span_dim(cfg.points) != 4:
        raise PreconditionError("the 7 points must span P^4")
    for k in range(centers):
        rs_k = rs.child("cubic", k)
        center = _sample_center(cfg, rs_k)
        proj = project(cfg, center)
        image = proj.image
        if proj.collided or any(len(f) >= 3 for f in line_families(image)) or any(len(f) >= 4 for f in plane_families(image)):
            _note(log, f"center {k}: three collinear or four coplanar image points")
            continue
        h2 = hilbert_value(image, 2)
        net = ideal_slice(image, 2)
        if h2 != 7 or net.dim != 3:
            _note(log, f"center {k}: unexpected Hilbert function value H(2) = {h2}")
            return False
        mult = []
        for q in net.forms():
            for i in range(4):
                x = Form.linear([1 if j == i else 0 for j in range(4)], image.field)
                mult.append((x * q).coeffs)
        r = rank(Matrix(mult, image.field))
        _note(log, f"center {k}: rank of degree-3 multiples of the net = {r}")
        if r != 12:
            return False
    return True


# -- triviality census -------------------------------------------------------


class Verdict(enum.Enum):
    TRIVIAL_WITNESS_FOUND = "TRIVIAL_WITNESS_FOUND"
    NO_EVIDENCE = "NO_EVIDENCE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Component:
    kind: str  # "line" or "plane_curve"
    indices: tuple[int, ...]
    degree: int
    flat: Flat
    curve: Form | None = None  # plane curve in coordinates of ``flat.basis``

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "indices": list(self.indices), "degree": self.degree, "flat": self.flat.to_json()}
        if self.curve is not None:
            doc["curve"] = self.curve.to_json()
        return doc


@dataclass
class TrivialityReport:
    collinear_families: list[tuple[int, ...]]
    coplanar_families: list[tuple[int, ...]]
    verdict: Verdict
    hypergrid: dict | None = None
    planes: list[tuple[int, ...]] | None = None
    components: list[Component] | None = None
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "collinear_families": [list(f) for f in self.collinear_families],
            "coplanar_families": [list(f) for f in self.coplanar_families],
            "planes": [list(p) for p in self.planes] if self.planes else None,
            "components": [c.to_json() for c in self.components] if self.components else None,
            "hypergrid": self.hypergrid,
            "notes": list(self.notes),
        }


class _Budget(Exception):
    pass


def triviality_census(cfg: PointConfig, b: int, d: int, budget: int = 200_000) -> TrivialityReport:
    """Look for a decomposition as d planes cut by lines and plane curves of total degree b."""
    if len(cfg) != b * d:
        raise PreconditionError(f"census expects b*d = {b * d} points, got {len(cfg)}")
    lines_all = line_families(cfg)
    planes_all = plane_families(cfg)
    collinear = _maximal([f for f in lines_all if len(f) >= 3])
    coplanar = _maximal([f for f in planes_all if len(f) >= 4])
    report = TrivialityReport(collinear, coplanar, Verdict.INCONCLUSIVE)
    if b < 3 or d < 2:
        report.notes.append("outside the classification range b >= 3, d >= 2")
        return report
    if span_dim(cfg.points) != 4:
        report.notes.append("configuration is degenerate")
        return report
    n = len(cfg)
    plane_blocks = [p for p in planes_all if len(p) == b]
    line_blocks = [ln for ln in lines_all if len(ln) == b]
    blocks = plane_blocks + line_blocks
    line_block_set = set(line_blocks)
    steps = [0]

    def tick():
        steps[0] += 1
        if steps[0] > budget:
            raise _Budget

    partitions: list[list[tuple[int, ...]]] = []
    by_point: dict[int, list] = {i: [] for i in range(n)}
    for blk in blocks:
        for i in blk:
            by_point[i].append(blk)

    def cover(used: set, chosen: list):
        tick()
        if len(used) == n:
            partitions.append(list(chosen))
            return
        first = next(i for i in range(n) if i not in used)
        for blk in by_point[first]:
            if used.isdisjoint(blk):
                chosen.append(blk)
                cover(used | set(blk), chosen)
                chosen.pop()

    incomplete = False
    try:
        cover(set(), [])
        if not partitions:
            report.verdict = Verdict.NO_EVIDENCE
            report.notes.append(f"no partition into {d} coplanar sets of {b} points")
            return report
        for part in partitions:
            if any(blk in line_block_set for blk in part):
                incomplete = True
                report.notes.append("a partition uses collinear blocks; plane not determined")
                continue
            found, skipped = _assemble(cfg, part, b, d, lines_all, planes_all, tick)
            incomplete = incomplete or skipped
            if found is not None:
                report.verdict = Verdict.TRIVIAL_WITNESS_FOUND
                report.planes = sorted(part)
                report.components = found
                report.hypergrid = _hypergrid_view(cfg, part, found)
                return report
    except _Budget:
        report.notes.append("search budget exhausted")
        return report
    if incomplete:
        report.notes.append("partitions exist but the witness search was not exhaustive")
        return report
    report.verdict = Verdict.NO_EVIDENCE
    report.notes.append(f"{len(partitions)} plane partitions, none completes to a witness")
    return report


def _assemble(cfg, part, b, d, lines_all, planes_all, tick):
    """Exact cover of ``cfg`` by line and plane-curve components for one plane partition."""
    n = len(cfg)
    block_of = {}
    for k, blk in enumerate(part):
        for i in blk:
            block_of[i] = k
    plane_flats = [span([cfg[i] for i in blk]) for blk in part]
    skipped = False
    comps: list[Component] = []
    for ln in lines_all:
        if len(ln) == d and sorted(block_of[i] for i in ln) == list(range(d)):
            flat = span([cfg[ln[0]], cfg[ln[1]]])
            if not any(_flat_within(flat, pf) for pf in plane_flats):
                comps.append(Component("line", ln, 1, flat))
    block_set = set(part)
    for pl in planes_all:
        if pl in block_set or len(pl) < 2 * d:
            continue
        counts = [sum(1 for i in pl if block_of[i] == k) for k in range(d)]
        flat = span([cfg[i] for i in pl[:3]]) if span_dim([cfg[i] for i in pl]) == 2 else None
        if flat is None:
            continue
        meets = [intersection_dim(flat, pf) for pf in plane_flats]
        if any(m != 1 for m in meets):
            continue
        k = counts[0]
        if len(set(counts)) != 1 or k < 2:
            skipped = True
            continue
        curve = _plane_curve(cfg, pl, flat, plane_flats, k)
        if curve is None:
            skipped = True
            continue
        comps.append(Component("plane_curve", pl, k, flat, curve))
    by_point: dict[int, list[Component]] = {i: [] for i in range(n)}
    for c in comps:
        for i in c.indices:
            by_point[i].append(c)

    chosen: list[Component] = []

    def go(used: set, deg: int) -> bool:
        tick()
        if len(used) == n:
            return deg == b
        first = next(i for i in range(n) if i not in used)
        for c in by_point[first]:
            if used.isdisjoint(c.indices) and deg + c.degree <= b:
                chosen.append(c)
                if go(used | set(c.indices), deg + c.degree):
                    return True
                chosen.pop()
        return False

    return (list(chosen) if go(set(), 0) else None), skipped


def _flat_within(a: Flat, b: Flat) -> bool:
    return all(b.contains(p) for p in a.basis)


def intersection_dim(a: Flat, b: Flat) -> int:
    return len(intersect([a, b])) - 1


def _plane_curve(cfg, idx, plane: Flat, block_planes, k):
    """A degree-k curve in ``plane`` through the points ``idx`` meeting no ``plane & pi_i`` in a whole line."""
    field = cfg.field
    basis_m = Matrix([p.coords for p in plane.basis], field).transpose()

    def local(pt):
        sol = solve(basis_m, pt.coords)
        return ProjPoint(sol, field)

    pts = PointConfig([local(cfg[i]) for i in idx], field)
    space = ideal_slice(pts, k)
    if space.dim == 0:
        return None
    ells = []
    for pf in block_planes:
        vecs = intersect([plane, pf])
        ells.append([local(ProjPoint(v, field)) for v in vecs])
    rs = RandomSource(len(idx) * 7919 + k)
    for _ in range(20):
        g = space.random_member(rs)
        if all(any(c != 0 for c in g.restrict_to_line(a, c2)) for a, c2 in ells):
            return g.normalized()
    return None


def _hypergrid_view(cfg, part, comps: list[Component]):
    if any(c.kind != "line" for c in comps):
        return None
    line_flats = [c.flat for c in comps]
    plane_flats = [span([cfg[i] for i in blk]) for blk in part]
    if any(common_point([x, y]).dim != -1 for x, y in combinations(line_flats, 2)):
        return None
    if any(span([x, y]).dim != 4 for x, y in combinations(plane_flats, 2)):
        return None
    return {"lines": [list(c.indices) for c in comps], "planes": [list(p) for p in sorted(part)]}
