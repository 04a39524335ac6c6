"""Generators for the point configurations studied here.

Every generator returns the configuration together with a
:class:`ConstructionRecord` listing the flats (lines, planes) or curve used to
build it and which points lie on each.  Generators check their own
genericity requirements and resample on failure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .errors import GenericityError, PreconditionError
from .exactlin import Matrix, det, rank, solve
from .field import LIAISON_PRIME, QQ, Field, PrimeField, RandomSource
from .ideals import ideal_slice
from .projgeom import (
    Flat,
    PointConfig,
    ProjPoint,
    RationalCurve,
    common_point,
    curve_eval,
    params_distinct,
    lgp_violation,
    project,
    project_point,
    random_invertible,
    random_point,
    segre_p1xp2,
    span,
    span_dim,
    standard_rnc,
)

DEFAULT_TRIES = 50


class Kind(enum.Enum):
    EXAMPLE_3_2 = "EXAMPLE_3_2"
    CONCURRENT_LINES = "CONCURRENT_LINES"
    HYPERGRID = "HYPERGRID"
    GRID_EXTENSION = "GRID_EXTENSION"
    RNC_POINTS = "RNC_POINTS"
    TRIVIAL_PLANES_LINES = "TRIVIAL_PLANES_LINES"
    LIAISON_FF = "LIAISON_FF"
    RATIONAL_CURVE = "RATIONAL_CURVE"


@dataclass
class ConstructionRecord:
    """Incidence data of a construction.

    ``flats`` maps a name to a flat, ``members`` maps the same name to the
    indices of configuration points on it, ``points`` holds named auxiliary
    points (centers, vertices).  ``curve``/``curve_params`` describe a curve
    through the points when there is one.
    """

    kind: Kind
    parameters: dict = dc_field(default_factory=dict)
    flats: dict = dc_field(default_factory=dict)
    members: dict = dc_field(default_factory=dict)
    points: dict = dc_field(default_factory=dict)
    curve: RationalCurve | None = None
    curve_params: list | None = None

    def verify(self, cfg: PointConfig) -> bool:
        for name, idx in self.members.items():
            flat = self.flats[name]
            if not all(flat.contains(cfg[i]) for i in idx):
                return False
        if self.curve is not None and self.curve_params is not None:
            if len(self.curve_params) != len(cfg):
                return False
            for prm, pt in zip(self.curve_params, cfg.points):
                if curve_eval(self.curve, prm) != pt:
                    return False
        return True

    def lines(self, prefix: str = "") -> list[tuple[str, Flat, tuple]]:
        return [
            (n, f, tuple(self.members.get(n, ())))
            for n, f in self.flats.items()
            if f.dim == 1 and n.startswith(prefix)
        ]

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind.value,
            "parameters": self.parameters,
            "flats": {n: f.to_json() for n, f in self.flats.items()},
            "members": {n: list(v) for n, v in self.members.items()},
            "points": {n: p.to_json() for n, p in self.points.items()},
        }
        if self.curve is not None:
            doc["curve"] = self.curve.to_json()
            f = self.curve.field
            doc["curve_params"] = [[f.to_json(s), f.to_json(t)] for s, t in (self.curve_params or [])]
        return doc

    @classmethod
    def from_json(cls, doc: dict, field: Field = QQ) -> "ConstructionRecord":
        curve = RationalCurve.from_json(doc["curve"]) if "curve" in doc else None
        params = None
        if "curve_params" in doc:
            params = [(field.from_json(s), field.from_json(t)) for s, t in doc["curve_params"]]
        return cls(
            kind=Kind(doc["kind"]),
            parameters=dict(doc.get("parameters", {})),
            flats={n: Flat([ProjPoint.from_json(p, field) for p in b], field) for n, b in doc.get("flats", {}).items()},
            members={n: tuple(v) for n, v in doc.get("members", {}).items()},
            points={n: ProjPoint.from_json(p, field) for n, p in doc.get("points", {}).items()},
            curve=curve,
            curve_params=params,
        )


def _unit(i: int, n: int = 5) -> list[int]:
    return [1 if k == i else 0 for k in range(n)]


def _combine(a: ProjPoint, la, b: ProjPoint, lb) -> ProjPoint:
    return ProjPoint([la * x + lb * y for x, y in zip(a.coords, b.coords)], a.field)


def _distinct_nonzero(rs: RandomSource, field: Field, n: int) -> list:
    out: list = []
    while len(out) < n:
        x = rs.nonzero(field)
        if x not in out:
            out.append(x)
    return out


# -- the ten explicit points -------------------------------------------------


def example_3_2() -> tuple[PointConfig, ConstructionRecord]:
    """Five coordinate points and the five points ``O - e_i``, on lines through O."""
    first = [_unit(i) for i in range(5)]
    second = [[0 if k == 4 - i else 1 for k in range(5)] for i in range(5)]
    cfg = PointConfig(first + second)
    o = ProjPoint([1] * 5)
    rec = ConstructionRecord(Kind.EXAMPLE_3_2, parameters={}, points={"O": o})
    for i in range(5):
        j = 9 - i
        name = f"line_{i + 1}"
        rec.flats[name] = span([cfg[i], cfg[j]])
        rec.members[name] = (i, j)
    return cfg, rec


# -- concurrent lines --------------------------------------------------------


def concurrent_lines(
    distribution: Sequence[int],
    rs: RandomSource,
    cut_by_quadric: bool = False,
    field: Field = QQ,
    tries: int = DEFAULT_TRIES,
) -> tuple[PointConfig, ConstructionRecord]:
    """Points on five concurrent lines through a sampled point O.

    Every four of the lines span P^4 (so no three are coplanar).  With
    ``cut_by_quadric`` the last point is not sampled: it is the residual
    intersection, with the last line, of a general quadric through the other
    points, so that the configuration is a quadric section of the union of the
    lines.
    """
    dist = list(distribution)
    if len(dist) != 5:
        raise PreconditionError("concurrent_lines uses exactly five lines")
    if any(c < 1 for c in dist):
        raise PreconditionError("every line needs at least one point")
    if cut_by_quadric and (sum(dist) != 10 or dist[4] < 2):
        raise PreconditionError("a quadric section needs ten points with at least two on the last line")
    for _ in range(tries):
        o = random_point(rs, 4, field)
        dirs = [random_point(rs, 4, field) for _ in range(5)]
        if not all(
            rank(Matrix([o.coords] + [dirs[i].coords for i in four], field)) == 5 for four in combinations(range(5), 4)
        ):
            continue
        pts: list[ProjPoint] = []
        members: dict[str, list[int]] = {}
        for li, count in enumerate(dist):
            n_here = count - 1 if (cut_by_quadric and li == 4) else count
            for lam in _distinct_nonzero(rs, field, n_here):
                members.setdefault(f"line_{li + 1}", []).append(len(pts))
                pts.append(_combine(o, lam, dirs[li], field.one))
        if len(set(pts)) != len(pts):
            continue
        if cut_by_quadric:
            extra = _residual_on_line(PointConfig(pts, field), o, dirs[4], pts[members["line_5"][0]], rs)
            if extra is None or extra in pts or extra == o:
                continue
            members["line_5"].append(len(pts))
            pts.append(extra)
        cfg = PointConfig(pts, field)
        rec = ConstructionRecord(
            Kind.CONCURRENT_LINES,
            parameters={"distribution": dist, "cut_by_quadric": cut_by_quadric, "seed": rs.seed},
            points={"O": o},
        )
        for li in range(5):
            name = f"line_{li + 1}"
            rec.flats[name] = span([o, dirs[li]])
            rec.members[name] = tuple(members[name])
        if rec.verify(cfg):
            return cfg, rec
    raise GenericityError("concurrent_lines: resampling budget exhausted")


def _residual_on_line(w: PointConfig, o: ProjPoint, d: ProjPoint, known: ProjPoint, rs: RandomSource):
    """Second intersection point of a random quadric through ``w`` with the line ``o d``."""
    space = ideal_slice(w, 2)
    lam = _line_param(known, o, d)
    if lam is None:
        return None
    for _ in range(10):
        q = space.random_member(rs)
        c0, c1, _c2 = q.restrict_to_line(o, d)  # binary form in (s:t), point s*o + t*d
        if c0 == 0 and c1 == 0:
            continue
        # q|line = (s - lam t)(c0 s + e t)
        e = c1 + lam * c0
        if c0 == 0:
            return None  # residual point would be O itself
        return _combine(o, -e, d, c0)
    return None


def _line_param(pt: ProjPoint, o: ProjPoint, d: ProjPoint):
    """``lam`` with ``pt ~ lam o + d``, or ``None`` when ``pt`` is ``o``."""
    m = Matrix([o.coords, d.coords], pt.field).transpose()
    sol = solve(m, pt.coords)
    if sol is None:
        raise PreconditionError("point not on the line")
    s, t = sol
    if t == 0:
        return None
    return s / t


# -- hypergrids --------------------------------------------------------------


def hypergrid(b: int, d: int, rs: RandomSource, field: Field = QQ, tries: int = DEFAULT_TRIES):
    """Segre image of d points of P^1 times b points of P^2, projected to P^4.

    Points are ordered plane-major: index ``i * b + j`` lies on plane ``i+1``
    and line ``j+1``.
    """
    if b < 1 or d < 1:
        raise PreconditionError("hypergrid needs b, d >= 1")
    for _ in range(tries):
        dpts = _distinct_points(rs, 1, d, field)
        bpts = _distinct_points(rs, 2, b, field)
        z5 = PointConfig([segre_p1xp2(a, c) for a in dpts for c in bpts], field)
        center = random_point(rs, 5, field)
        if center in z5.points:
            continue
        proj = project(z5, center)
        if proj.collided:
            continue
        cfg = proj.image
        ends = [ProjPoint([1, 0], field), ProjPoint([0, 1], field)]
        axes = [ProjPoint(_unit(k, 3), field) for k in range(3)]
        try:
            lines = [span([_proj(segre_p1xp2(e, c), center) for e in ends]) for c in bpts]
            planes = [span([_proj(segre_p1xp2(a, e), center) for e in axes]) for a in dpts]
        except PreconditionError:
            continue
        if any(ln.dim != 1 for ln in lines) or any(pl.dim != 2 for pl in planes):
            continue
        rec = ConstructionRecord(Kind.HYPERGRID, parameters={"b": b, "d": d, "seed": rs.seed}, points={"center": center})
        for j, ln in enumerate(lines):
            rec.flats[f"line_{j + 1}"] = ln
            rec.members[f"line_{j + 1}"] = tuple(i * b + j for i in range(d))
        for i, pl in enumerate(planes):
            rec.flats[f"plane_{i + 1}"] = pl
            rec.members[f"plane_{i + 1}"] = tuple(i * b + j for j in range(b))
        if rec.verify(cfg) and hypergrid_incidences_hold(cfg, lines, planes):
            return cfg, rec
    raise GenericityError("hypergrid: resampling budget exhausted")


def _proj(x: ProjPoint, center: ProjPoint) -> ProjPoint:
    return project_point(x, center)


def _distinct_points(rs: RandomSource, n: int, count: int, field: Field) -> list[ProjPoint]:
    out: list[ProjPoint] = []
    while len(out) < count:
        p = random_point(rs, n, field)
        if p not in out:
            out.append(p)
    return out


def hypergrid_incidences_hold(cfg: PointConfig, lines: Sequence[Flat], planes: Sequence[Flat]) -> bool:
    """Skew lines, pairwise spanning planes, each line meeting each plane once,
    and the meeting points being exactly the configuration."""
    for a, c in combinations(lines, 2):
        if common_point([a, c]).dim != -1:
            return False
    for a, c in combinations(planes, 2):
        if span([a, c]).dim != 4:
            return False
    meets = set()
    for ln in lines:
        for pl in planes:
            x = common_point([ln, pl])
            if x.point is None:
                return False
            meets.add(x.point)
    return len(meets) == len(lines) * len(planes) == len(cfg) and meets == set(cfg.points)


# -- grid extension ----------------------------------------------------------


def _grid_point(u: ProjPoint, v: ProjPoint, field: Field) -> ProjPoint:
    """Point of the quadric x0 x3 = x1 x2 in {x4 = 0} on rulings ``u`` and ``v``."""
    return ProjPoint([u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1], field.zero], field)


def grid_extension(d: int, rs: RandomSource, field: Field = QQ, tries: int = DEFAULT_TRIES, extra: int = 0):
    """A (d,d)-grid on a quadric in a hyperplane plus two collinear d-sets.

    Point order: grid points ``P_ij`` (row-major, ``i`` indexes the lines
    L_i), then X_1 on L, then X_2 on L'.  With ``extra = k`` there follow k
    more collinear d-sets, each cut on a further general line N_k of the
    plane <P_0, L_1> by the lines P_1j P_0, giving b = d + 2 + k.
    """
    if d < 3:
        raise PreconditionError("grid_extension needs d >= 3")
    if extra < 0:
        raise PreconditionError("extra must be nonnegative")
    for _ in range(tries):
        us = _distinct_points(rs, 1, d, field)
        vs = _distinct_points(rs, 1, d, field)
        grid = [[_grid_point(u, v, field) for v in vs] for u in us]
        p0 = random_point(rs, 4, field)
        if p0[4] == 0:
            continue
        plane_l = span([grid[0][0], grid[0][1], p0])
        plane_m = span([grid[0][0], grid[1][0], p0])
        line_l = _general_line_in(plane_l, rs)
        line_m = _general_line_in(plane_m, rs)
        x1 = [common_point([line_l, span([grid[0][j], p0])]).point for j in range(d)]
        x2 = [common_point([line_m, span([grid[j][0], p0])]).point for j in range(d)]
        extra_lines = [_general_line_in(plane_l, rs) for _ in range(extra)]
        xs = [[common_point([ln, span([grid[0][j], p0])]).point for j in range(d)] for ln in extra_lines]
        if any(x is None for x in x1 + x2 + [y for row in xs for y in row]):
            continue
        pts = [p for row in grid for p in row] + x1 + x2 + [y for row in xs for y in row]
        if len(set(pts)) != len(pts):
            continue
        m = random_invertible(rs, 5, field)
        pts_t = [ProjPoint(m @ p.coords, field) for p in pts]
        cfg = PointConfig(pts_t, field)
        tr = lambda f: Flat([ProjPoint(m @ q.coords, field) for q in f.basis], field)  # noqa: E731
        rec = ConstructionRecord(Kind.GRID_EXTENSION, parameters={"d": d, "b": d + 2 + extra, "extra": extra, "seed": rs.seed})
        rec.points["P_0"] = ProjPoint(m @ p0.coords, field)
        for i in range(d):
            rec.flats[f"L_{i + 1}"] = tr(span(grid[i][:2]))
            rec.members[f"L_{i + 1}"] = tuple(i * d + j for j in range(d))
        for j in range(d):
            rec.flats[f"M_{j + 1}"] = tr(span([grid[0][j], grid[1][j]]))
            rec.members[f"M_{j + 1}"] = tuple(i * d + j for i in range(d))
        rec.flats["L"] = tr(line_l)
        rec.members["L"] = tuple(d * d + j for j in range(d))
        rec.flats["L'"] = tr(line_m)
        rec.members["L'"] = tuple(d * d + d + j for j in range(d))
        for k, ln in enumerate(extra_lines):
            base = d * d + 2 * d + k * d
            rec.flats[f"N_{k + 1}"] = tr(ln)
            rec.members[f"N_{k + 1}"] = tuple(base + j for j in range(d))
        rec.flats["H"] = tr(span([ProjPoint(_unit(k), field) for k in range(4)]))
        rec.members["H"] = tuple(range(d * d))
        if rec.verify(cfg) and span_dim(cfg.points) == 4:
            return cfg, rec
    raise GenericityError("grid_extension: resampling budget exhausted")


def _general_line_in(plane: Flat, rs: RandomSource) -> Flat:
    while True:
        a = _random_in(plane, rs)
        b = _random_in(plane, rs)
        if a != b:
            return span([a, b])


def _random_in(flat: Flat, rs: RandomSource) -> ProjPoint:
    f = flat.field
    while True:
        c = rs.sample(f, len(flat.basis))
        v = [sum((ci * p[k] for ci, p in zip(c, flat.basis)), f.zero) for k in range(flat.ambient_dim + 1)]
        if any(x != 0 for x in v):
            return ProjPoint(v, f)


# -- rational normal curve ---------------------------------------------------


def rnc_points(params: Sequence, rs: RandomSource, field: Field = QQ):
    """Points of a rational normal quartic at the given parameters."""
    params = [tuple(field(x) for x in p) for p in params]
    if not params_distinct(params, field):
        raise PreconditionError("parameters must be pairwise distinct")
    m = random_invertible(rs, 5, field)
    curve = standard_rnc(4, field).compose(m)
    cfg = PointConfig([curve_eval(curve, p) for p in params], field)
    rec = ConstructionRecord(
        Kind.RNC_POINTS,
        parameters={"count": len(params), "seed": rs.seed},
        curve=curve,
        curve_params=list(params),
    )
    return cfg, rec, curve


def rational_curve_points(b: int, params: Sequence, rs: RandomSource, field: Field = QQ, tries: int = DEFAULT_TRIES):
    """Points at the given parameters of a random rational curve of degree b in P^4.

    The curve is a random linear projection of the rational normal curve of
    degree b; it is resampled until it spans P^4 and has no base point.
    """
    if b < 4:
        raise PreconditionError("a nondegenerate rational curve in P^4 has degree >= 4")
    params = [tuple(field(x) for x in p) for p in params]
    if not params_distinct(params, field):
        raise PreconditionError("parameters must be pairwise distinct")
    for _ in range(tries):
        m = Matrix([rs.sample(field, b + 1) for _ in range(5)], field)
        if rank(m) != 5:
            continue
        try:
            curve = standard_rnc(b, field).compose(m)
        except PreconditionError:
            continue
        pts = [curve_eval(curve, p) for p in params]
        if len(set(pts)) != len(pts):
            continue
        cfg = PointConfig(pts, field)
        rec = ConstructionRecord(
            Kind.RATIONAL_CURVE,
            parameters={"b": b, "count": len(params), "seed": rs.seed},
            curve=curve,
            curve_params=list(params),
        )
        return cfg, rec, curve
    raise GenericityError("rational_curve_points: resampling budget exhausted")


def default_params(n: int, field: Field = QQ) -> list[tuple]:
    """``(1 : k)`` for ``k = 0..n-2`` and ``(0 : 1)``."""
    if n < 1:
        raise PreconditionError("need at least one parameter")
    return [(field.one, field(k)) for k in range(n - 1)] + [(field.zero, field.one)]


def random_params(n: int, rs: RandomSource, field: Field = QQ) -> list[tuple]:
    out: list[tuple] = []
    seen = set()
    while len(out) < n:
        t = rs.sample(field, 1)[0]
        if t not in seen:
            seen.add(t)
            out.append((field.one, t))
    return out


# -- trivial configurations of planes and lines -------------------------------


def trivial_planes_lines(b: int, d: int, rs: RandomSource, field: Field = QQ, tries: int = DEFAULT_TRIES):
    """A nondegenerate trivial configuration cut by d planes on a curve of degree b.

    The planes ``pi_i`` join a vertex P to lines of one ruling of a quadric in
    a hyperplane.  The curve is ``b - 1`` general lines in the plane ``Pi_1``
    joining P to a line of the other ruling (a reducible plane curve of degree
    ``b - 1``) plus a general line ``L`` in a second such plane.
    """
    if b < 3 or d < 2:
        raise PreconditionError("trivial_planes_lines needs b >= 3 and d >= 2")
    for _ in range(tries):
        us = _distinct_points(rs, 1, d, field)
        v1, v2 = _distinct_points(rs, 1, 2, field)
        vertex = ProjPoint(_unit(4), field)
        pis = [span([_grid_point(u, v1, field), _grid_point(u, v2, field), vertex]) for u in us]
        big = span([_grid_point(us[0], v1, field), _grid_point(us[1], v1, field), vertex])
        other = span([_grid_point(us[0], v2, field), _grid_point(us[1], v2, field), vertex])
        curve_lines = [_general_line_in(big, rs) for _ in range(b - 1)] + [_general_line_in(other, rs)]
        pts = []
        ok = True
        for ln in curve_lines:
            for pl in pis:
                x = common_point([ln, pl])
                if x.point is None:
                    ok = False
                    break
                pts.append(x.point)
            if not ok:
                break
        if not ok or len(set(pts)) != len(pts):
            continue
        m = random_invertible(rs, 5, field)
        cfg = PointConfig([ProjPoint(m @ p.coords, field) for p in pts], field)
        if span_dim(cfg.points) != 4:
            continue
        tr = lambda f: Flat([ProjPoint(m @ q.coords, field) for q in f.basis], field)  # noqa: E731
        rec = ConstructionRecord(Kind.TRIVIAL_PLANES_LINES, parameters={"b": b, "d": d, "seed": rs.seed})
        rec.points["P"] = ProjPoint(m @ vertex.coords, field)
        for i, pl in enumerate(pis):
            rec.flats[f"pi_{i + 1}"] = tr(pl)
            rec.members[f"pi_{i + 1}"] = tuple(k * d + i for k in range(b))
        rec.flats["Pi_1"] = tr(big)
        rec.members["Pi_1"] = tuple(range((b - 1) * d))
        rec.flats["Pi_2"] = tr(other)
        rec.members["Pi_2"] = tuple(range((b - 1) * d, b * d))
        for k, ln in enumerate(curve_lines):
            name = f"B_{k + 1}" if k < b - 1 else "L"
            rec.flats[name] = tr(ln)
            rec.members[name] = tuple(k * d + i for i in range(d))
        if rec.verify(cfg):
            return cfg, rec
    raise GenericityError("trivial_planes_lines: resampling budget exhausted")


# -- liaison over a prime field ----------------------------------------------


def liaison_ff(p: int = LIAISON_PRIME, rs: RandomSource | None = None, tries: int = 400):
    """Residual of six points of a hyperplane in the base locus of four quadrics.

    Six points ``W`` are sampled in the hyperplane {x4 = 0} of P^4(F_p) in
    general position there, together with five further rational points ``X``.
    The four quadrics through ``W`` and ``X`` are intersected by exhaustive
    enumeration; when the base locus consists of exactly 16 rational points,
    the ten points off ``W`` are returned.  Otherwise the attempt is repeated.
    Returns ``(None, record)`` with status ``ORACLE_INCOMPLETE`` when every
    attempt fails.
    """
    from .oracle import enumerate_space, variety_points

    rs = rs or RandomSource(0)
    field = PrimeField(p)
    space = enumerate_space(p, 4)
    rec = ConstructionRecord(Kind.LIAISON_FF, parameters={"p": p, "seed": rs.seed, "status": "ORACLE_INCOMPLETE"})
    for attempt in range(tries):
        w = _general_points_in_hyperplane(rs, field, 6)
        if w is None:
            continue
        extra = []
        while len(extra) < 5:
            x = random_point(rs, 4, field)
            if x[4] != 0 and x not in extra:
                extra.append(x)
        wx = PointConfig(w + extra, field)
        quads = ideal_slice(wx, 2)
        if quads.dim != 4:
            continue
        locus = variety_points(space, quads.forms())
        if len(locus) != 16:
            continue
        wset = set(w)
        residual = [q for q in locus.points if q not in wset]
        if len(residual) != 10:
            continue
        cfg = PointConfig(residual, field)
        rec.parameters.update(status="COMPLETE", attempts=attempt + 1, intersection_size=16)
        rec.points.update({f"W_{k + 1}": q for k, q in enumerate(w)})
        rec.flats["H"] = span([ProjPoint(_unit(k), field) for k in range(4)])
        return cfg, rec
    rec.parameters["attempts"] = tries
    return None, rec


def _general_points_in_hyperplane(rs: RandomSource, field: PrimeField, n: int):
    """``n`` points of {x4 = 0} with every four spanning that hyperplane."""
    for _ in range(20):
        pts: list[ProjPoint] = []
        while len(pts) < n:
            v = rs.sample(field, 4)
            if any(x != 0 for x in v):
                q = ProjPoint(list(v) + [field.zero], field)
                if q not in pts:
                    pts.append(q)
        if all(
            det(Matrix([pts[i].coords[:4] for i in four], field)) != 0 for four in combinations(range(n), 4)
        ):
            return pts
    return None


def build(kind: str, params: dict, rs: RandomSource):
    """Dispatch by kind name; returns ``(cfg, record)``."""
    kind = kind.lower()
    if kind == "example_3_2":
        return example_3_2()
    if kind == "concurrent_lines":
        return concurrent_lines(params.get("distribution", [2, 2, 2, 2, 2]), rs, bool(params.get("cut_by_quadric", False)))
    if kind == "hypergrid":
        return hypergrid(int(params.get("b", 3)), int(params.get("d", 2)), rs)
    if kind == "grid_extension":
        return grid_extension(int(params.get("d", 3)), rs, extra=int(params.get("extra", 0)))
    if kind == "rational_curve":
        b = int(params.get("b", 5))
        prm = [tuple(QQ(x) for x in p) for p in params["params"]] if "params" in params else default_params(int(params.get("count", 2 * b)))
        cfg, rec, _ = rational_curve_points(b, prm, rs)
        return cfg, rec
    if kind == "rnc_points":
        if "params" in params:
            prm = [tuple(QQ(x) for x in p) for p in params["params"]]
        else:
            prm = default_params(int(params.get("count", 10)))
        cfg, rec, _ = rnc_points(prm, rs)
        return cfg, rec
    if kind == "trivial_planes_lines":
        return trivial_planes_lines(int(params.get("b", 3)), int(params.get("d", 2)), rs)
    if kind == "liaison_ff":
        return liaison_ff(int(params.get("p", LIAISON_PRIME)), rs)
    raise PreconditionError(f"unknown construction kind {kind!r}")


def random_lgp(n: int, rs: RandomSource, field: Field = QQ, tries: int = DEFAULT_TRIES) -> PointConfig:
    """``n`` random points of P^4 in linear general position."""
    for _ in range(tries):
        pts = _distinct_points(rs, 4, n, field)
        cfg = PointConfig(pts, field)
        if lgp_violation(cfg) is None:
            return cfg
    raise GenericityError("random_lgp: resampling budget exhausted")
