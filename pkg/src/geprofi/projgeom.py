"""Projective points, flats, projections, Segre map and rational curves.

Points are stored with canonical representatives (first nonzero coordinate
equal to 1).  Flats are stored by a spanning basis; their dual equations are
derived on demand.  Binary forms of degree ``n`` are coefficient tuples
``(c_0, ..., c_n)`` with ``c_k`` the coefficient of ``s^(n-k) t^k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GenericityError, PreconditionError
from .exactlin import Matrix, det, nullspace, rank, rref
from .field import QQ, Field, PrimeField, RandomSource, field_of, parse_field


class ProjPoint:
    """A point of P^N with canonical homogeneous coordinates."""

    __slots__ = ("coords", "field")

    def __init__(self, coords: Sequence, field: Field | None = None):
        if field is None:
            field = field_of(coords[0]) if coords else QQ
        vals = [field(x) for x in coords]
        lead = next((x for x in vals if x != 0), None)
        if lead is None:
            raise PreconditionError("the zero vector is not a projective point")
        if lead != 1:
            inv = field.inverse(lead)
            vals = [x * inv for x in vals]
        self.coords = tuple(vals)
        self.field = field

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(self.field.to_json(x) if self.field == QQ else str(x.value) for x in self.coords) + ")"

    def to_json(self) -> list:
        return [self.field.to_json(x) for x in self.coords]

    @classmethod
    def from_json(cls, data, field: Field = QQ) -> "ProjPoint":
        return cls([field.from_json(x) for x in data], field)


def as_point(x, field: Field | None = None) -> ProjPoint:
    return x if isinstance(x, ProjPoint) else ProjPoint(x, field)


class PointConfig:
    """An ordered list of pairwise distinct points of P^N."""

    __slots__ = ("ambient_dim", "field", "points")

    def __init__(self, points: Iterable, field: Field | None = None, ambient_dim: int | None = None):
        pts = [as_point(p, field) for p in points]
        if field is None:
            field = pts[0].field if pts else QQ
        if ambient_dim is None:
            if not pts:
                raise PreconditionError("empty configuration needs an explicit ambient dimension")
            ambient_dim = pts[0].ambient_dim
        for p in pts:
            if p.ambient_dim != ambient_dim:
                raise PreconditionError(f"point {p} is not in P^{ambient_dim}")
            if p.field != field:
                raise PreconditionError("points over different fields")
        if len(set(pts)) != len(pts):
            raise PreconditionError("configuration points must be pairwise distinct")
        self.ambient_dim = ambient_dim
        self.field = field
        self.points = tuple(pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, PointConfig) and self.points == other.points and self.ambient_dim == other.ambient_dim

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"PointConfig({len(self)} points in P^{self.ambient_dim})"

    def subset(self, indices: Iterable[int]) -> "PointConfig":
        return PointConfig([self.points[i] for i in indices], self.field, self.ambient_dim)

    def without(self, i: int) -> "PointConfig":
        return self.subset(j for j in range(len(self)) if j != i)

    def matrix(self) -> Matrix:
        return Matrix([p.coords for p in self.points], self.field, cols=self.ambient_dim + 1)

    def index(self, pt: ProjPoint) -> int:
        return self.points.index(pt)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "field": self.field.tag(),
            "points": [p.to_json() for p in self.points],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PointConfig":
        try:
            field = parse_field(doc.get("field", "Q"))
            n = int(doc["ambient_dim"])
            pts = [ProjPoint.from_json(p, field) for p in doc["points"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"malformed point configuration: {exc}") from exc
        return cls(pts, field, n)


class Flat:
    """A linear subspace of P^N given by linearly independent spanning points."""

    __slots__ = ("ambient_dim", "field", "basis")

    def __init__(self, basis: Sequence, field: Field | None = None, ambient_dim: int | None = None):
        pts = [as_point(p, field) for p in basis]
        if not pts:
            raise PreconditionError("a flat needs at least one spanning point")
        field = pts[0].field
        n = pts[0].ambient_dim if ambient_dim is None else ambient_dim
        if rank(Matrix([p.coords for p in pts], field)) != len(pts):
            raise PreconditionError("flat basis is linearly dependent")
        self.ambient_dim = n
        self.field = field
        self.basis = tuple(pts)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def equations(self) -> list[list]:
        """Linear forms cutting out the flat, in reduced echelon form."""
        return nullspace(Matrix([p.coords for p in self.basis], self.field))

    def contains(self, pt) -> bool:
        pt = as_point(pt, self.field)
        return all(sum((a * b for a, b in zip(eq, pt.coords)), self.field.zero) == 0 for eq in self.equations())

    def __eq__(self, other):
        return isinstance(other, Flat) and self.dim == other.dim and all(other.contains(p) for p in self.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __repr__(self):
        return f"Flat(dim {self.dim} in P^{self.ambient_dim})"

    def to_json(self) -> list:
        return [p.to_json() for p in self.basis]


def span(points: Sequence) -> Flat:
    """Smallest flat containing the given points (or flats)."""
    vecs = []
    for p in points:
        if isinstance(p, Flat):
            vecs.extend(q.coords for q in p.basis)
        else:
            vecs.append(as_point(p).coords)
    if not vecs:
        raise PreconditionError("span of nothing")
    field = field_of(vecs[0][0])
    red, _ = rref(Matrix(vecs, field))
    return Flat(red.tolist(), field)


def span_dim(points: Sequence) -> int:
    pts = [as_point(p) for p in points]
    return rank(Matrix([p.coords for p in pts], pts[0].field)) - 1


@dataclass(frozen=True)
class Intersection:
    """Result of :func:`common_point`; ``dim`` is -1 for an empty intersection."""

    point: ProjPoint | None
    dim: int


def intersect(flats: Sequence[Flat]) -> list[list]:
    """Basis (vectors) of the intersection of the given flats."""
    field = flats[0].field
    eqs = [e for f in flats for e in f.equations()]
    n = flats[0].ambient_dim
    if not eqs:
        return [[field.one if i == j else field.zero for j in range(n + 1)] for i in range(n + 1)]
    return nullspace(Matrix(eqs, field))


def common_point(flats: Sequence[Flat]) -> Intersection:
    if len(flats) < 2:
        raise PreconditionError("common_point needs at least two flats")
    if len({f.ambient_dim for f in flats}) != 1:
        raise PreconditionError("flats live in different ambient spaces")
    basis = intersect(flats)
    if len(basis) == 1:
        return Intersection(ProjPoint(basis[0], flats[0].field), 0)
    return Intersection(None, len(basis) - 1)


def line_meets(line_a: Flat, line_b: Flat) -> bool:
    return span([line_a, line_b]).dim <= 2


# -- projection ----------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    """Image of a configuration under projection from a point.

    ``index_map[i]`` is the position in ``image`` of the image of input point
    ``i``; ``collided`` is true when two inputs share an image point.
    """

    image: PointConfig
    collided: bool
    index_map: tuple[int, ...]
    center: ProjPoint


def center_index(center: ProjPoint) -> int:
    return next(i for i, x in enumerate(center.coords) if x != 0)


def project_coords(x: Sequence, center: ProjPoint) -> list:
    """Raw image vector of ``x`` (possibly zero if ``x`` equals the center)."""
    i = center_index(center)
    xi = x[i]
    return [x[j] - xi * center.coords[j] for j in range(len(x)) if j != i]


def projection_matrix(center: ProjPoint) -> Matrix:
    """N x (N+1) matrix of the projection from ``center`` onto {x_i* = 0}."""
    i = center_index(center)
    f = center.field
    n1 = len(center)
    rows = []
    for j in range(n1):
        if j == i:
            continue
        row = [f.zero] * n1
        row[j] = f.one
        row[i] = -center.coords[j]
        rows.append(row)
    return Matrix(rows, f)


def project_point(x, center: ProjPoint) -> ProjPoint:
    x = as_point(x, center.field)
    v = project_coords(x.coords, center)
    if all(c == 0 for c in v):
        raise PreconditionError("cannot project the center from itself")
    return ProjPoint(v, center.field)


def project(cfg: PointConfig, center) -> Projection:
    center = as_point(center, cfg.field)
    if center.ambient_dim != cfg.ambient_dim:
        raise PreconditionError("center lies in a different projective space")
    if center in cfg.points:
        raise PreconditionError("projection center is a configuration point")
    images: list[ProjPoint] = []
    where: dict[ProjPoint, int] = {}
    index_map = []
    for x in cfg.points:
        y = project_point(x, center)
        if y not in where:
            where[y] = len(images)
            images.append(y)
        index_map.append(where[y])
    image = PointConfig(images, cfg.field, cfg.ambient_dim - 1)
    return Projection(image, len(images) < len(cfg), tuple(index_map), center)


def apply_linear(m: Matrix, cfg: PointConfig) -> PointConfig:
    """Image of a configuration under an injective linear map."""
    return PointConfig([ProjPoint(m @ p.coords, cfg.field) for p in cfg.points], cfg.field, m.rows - 1)


def random_point(rs: RandomSource, n: int, field: Field = QQ) -> ProjPoint:
    while True:
        v = rs.sample(field, n + 1)
        if any(x != 0 for x in v):
            return ProjPoint(v, field)


def random_invertible(rs: RandomSource, n: int, field: Field = QQ, tries: int = 100) -> Matrix:
    for _ in range(tries):
        m = Matrix([rs.sample(field, n) for _ in range(n)], field)
        if det(m) != 0:
            return m
    raise GenericityError("no invertible matrix sampled")


def segre_p1xp2(a, b) -> ProjPoint:
    a = as_point(a)
    b = as_point(b, a.field)
    if len(a) != 2 or len(b) != 3:
        raise PreconditionError("segre_p1xp2 expects a point of P^1 and a point of P^2")
    return ProjPoint([x * y for x in a.coords for y in b.coords], a.field)


def lgp_violation(cfg: PointConfig) -> tuple[int, ...] | None:
    """A minimal dependent subset of size <= N+1, or ``None`` when in LGP."""
    k = min(len(cfg), cfg.ambient_dim + 1)
    rows = [p.coords for p in cfg.points]
    for sub in combinations(range(len(cfg)), k):
        if _dependent([rows[i] for i in sub], cfg.field):
            for size in range(2, k + 1):
                for small in combinations(sub, size):
                    if _dependent([rows[i] for i in small], cfg.field):
                        return small
    return None


def _dependent(rows, field) -> bool:
    m = Matrix(rows, field)
    if m.rows == m.cols:
        return det(m) == 0
    return rank(m) < m.rows


# -- binary forms --------------------------------------------------------------


def binary_mul(f: Sequence, g: Sequence) -> list:
    zero = (f[0] - f[0]) if f else 0
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return out


def binary_linear_factor(param: Sequence) -> list:
    """The linear form ``t_i s - s_i t`` vanishing at ``(s_i : t_i)``."""
    s, t = param
    return [t, -s]


def binary_product(params: Sequence, field: Field = QQ) -> list:
    out = [field.one]
    for prm in params:
        out = binary_mul(out, [field(x) for x in binary_linear_factor(prm)])
    return out


def binary_eval(f: Sequence, param: Sequence):
    s, t = param
    n = len(f) - 1
    return sum((c * s ** (n - k) * t**k for k, c in enumerate(f) if c), s - s)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when ``u`` and ``v`` are nonzero and scalar multiples of each other."""
    if len(u) != len(v):
        return False
    i = next((k for k, x in enumerate(u) if x != 0), None)
    if i is None or v[i] == 0:
        return False
    lam = v[i] / u[i]
    return all(b == a * lam for a, b in zip(u, v))


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return _poly_trim(a)


def binary_common_factor(forms: Sequence[Sequence]) -> bool:
    """Whether binary forms of equal degree share a nonconstant factor."""
    forms = [list(f) for f in forms if any(x != 0 for x in f)]
    if not forms:
        return True
    n = len(forms[0]) - 1
    if n == 0:
        return False
    if all(f[n] == 0 for f in forms):
        return True  # s divides every form
    g = _poly_trim(list(forms[0]))
    for f in forms[1:]:
        h = _poly_trim(list(f))
        a, b = g, h
        while b:
            a, b = b, _poly_mod(a, b)
        g = a
        if len(g) <= 1:
            return False
    return len(g) > 1


class RationalCurve:
    """A parametrized rational curve P^1 -> P^N given by N+1 binary forms."""

    __slots__ = ("ambient_dim", "degree", "forms", "field")

    def __init__(self, forms: Sequence[Sequence], field: Field = QQ):
        fs = tuple(tuple(field(c) for c in f) for f in forms)
        if not fs or len({len(f) for f in fs}) != 1:
            raise PreconditionError("parametrizing forms must share one degree")
        if binary_common_factor(fs):
            raise PreconditionError("parametrizing forms share a common factor")
        self.forms = fs
        self.field = field
        self.ambient_dim = len(fs) - 1
        self.degree = len(fs[0]) - 1

    def vector(self, param: Sequence) -> list:
        s, t = (self.field(x) for x in param)
        return [binary_eval(f, (s, t)) for f in self.forms]

    def compose(self, m: Matrix) -> "RationalCurve":
        """The curve ``m . c`` (apply a linear map to the parametrization)."""
        zero = self.field.zero
        forms = [
            [sum((row[j] * self.forms[j][k] for j in range(len(self.forms))), zero) for k in range(self.degree + 1)]
            for row in (m.row(i) for i in range(m.rows))
        ]
        return RationalCurve(forms, self.field)

    def __eq__(self, other):
        return isinstance(other, RationalCurve) and self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __repr__(self):
        return f"RationalCurve(degree {self.degree} in P^{self.ambient_dim})"

    def to_json(self) -> dict:
        return {"field": self.field.tag(), "forms": [[self.field.to_json(c) for c in f] for f in self.forms]}

    @classmethod
    def from_json(cls, doc: dict) -> "RationalCurve":
        field = parse_field(doc.get("field", "Q"))
        return cls([[field.from_json(c) for c in f] for f in doc["forms"]], field)


def standard_rnc(n: int = 4, field: Field = QQ) -> RationalCurve:
    """The rational normal curve x_k = s^(n-k) t^k."""
    return RationalCurve([[field.one if k == j else field.zero for k in range(n + 1)] for j in range(n + 1)], field)


def curve_eval(c: RationalCurve, param: Sequence) -> ProjPoint:
    s, t = param
    if s == 0 and t == 0:
        raise PreconditionError("(0,0) is not a parameter")
    v = c.vector(param)
    if all(x == 0 for x in v):
        raise PreconditionError(f"parameter {param} is a base point of the parametrization")
    return ProjPoint(v, c.field)


def canonical_param(param: Sequence, field: Field = QQ) -> tuple:
    s, t = (field(x) for x in param)
    if s != 0:
        return (field.one, t / s)
    if t == 0:
        raise PreconditionError("(0,0) is not a parameter")
    return (field.zero, field.one)


def params_distinct(params: Sequence, field: Field = QQ) -> bool:
    canon = [canonical_param(p, field) for p in params]
    return len(set(canon)) == len(canon)


def is_prime_field(field: Field) -> bool:
    return isinstance(field, PrimeField)
