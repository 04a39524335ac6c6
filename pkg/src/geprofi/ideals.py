"""Degree slices of vanishing ideals of finite point sets.

Everything is computed from evaluation matrices: row ``i`` of the degree-d
matrix lists the degree-d monomials evaluated at point ``i``.  Forms are
coefficient vectors over a :class:`MonomialBasis` whose order is graded
lexicographic with ``x_0 > x_1 > ... > x_N``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .errors import PreconditionError
from .exactlin import Matrix, det, nullspace, rank, rref, solve
from .field import QQ, Field, PrimeField, RandomSource, parse_field
from .projgeom import PointConfig, ProjPoint, as_point, binary_mul, lgp_violation


@lru_cache(maxsize=None)
def _exponents(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return tuple(out)


class MonomialBasis:
    """Degree-d monomials in ``num_vars`` variables, graded-lex ordered."""

    __slots__ = ("num_vars", "degree", "exponents", "_index")

    def __init__(self, num_vars: int, degree: int):
        if num_vars < 1 or degree < 0:
            raise PreconditionError("monomial basis needs num_vars >= 1 and degree >= 0")
        self.num_vars = num_vars
        self.degree = degree
        self.exponents = _exponents(num_vars, degree)
        self._index = {e: i for i, e in enumerate(self.exponents)}

    def __len__(self):
        return len(self.exponents)

    def index(self, e: Sequence[int]) -> int:
        return self._index[tuple(e)]

    def __eq__(self, other):
        return isinstance(other, MonomialBasis) and (self.num_vars, self.degree) == (other.num_vars, other.degree)

    def __hash__(self):
        return hash((self.num_vars, self.degree))

    def __repr__(self):
        return f"MonomialBasis({self.num_vars} vars, degree {self.degree})"

    def values(self, pt: Sequence) -> list:
        """All monomials evaluated at a coordinate vector."""
        pows = [[1] * (self.degree + 1) for _ in range(self.num_vars)]
        for v, x in enumerate(pt):
            acc = pows[v]
            for k in range(1, self.degree + 1):
                acc[k] = acc[k - 1] * x
        out = []
        for e in self.exponents:
            val = 1
            for v, k in enumerate(e):
                if k:
                    val = val * pows[v][k]
            out.append(val)
        return out


def basis(num_vars: int, degree: int) -> MonomialBasis:
    return MonomialBasis(num_vars, degree)


class Form:
    """A homogeneous polynomial as a coefficient vector over a monomial basis."""

    __slots__ = ("basis", "coeffs", "field")

    def __init__(self, basis: MonomialBasis, coeffs: Sequence, field: Field = QQ):
        if len(coeffs) != len(basis):
            raise PreconditionError("coefficient vector does not match the monomial basis")
        self.basis = basis
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)

    @classmethod
    def from_dict(cls, num_vars: int, degree: int, terms: dict, field: Field = QQ) -> "Form":
        b = MonomialBasis(num_vars, degree)
        v = [field.zero] * len(b)
        for e, c in terms.items():
            v[b.index(e)] += field(c)
        return cls(b, v, field)

    @classmethod
    def linear(cls, coeffs: Sequence, field: Field = QQ) -> "Form":
        return cls(MonomialBasis(len(coeffs), 1), coeffs, field)

    @property
    def degree(self) -> int:
        return self.basis.degree

    @property
    def num_vars(self) -> int:
        return self.basis.num_vars

    def terms(self) -> dict:
        return {e: c for e, c in zip(self.basis.exponents, self.coeffs) if c != 0}

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, pt) -> object:
        coords = pt.coords if isinstance(pt, ProjPoint) else pt
        vals = self.basis.values(coords)
        return sum((c * v for c, v in zip(self.coeffs, vals) if c != 0), self.field.zero)

    evaluate = __call__

    def __eq__(self, other):
        return isinstance(other, Form) and self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Form(degree {self.degree}, {len(self.terms())} terms)"

    def __add__(self, other: "Form") -> "Form":
        if self.basis != other.basis:
            raise PreconditionError("adding forms of different shape")
        return Form(self.basis, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.field)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, c) -> "Form":
        c = self.field(c)
        return Form(self.basis, [c * a for a in self.coeffs], self.field)

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        if other.num_vars != self.num_vars:
            raise PreconditionError("multiplying forms in different rings")
        out: dict = {}
        for e1, c1 in self.terms().items():
            for e2, c2 in other.terms().items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, self.field.zero) + c1 * c2
        return Form.from_dict(self.num_vars, self.degree + other.degree, out, self.field)

    def partial(self, i: int) -> "Form":
        if self.degree == 0:
            return Form(self.basis, [self.field.zero], self.field)
        out: dict = {}
        for e, c in self.terms().items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = out.get(tuple(e2), self.field.zero) + c * e[i]
        return Form.from_dict(self.num_vars, self.degree - 1, out, self.field)

    def gradient(self, pt) -> list:
        return [self.partial(i)(pt) for i in range(self.num_vars)]

    def normalized(self) -> "Form":
        """Scalar multiple whose first nonzero coefficient is 1."""
        lead = next((c for c in self.coeffs if c != 0), None)
        if lead is None or lead == 1:
            return self
        return self.scale(self.field.inverse(lead))

    def substitute(self, linear_forms: Sequence[Sequence]) -> "Form":
        """``F(l_0, ..., l_N)`` where each ``l_i`` is a coefficient vector over new variables."""
        if len(linear_forms) != self.num_vars:
            raise PreconditionError("one linear form per variable is required")
        m = len(linear_forms[0])
        polys = [{tuple(1 if k == j else 0 for k in range(m)): self.field(c) for j, c in enumerate(l) if c != 0} for l in linear_forms]
        total = _poly_compose(self.terms(), polys, tuple([0] * m), self.field, _dict_mul)
        return Form.from_dict(m, self.degree, total, self.field)

    def pullback(self, binary_forms: Sequence[Sequence]) -> list:
        """``F(phi_0, ..., phi_N)`` for binary forms ``phi_i`` of a common degree n.

        The result is a binary form of degree ``n * deg F`` as coefficient list.
        """
        if len(binary_forms) != self.num_vars:
            raise PreconditionError("one binary form per variable is required")
        f = self.field
        phis = [[f(c) for c in phi] for phi in binary_forms]
        n = len(phis[0]) - 1
        out = [f.zero] * (n * self.degree + 1)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = [f.one] if k == 0 else binary_mul(power(i, k - 1), phis[i])
            return cache[key]

        for e, c in self.terms().items():
            prod = [c]
            for i, k in enumerate(e):
                if k:
                    prod = binary_mul(prod, power(i, k))
            for j, x in enumerate(prod):
                out[j] += x
        return out

    def restrict_to_line(self, a, b) -> list:
        """Binary form ``F(s a + t b)``."""
        a = a.coords if isinstance(a, ProjPoint) else a
        b = b.coords if isinstance(b, ProjPoint) else b
        return self.pullback([[x, y] for x, y in zip(a, b)])

    def symmetric_matrix(self) -> Matrix:
        """Gram matrix ``S`` with ``F(x) = x^T S x`` (quadrics, char != 2)."""
        if self.degree != 2:
            raise PreconditionError("symmetric matrix is defined for quadrics only")
        n = self.num_vars
        f = self.field
        half = f.inverse(f(2))
        s = [[f.zero] * n for _ in range(n)]
        for e, c in self.terms().items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                s[i][i] += c
            else:
                s[i][j] += c * half
                s[j][i] += c * half
        return Matrix(s, f)

    def to_json(self) -> dict:
        return {
            "field": self.field.tag(),
            "num_vars": self.num_vars,
            "degree": self.degree,
            "coeffs": [self.field.to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Form":
        field = parse_field(doc.get("field", "Q"))
        b = MonomialBasis(int(doc["num_vars"]), int(doc["degree"]))
        return cls(b, [field.from_json(c) for c in doc["coeffs"]], field)


def _dict_mul(p: dict, q: dict, field) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, field.zero) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _poly_compose(terms: dict, polys: list, unit_exp, field, mul) -> dict:
    cache: dict = {}

    def power(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = {unit_exp: field.one} if k == 0 else mul(power(i, k - 1), polys[i], field)
        return cache[(i, k)]

    total: dict = {}
    for e, c in terms.items():
        prod = {unit_exp: c}
        for i, k in enumerate(e):
            if k:
                prod = mul(prod, power(i, k), field)
        for ee, cc in prod.items():
            total[ee] = total.get(ee, field.zero) + cc
    return total


class FormSpace:
    """A subspace of degree-d forms, stored as an echelonized basis."""

    __slots__ = ("basis", "vectors", "field")

    def __init__(self, basis: MonomialBasis, vectors: Sequence[Sequence], field: Field = QQ):
        self.basis = basis
        self.field = field
        if vectors:
            red, _ = rref(Matrix(vectors, field))
            self.vectors = tuple(tuple(r) for r in red.tolist())
        else:
            self.vectors = ()

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return self.dim

    def forms(self) -> list[Form]:
        return [Form(self.basis, v, self.field) for v in self.vectors]

    def contains(self, form: Form) -> bool:
        if form.basis != self.basis:
            return False
        if not self.vectors:
            return form.is_zero()
        m = Matrix([*self.vectors, form.coeffs], self.field)
        return rank(m) == self.dim

    def combination(self, coeffs: Sequence) -> Form:
        f = self.field
        v = [f.zero] * len(self.basis)
        for c, vec in zip(coeffs, self.vectors):
            c = f(c)
            if c:
                v = [a + c * b for a, b in zip(v, vec)]
        return Form(self.basis, v, f)

    def random_member(self, rs: RandomSource) -> Form:
        if not self.vectors:
            raise PreconditionError("empty form space")
        while True:
            form = self.combination(rs.sample(self.field, self.dim))
            if not form.is_zero():
                return form

    def __eq__(self, other):
        return isinstance(other, FormSpace) and self.basis == other.basis and self.vectors == other.vectors

    def __repr__(self):
        return f"FormSpace(dim {self.dim} in degree {self.basis.degree})"

    def to_json(self) -> dict:
        return {
            "field": self.field.tag(),
            "num_vars": self.basis.num_vars,
            "degree": self.basis.degree,
            "exponents": [list(e) for e in self.basis.exponents],
            "vectors": [[self.field.to_json(c) for c in v] for v in self.vectors],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "FormSpace":
        field = parse_field(doc.get("field", "Q"))
        b = MonomialBasis(int(doc["num_vars"]), int(doc["degree"]))
        if "exponents" in doc and [tuple(e) for e in doc["exponents"]] != list(b.exponents):
            raise PreconditionError("monomial order in document differs from graded-lex order")
        return cls(b, [[field.from_json(c) for c in v] for v in doc["vectors"]], field)


@dataclass(frozen=True)
class HilbertProfile:
    sizes: tuple[int, ...]
    h_vector: tuple[int, ...]

    @property
    def regularity_index(self) -> int:
        return len(self.sizes) - 1

    def value(self, d: int) -> int:
        return self.sizes[min(d, len(self.sizes) - 1)]

    def is_symmetric(self) -> bool:
        """Necessary condition for the points to be arithmetically Gorenstein."""
        return self.h_vector == tuple(reversed(self.h_vector))

    def to_json(self) -> dict:
        return {"hilbert_function": list(self.sizes), "h_vector": list(self.h_vector)}


def eval_matrix(cfg: PointConfig, d: int) -> Matrix:
    if d < 0:
        raise PreconditionError("degree must be nonnegative")
    b = MonomialBasis(cfg.ambient_dim + 1, d)
    return Matrix([b.values(p.coords) for p in cfg.points], cfg.field, cols=len(b))


def hilbert_value(cfg: PointConfig, d: int) -> int:
    return rank(eval_matrix(cfg, d))


def hilbert(cfg: PointConfig) -> HilbertProfile:
    if len(cfg) == 0:
        raise PreconditionError("Hilbert function of an empty configuration")
    sizes = []
    d = 0
    while True:
        h = hilbert_value(cfg, d)
        sizes.append(h)
        if h == len(cfg):
            break
        d += 1
    hv = [sizes[0]] + [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))]
    return HilbertProfile(tuple(sizes), tuple(hv))


def ideal_slice(cfg: PointConfig, d: int) -> FormSpace:
    m = eval_matrix(cfg, d)
    b = MonomialBasis(cfg.ambient_dim + 1, d)
    if m.rows == 0:
        return FormSpace(b, Matrix.identity(len(b), cfg.field).tolist(), cfg.field)
    return FormSpace(b, nullspace(m), cfg.field)


def partial_rows(b: MonomialBasis, vertex: Sequence, field: Field) -> list[list]:
    """Row ``i``: each monomial's x_i-derivative evaluated at ``vertex``."""
    lower = MonomialBasis(b.num_vars, b.degree - 1)
    lv = lower.values(vertex)
    rows = []
    for i in range(b.num_vars):
        row = []
        for e in b.exponents:
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                row.append(field(e[i]) * lv[lower.index(e2)])
            else:
                row.append(field.zero)
        rows.append(row)
    return rows


def _check_char(field: Field, d: int) -> None:
    if isinstance(field, PrimeField) and d % field.p == 0:
        raise PreconditionError(f"characteristic {field.p} divides the degree {d}")


def singular_slice(cfg: PointConfig, vertex, d: int) -> FormSpace:
    """Degree-d forms through ``cfg`` that are singular at ``vertex``."""
    if d < 2:
        raise PreconditionError("singular_slice needs degree >= 2")
    _check_char(cfg.field, d)
    vertex = as_point(vertex, cfg.field)
    if vertex.ambient_dim != cfg.ambient_dim:
        raise PreconditionError("vertex lies in a different projective space")
    b = MonomialBasis(cfg.ambient_dim + 1, d)
    rows = [b.values(p.coords) for p in cfg.points] + partial_rows(b, vertex.coords, cfg.field)
    return FormSpace(b, nullspace(Matrix(rows, cfg.field)), cfg.field)


def weddle_excess(cfg: PointConfig, p, d: int) -> int:
    n1 = cfg.ambient_dim + 1
    expected = max(0, ideal_slice(cfg, d).dim - n1)
    return singular_slice(cfg, p, d).dim - expected


def cone_condition_matrix(cfg: PointConfig, q) -> Matrix:
    """Partials at ``q`` of a basis of the quadrics through ``cfg``.

    Square when the quadrics through the points form a space of dimension
    N + 1 (10 general points in P^4).  It is singular iff some quadric
    through the points is singular at ``q``.
    """
    # raw coordinates: rescaling q would rescale the determinant
    coords = q.coords if isinstance(q, ProjPoint) else [cfg.field(x) for x in q]
    space = ideal_slice(cfg, 2)
    b = space.basis
    prow = partial_rows(b, coords, cfg.field)
    return Matrix([[sum((v * r for v, r in zip(vec, row)), cfg.field.zero) for row in prow] for vec in space.vectors], cfg.field, cols=cfg.ambient_dim + 1)


def cone_determinant_on_line(cfg: PointConfig, a, b) -> list:
    """Coefficients (in t, low degree first) of det of the cone condition matrix at a + t b."""
    field = cfg.field
    a = as_point(a, field)
    b = as_point(b, field)
    m0 = cone_condition_matrix(cfg, a)
    if m0.rows != m0.cols:
        raise PreconditionError(f"cone condition matrix is {m0.rows} x {m0.cols}, not square")
    n = m0.rows
    ts = [field(k) for k in range(n + 2)]
    vals = []
    for t in ts:
        pt = [x + t * y for x, y in zip(a.coords, b.coords)]
        if all(x == 0 for x in pt):
            raise PreconditionError("sample line passes through the zero vector")
        vals.append(det(cone_condition_matrix(cfg, pt)))
    vander = Matrix([[t**k for k in range(n + 2)] for t in ts], field)
    return list(solve(vander, vals))


def wlp_cokernel(cfg: PointConfig, p) -> int:
    """Cokernel dimension of multiplication by L on R/(L_1^2, ..., L_q^2), degree 1 -> 2.

    ``L_i`` is the linear form whose coefficients are the coordinates of the
    i-th point, and ``L`` the one given by ``p``.  The quantity is computed on
    the power-ideal side; it agrees with ``dim singular_slice(cfg, p, 2)``.
    """
    field = cfg.field
    if isinstance(field, PrimeField) and field.p == 2:
        raise PreconditionError("characteristic 2 breaks the duality for quadrics")
    n1 = cfg.ambient_dim + 1
    q = len(cfg)
    if q > comb(n1 + 1, 2):
        raise PreconditionError(f"{q} points exceed the dimension of the space of quadrics")
    h2 = hilbert_value(cfg, 2) if q else 0
    if h2 != q:
        raise PreconditionError(f"points impose dependent conditions on quadrics: H(2) = {h2} < {q}")
    p = as_point(p, field)
    ell = Form.linear(p.coords, field)
    gens = []
    for pt in cfg.points:
        li = Form.linear(pt.coords, field)
        gens.append((li * li).coeffs)
    for j in range(n1):
        xj = Form.linear([field.one if k == j else field.zero for k in range(n1)], field)
        gens.append((ell * xj).coeffs)
    return comb(n1 + 1, 2) - rank(Matrix(gens, field))


class CastelnuovoFlag(enum.Enum):
    RNC_FORCED = "RNC_FORCED"
    PENCIL_EXCLUDED = "PENCIL_EXCLUDED"
    NONE = "NONE"


def castelnuovo_flag(cfg: PointConfig) -> CastelnuovoFlag:
    if cfg.ambient_dim != 4:
        raise PreconditionError("castelnuovo_flag is defined for points of P^4")
    bad = lgp_violation(cfg)
    if bad is not None:
        raise PreconditionError(f"configuration is not in linear general position: {list(bad)}")
    if len(cfg) >= 11 and hilbert_value(cfg, 2) <= 9:
        return CastelnuovoFlag.RNC_FORCED
    if len(cfg) >= 9:
        return CastelnuovoFlag.PENCIL_EXCLUDED
    return CastelnuovoFlag.NONE
