"""Brute-force verification over prime fields.

Projective spaces over F_p are enumerated point by point (in the compiled
kernel when available) and forms are evaluated everywhere.  This gives an
independent check on the exact pipeline: a rational certificate is reduced
modulo a prime and its intersection count recomputed by enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _accel
from .errors import PreconditionError, ReductionError
from .field import PrimeField, RandomSource, is_prime
from .ideals import Form, FormSpace
from .projgeom import PointConfig, ProjPoint

MAX_POINTS = 10**7


def space_size(p: int, n: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


@dataclass(frozen=True)
class EnumeratedSpace:
    """P^dim(F_p).  Points are produced on demand in canonical order."""

    p: int
    dim: int

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def __len__(self):
        return space_size(self.p, self.dim)

    @property
    def points(self) -> list[tuple[int, ...]]:
        return _accel.projective_points(self.p, self.dim)


def enumerate_space(p: int, dim: int) -> EnumeratedSpace:
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if dim < 0:
        raise PreconditionError("dimension must be nonnegative")
    if space_size(p, dim) > MAX_POINTS:
        raise PreconditionError(f"P^{dim}(F_{p}) has more than {MAX_POINTS} points")
    return EnumeratedSpace(p, dim)


def _stack(forms: Sequence[Form], p: int) -> tuple[list, list]:
    """Common exponent list and integer coefficient rows for several forms."""
    exps: list = []
    index: dict = {}
    for f in forms:
        for e in f.basis.exponents:
            if e not in index:
                index[e] = len(exps)
                exps.append(e)
    rows = []
    for f in forms:
        row = [0] * len(exps)
        for e, c in zip(f.basis.exponents, f.coeffs):
            row[index[e]] = _int_mod(c, p)
        rows.append(row)
    return exps, rows


def _int_mod(c, p: int) -> int:
    if hasattr(c, "value"):
        if c.p != p:
            raise PreconditionError(f"coefficient over F_{c.p} used with p = {p}")
        return c.value
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ReductionError(f"denominator {c.denominator} vanishes modulo {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _as_forms(forms) -> list[Form]:
    if isinstance(forms, FormSpace):
        return forms.forms()
    if isinstance(forms, Form):
        return [forms]
    return list(forms)


def variety_points(space: EnumeratedSpace, forms) -> PointConfig:
    """All F_p-points of P^dim where every form vanishes."""
    forms = _as_forms(forms)
    field = space.field
    for f in forms:
        if f.num_vars != space.dim + 1:
            raise PreconditionError("form lives in a different number of variables")
    if not forms:
        pts = space.points
    else:
        exps, rows = _stack(forms, space.p)
        pts = _accel.common_zeros(space.p, space.dim, exps, rows)
    return PointConfig([ProjPoint(list(q), field) for q in pts], field, space.dim)


def reduce_point(pt: ProjPoint, p: int) -> ProjPoint:
    field = PrimeField(p)
    coords = [_int_mod(c, p) for c in pt.coords]
    if all(c == 0 for c in coords):
        raise ReductionError(f"point {pt} reduces to zero modulo {p}")
    return ProjPoint(coords, field)


def reduce_form(form: Form, p: int) -> Form:
    field = PrimeField(p)
    return Form(form.basis, [_int_mod(c, p) for c in form.coeffs], field)


def reduce_config(cfg: PointConfig, p: int) -> PointConfig:
    pts = [reduce_point(q, p) for q in cfg.points]
    if len(set(pts)) != len(pts):
        raise ReductionError(f"distinct points collide modulo {p}")
    return PointConfig(pts, PrimeField(p), cfg.ambient_dim)


def full_intersection_count(curve_points: PointConfig, surface_form: Form) -> int:
    """Number of the given (curve) points on which the form vanishes."""
    if surface_form.is_zero():
        raise PreconditionError("the zero form does not define a surface")
    field = curve_points.field
    if not isinstance(field, PrimeField) or surface_form.field != field:
        raise PreconditionError("count needs points and form over the same prime field")
    exps, rows = _stack([surface_form], field.p)
    pts = [tuple(c.value for c in q.coords) for q in curve_points.points]
    return sum(_accel.zero_mask(pts, exps, rows, field.p))


def line_points(a: ProjPoint, b: ProjPoint) -> list[ProjPoint]:
    """All F_p-points of the line through ``a`` and ``b``."""
    field = a.field
    p = field.p
    out = [a]
    for lam in range(p):
        out.append(ProjPoint([lam * x + y for x, y in zip(a.coords, b.coords)], field))
    return out


def curve_points_of(forms: Sequence[Sequence], p: int) -> list[ProjPoint]:
    """F_p-points of a parametrized curve (images of all p+1 parameters)."""
    field = PrimeField(p)
    fs = [[field(c) for c in f] for f in forms]
    n = len(fs[0]) - 1
    out = []
    params = [(field.zero, field.one)] + [(field.one, field(t)) for t in range(p)]
    for s, t in params:
        v = [sum((c * s ** (n - k) * t**k for k, c in enumerate(f)), field.zero) for f in fs]
        if any(x != 0 for x in v):
            out.append(ProjPoint(v, field))
    return out


def next_primes(start: int, count: int, avoid: Iterable[int] = ()) -> list[int]:
    avoid = set(avoid)
    out = []
    n = start
    while len(out) < count:
        n += 1
        if is_prime(n) and n not in avoid:
            out.append(n)
    return out


def sample_primes(rs: RandomSource, count: int, lo: int = 1000, hi: int = 30000) -> list[int]:
    out: list[int] = []
    while len(out) < count:
        n = rs.randint(lo, hi)
        if is_prime(n) and n not in out:
            out.append(n)
    return out


def certificate_count(cert, p: int) -> int:
    """Reduce a certificate modulo ``p`` and count surface zeros on the curve witness.

    Bad reduction (colliding points, a collapsed line, a vanishing form)
    raises ``ReductionError``; the caller should try another prime.
    """
    from .certify import WitnessKind

    reduce_config(cert.image, p)
    surface = reduce_form(cert.surface, p)
    if surface.is_zero():
        raise ReductionError(f"surface witness vanishes modulo {p}")
    exps, rows = _stack([surface], p)
    w = cert.curve_witness
    zeros: set = set()
    if w.kind is WitnessKind.PARAM_CURVE:
        forms = [[_int_mod(c, p) for c in f] for f in w.curve.forms]
        zeros.update(_accel.curve_zeros(forms, exps, rows, p))
    else:
        for ln in w.lines:
            a, b = reduce_point(ln.a, p), reduce_point(ln.b, p)
            if a == b:
                raise ReductionError(f"a witness line collapses modulo {p}")
            zeros.update(_accel.line_zeros([c.value for c in a.coords], [c.value for c in b.coords], exps, rows, p))
    return len(zeros)


def cross_check(cert, primes: Sequence[int]) -> dict[int, int]:
    """Counts for each prime with good reduction."""
    out = {}
    for p in primes:
        try:
            out[p] = certificate_count(cert, p)
        except ReductionError:
            continue
    return out
