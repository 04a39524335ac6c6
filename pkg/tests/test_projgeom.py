from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from geprofi import QQ, PrimeField, RandomSource
from geprofi.errors import PreconditionError
from geprofi.exactlin import Matrix, inverse_matrix
from geprofi.projgeom import (
    Flat,
    PointConfig,
    ProjPoint,
    RationalCurve,
    apply_linear,
    binary_common_factor,
    binary_product,
    canonical_param,
    common_point,
    curve_eval,
    lgp_violation,
    line_meets,
    project,
    project_coords,
    project_point,
    projection_matrix,
    proportional,
    random_invertible,
    random_point,
    span,
    span_dim,
    standard_rnc,
)

seeds = st.integers(0, 2**32)


def unit(k, n=5):
    return [1 if i == k else 0 for i in range(n)]


def test_points_are_canonical():
    assert ProjPoint([2, 4, 6]) == ProjPoint([1, 2, 3]) == ProjPoint([Fraction(-1, 2), -1, Fraction(-3, 2)])
    assert ProjPoint([0, 3, 0]).coords == (0, 1, 0)
    f = PrimeField(7)
    assert ProjPoint([3, 6], f).coords == (f(1), f(2))
    with pytest.raises(PreconditionError):
        ProjPoint([0, 0, 0])


def test_config_rejects_repeats_and_mixed_ambient():
    with pytest.raises(PreconditionError):
        PointConfig([[1, 0], [2, 0]])
    with pytest.raises(PreconditionError):
        PointConfig([[1, 0], [1, 0, 0]])
    with pytest.raises(PreconditionError):
        PointConfig([])
    assert len(PointConfig([], QQ, 4)) == 0


@given(seeds)
def test_config_json_round_trip(seed):
    rs = RandomSource(seed)
    for f in (QQ, PrimeField(101)):
        cfg = PointConfig({random_point(rs, 4, f) for _ in range(6)}, f)
        assert PointConfig.from_json(cfg.to_json()) == cfg


def test_malformed_config_json():
    with pytest.raises(PreconditionError):
        PointConfig.from_json({"ambient_dim": 2, "points": [["1", "x", "0"]]})
    with pytest.raises(PreconditionError):
        PointConfig.from_json({"points": []})


def test_span_and_flats():
    line = span([unit(0), unit(1)])
    assert line.dim == 1 and line.contains([3, 5, 0, 0, 0]) and not line.contains(unit(2))
    plane = span([line, unit(2)])
    assert plane.dim == 2 and plane.contains(line.basis[0])
    assert span_dim([unit(0), unit(1), [1, 1, 0, 0, 0]]) == 1
    with pytest.raises(PreconditionError):
        Flat([unit(0), [2, 0, 0, 0, 0]])
    assert span([unit(0), unit(1)]) == span([[1, 1, 0, 0, 0], [1, -1, 0, 0, 0]])


def test_common_point_and_line_meets():
    plane_a = span([unit(0), unit(1), unit(2)])
    plane_b = span([unit(2), unit(3), unit(4)])
    meet = common_point([plane_a, plane_b])
    assert meet.dim == 0 and meet.point == ProjPoint(unit(2))
    skew = common_point([span([unit(0), unit(1)]), span([unit(2), unit(3)])])
    assert skew.dim == -1 and skew.point is None
    assert line_meets(span([unit(0), unit(1)]), span([unit(1), unit(2)]))
    assert not line_meets(span([unit(0), unit(1)]), span([unit(2), unit(3)]))
    with pytest.raises(PreconditionError):
        common_point([plane_a])


def test_lgp_violation_examples():
    assert lgp_violation(PointConfig([unit(k) for k in range(5)] + [[1] * 5])) is None
    bad = PointConfig([unit(0), unit(1), [1, 1, 0, 0, 0], unit(3)])
    assert lgp_violation(bad) == (0, 1, 2)


@given(seeds)
def test_projection_is_a_projectivity(seed):
    """Changing coordinates before projecting changes the image by a projectivity."""
    rs = RandomSource(seed)
    cfg = PointConfig({random_point(rs, 4) for _ in range(7)})
    center = random_point(rs, 4)
    if center in cfg.points:
        return
    m = random_invertible(rs, 5)
    moved_center = ProjPoint(m @ center.coords)
    pc = projection_matrix(center)
    pm = projection_matrix(moved_center) @ m
    gram = pc @ pc.T
    a = pm @ pc.T @ inverse_matrix(gram)
    assert a @ pc == pm
    for x in cfg.points:
        raw = project_coords(x.coords, center)
        if all(c == 0 for c in raw):
            continue
        assert project_point(ProjPoint(m @ x.coords), moved_center) == ProjPoint(a @ raw)


@given(seeds)
def test_projection_matrix_matches_coordinates(seed):
    rs = RandomSource(seed)
    c, x = random_point(rs, 4), random_point(rs, 4)
    assert projection_matrix(c) @ list(x.coords) == project_coords(x.coords, c)
    assert all(v == 0 for v in project_coords(c.coords, c))


def test_projection_detects_collisions():
    c = ProjPoint([1, 1, 1, 1, 1])
    x = ProjPoint(unit(0))
    y = ProjPoint([2, 1, 1, 1, 1])  # on the line through x and c
    proj = project(PointConfig([x, y, ProjPoint(unit(1))]), c)
    assert proj.collided and proj.index_map[0] == proj.index_map[1]
    with pytest.raises(PreconditionError):
        project(PointConfig([c, x]), c)


def test_apply_linear_keeps_order():
    cfg = PointConfig([unit(0), unit(1), [1, 1, 1, 1, 1]])
    m = Matrix([[1 if i == (j + 1) % 5 else 0 for j in range(5)] for i in range(5)], QQ)
    out = apply_linear(m, cfg)
    assert out[0] == ProjPoint(unit(1)) and out[1] == ProjPoint(unit(2))


def test_rational_normal_curve_points_are_lgp():
    c = standard_rnc()
    cfg = PointConfig([curve_eval(c, (1, t)) for t in range(-4, 5)] + [curve_eval(c, (0, 1))])
    assert lgp_violation(cfg) is None


def test_binary_forms():
    prod = binary_product([(1, 2), (1, -1)])
    # (2 s - t)(-s - t) = -2 s^2 - s t + t^2
    assert prod == [-2, -1, 1]
    assert binary_common_factor([[1, -1, 0], [0, 1, -1]])
    assert not binary_common_factor([[1, 0, 0], [0, 0, 1]])
    assert canonical_param((2, 6)) == (1, 3) and canonical_param((0, 5)) == (0, 1)
    assert proportional([1, 2], [3, 6]) and not proportional([1, 2], [1, 3]) and not proportional([0, 0], [0, 0])
    with pytest.raises(PreconditionError):
        RationalCurve([[1, -1], [1, -1]])


def test_curve_json_round_trip_and_base_points():
    c = standard_rnc(4)
    assert RationalCurve.from_json(c.to_json()) == c
    with pytest.raises(PreconditionError):
        curve_eval(c, (0, 0))
