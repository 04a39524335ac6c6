from dataclasses import replace
from fractions import Fraction

import pytest

from geprofi import PrimeField, RandomSource
from geprofi import constructions as C
from geprofi.certify import certify_b2, certify_cone_construction, certify_on_curve
from geprofi.errors import PreconditionError, ReductionError
from geprofi.ideals import Form, ideal_slice
from geprofi.oracle import (
    certificate_count,
    cross_check,
    curve_points_of,
    enumerate_space,
    full_intersection_count,
    line_points,
    next_primes,
    reduce_config,
    reduce_point,
    sample_primes,
    space_size,
    variety_points,
)
from geprofi.projgeom import PointConfig, ProjPoint


def test_space_sizes():
    assert space_size(2, 1) == 3 and space_size(3, 2) == 13 and space_size(11, 4) == 16105
    assert len(enumerate_space(5, 3)) == len(enumerate_space(5, 3).points) == 156
    with pytest.raises(PreconditionError):
        enumerate_space(6, 2)
    with pytest.raises(PreconditionError):
        enumerate_space(101, 4)


def test_smooth_conic_has_p_plus_one_points(backend):
    for p in (3, 5, 7, 11):
        f = PrimeField(p)
        conic = Form.from_dict(3, 2, {(1, 1, 0): 1, (0, 0, 2): -1}, f)  # x y = z^2
        assert len(variety_points(enumerate_space(p, 2), conic)) == p + 1


def test_variety_of_an_ideal_recovers_the_points(backend):
    f = PrimeField(13)
    rs = RandomSource(2)
    cfg = C.random_lgp(7, rs, field=f)
    found = variety_points(enumerate_space(13, 3 + 1), ideal_slice(cfg, 2))
    assert set(cfg.points) <= set(found.points)


def test_full_intersection_count():
    f = PrimeField(7)
    plane = Form.linear([1, 0, 0, 0], f)
    pts = PointConfig([ProjPoint([0, 1, 0, 0], f), ProjPoint([1, 0, 0, 0], f), ProjPoint([0, 0, 1, 1], f)], f)
    assert full_intersection_count(pts, plane) == 2
    with pytest.raises(PreconditionError):
        full_intersection_count(pts, Form.linear([0, 0, 0, 0], f))


def test_reduction_errors():
    with pytest.raises(ReductionError):
        reduce_point(ProjPoint([1, Fraction(1, 7)]), 7)
    assert reduce_point(ProjPoint([1, 7]), 7) == ProjPoint([1, 0], PrimeField(7))
    with pytest.raises(ReductionError):
        reduce_config(PointConfig([[1, 0], [1, 5]]), 5)


def test_line_and_curve_point_lists():
    f = PrimeField(5)
    pts = line_points(ProjPoint([1, 0, 0], f), ProjPoint([0, 1, 0], f))
    assert len(set(pts)) == 6
    assert len(set(curve_points_of([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 5))) == 6


def test_prime_helpers():
    assert next_primes(10, 3) == [11, 13, 17]
    assert next_primes(10, 2, avoid=[11]) == [13, 17]
    ps = sample_primes(RandomSource(0), 5)
    assert len(set(ps)) == 5 and all(1000 <= p <= 30000 for p in ps)


@pytest.fixture(scope="module")
def certs():
    out = []
    cfg, _ = C.example_3_2()
    out.append(certify_b2(cfg, RandomSource(7)))
    cfg, rec = C.grid_extension(3, RandomSource(1))
    out.append(certify_cone_construction(cfg, rec, RandomSource(2)))
    _, rec, curve = C.rnc_points(C.default_params(12), RandomSource(4))
    out.append(certify_on_curve(curve, rec.curve_params, 3, RandomSource(5)))
    assert all(c is not None for c in out)
    return out


def test_certificate_counts_match_bd(certs, backend):
    for cert in certs:
        counts = cross_check(cert, [1009, 1013, 1019])
        assert counts and all(v == cert.b * cert.d for v in counts.values())


def test_bad_primes_are_skipped(certs):
    cert = certs[1]
    primes = next_primes(1, 12)
    expect = {}
    for p in primes:
        try:
            expect[p] = certificate_count(cert, p)
        except ReductionError:
            pass
    assert len(expect) < len(primes)  # some small prime has bad reduction
    assert cross_check(cert, primes) == expect


def test_count_detects_a_wrong_surface(certs):
    cert = certs[0]
    x0 = Form.linear([1, 0, 0, 0])
    bogus = x0 * x0
    wrong = replace(cert, surface=bogus)
    assert certificate_count(wrong, 1009) != cert.b * cert.d
