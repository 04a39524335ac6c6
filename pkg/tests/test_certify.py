import copy
import json

import pytest
from hypothesis import given, settings, strategies as st

from geprofi import QQ, RandomSource
from geprofi import constructions as C
from geprofi.certify import (
    GeprofiCertificate,
    LineComponent,
    SpanTest,
    WitnessKind,
    certify_b2,
    certify_cone_construction,
    certify_on_curve,
    is_cone_with_vertex,
    is_lgp,
    line_families,
    no_twisted_cubic_check,
    pair_partition,
    plane_families,
    quadric_contains_line,
    quadric_rank,
    verify_certificate,
    verify_document,
)
from geprofi.errors import PreconditionError
from geprofi.ideals import Form
from geprofi.projgeom import PointConfig, ProjPoint

from oracles import single_leaf_mutations

seeds = st.integers(0, 2**32)


def x(i):
    return Form.linear([1 if k == i else 0 for k in range(4)])


@pytest.fixture(scope="module")
def example_cert():
    cfg, _ = C.example_3_2()
    cert = certify_b2(cfg, RandomSource(7))
    assert cert is not None
    return cert


@pytest.fixture(scope="module")
def cone_cert():
    cfg, rec = C.grid_extension(3, RandomSource(1))
    cert = certify_cone_construction(cfg, rec, RandomSource(2))
    assert cert is not None
    return cert


@pytest.fixture(scope="module")
def curve_cert():
    _, rec, curve = C.rnc_points(C.default_params(12), RandomSource(4))
    cert = certify_on_curve(curve, rec.curve_params, 3, RandomSource(5))
    assert cert is not None
    return cert


# -- incidence helpers -------------------------------------------------------


def test_span_test_agrees_with_rank():
    st_ = SpanTest([[1, 0, 0, 2], [0, 1, 1, 0]])
    assert st_.independent
    assert st_([2, 3, 3, 4]) and not st_([0, 0, 1, 0])
    assert not SpanTest([[1, 2, 3, 4], [2, 4, 6, 8]]).independent


def test_line_and_plane_families():
    pts = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]]
    cfg = PointConfig(pts)
    lines = line_families(cfg, min_size=3)
    assert lines == [(0, 1, 2)]
    planes = plane_families(cfg, min_size=4)
    assert (0, 1, 2, 3) in planes and (0, 1, 2, 4) in planes


def test_is_lgp_reports_witness():
    cfg, _ = C.concurrent_lines([2] * 5, RandomSource(0))
    res = is_lgp(cfg)
    assert not res and res.witness is not None and len(res.witness) <= 5
    assert is_lgp(C.random_lgp(8, RandomSource(0)))


def test_quadric_helpers():
    q = x(0) * x(1) - x(2) * x(3)
    assert quadric_rank(q) == 4
    assert quadric_contains_line(q, [1, 0, 0, 0], [0, 0, 1, 0])
    assert not quadric_contains_line(q, [1, 0, 0, 0], [0, 1, 0, 0])
    cone = x(0) * x(1) - x(2) * x(2)
    assert quadric_rank(cone) == 3 and is_cone_with_vertex(cone, [0, 0, 0, 1])
    assert not is_cone_with_vertex(cone, [1, 0, 0, 0])


# -- pairing -----------------------------------------------------------------


def test_pairing_on_two_planes():
    q = x(0) * x(1)
    pts = [[0, 1, 1, 0], [0, 1, 0, 1], [0, 1, 2, 3], [1, 0, 1, 0], [1, 0, 0, 1], [1, 0, 5, 7]]
    res = pair_partition(PointConfig(pts), q)
    assert res.path == "two-plane"
    assert sorted(i for p in res.pairs for i in p) == list(range(6))
    assert all((i < 3) != (j < 3) for i, j in res.pairs)


def test_pairing_on_a_smooth_quadric_grid():
    # 3x2 grid on x0 x3 = x1 x2: every line of one ruling holds 2 points
    q = x(0) * x(3) - x(1) * x(2)
    us, vs = [(1, 0), (0, 1), (1, 1)], [(1, 2), (1, 3)]
    pts = [[u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]] for u in us for v in vs]
    res = pair_partition(PointConfig(pts), q)
    assert res.pairs is not None
    for i, j in res.pairs:
        assert not quadric_contains_line(q, pts[i], pts[j])


def test_pairing_preconditions():
    q = x(0) * x(3) - x(1) * x(2)
    with pytest.raises(PreconditionError, match="even number"):
        pair_partition(PointConfig([[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]]), q)
    with pytest.raises(PreconditionError, match="does not vanish"):
        pair_partition(PointConfig([[1, 2, 3, 4], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]]), q)
    cone = x(0) * x(1) - x(2) * x(2)
    with pytest.raises(PreconditionError, match="no-vertex"):
        pair_partition(PointConfig([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 1, 0]]), cone)
    # three collinear points on a line of the quadric with b = 2
    line_pts = [[1, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [0, 1, 0, 0]]
    with pytest.raises(PreconditionError, match="more than 2 collinear"):
        pair_partition(PointConfig(line_pts), q)


# -- certifiers --------------------------------------------------------------


def test_example_certificate(example_cert):
    cert = example_cert
    assert (cert.b, cert.d) == (5, 2)
    assert cert.curve_witness.kind is WitnessKind.PAIRED_LINES
    res = verify_certificate(cert)
    assert res.ok
    names = [t["check"] for t in res.transcript]
    assert names == [
        "header",
        "image cardinality",
        "surface degree",
        "surface_witness vanishing",
        "line components partition",
        "point-on-line",
        "line not on surface",
        "line exactness",
        "quadric rank",
        "source projection",
    ]


def test_cone_and_curve_certificates(cone_cert, curve_cert):
    assert (cone_cert.b, cone_cert.d) == (5, 3) and cone_cert.curve_witness.kind is WitnessKind.CONE_LINES
    assert (curve_cert.b, curve_cert.d) == (4, 3) and curve_cert.curve_witness.kind is WitnessKind.PARAM_CURVE
    assert verify_certificate(cone_cert).ok and verify_certificate(curve_cert).ok
    assert "cone vertex" in [t["check"] for t in cone_cert.transcript]
    assert "parameter exactness" in [t["check"] for t in curve_cert.transcript]


@pytest.mark.parametrize("name", ["example_cert", "cone_cert", "curve_cert"])
def test_json_round_trip(name, request):
    cert = request.getfixturevalue(name)
    doc = json.loads(json.dumps(cert.to_json()))
    back = GeprofiCertificate.from_json(doc)
    assert back.to_json() == doc and verify_certificate(back).ok


@given(seeds)
@settings(max_examples=20)
def test_certificates_are_sound_across_seeds(seed):
    """Whatever the certifier emits passes an independent recount of the intersection."""
    rs = RandomSource(seed)
    cfg, _, curve = C.rnc_points(C.random_params(10, rs.child("p")), rs.child("c"))
    cert = certify_b2(cfg, rs.child("cert"))
    assert cert is not None and verify_certificate(cert).ok
    f = cert.surface
    for ln in cert.curve_witness.lines:
        restricted = f.restrict_to_line(ln.a, ln.b)
        assert any(c != 0 for c in restricted)
        assert sum(1 for i, p in enumerate(cert.image.points) if i in ln.assigned) == 2
    assert all(f(p) == 0 for p in cert.image.points)


def test_random_ten_points_have_no_certificate():
    log = []
    assert certify_b2(C.random_lgp(10, RandomSource(3)), RandomSource(4), log=log) is None
    assert log[-1].startswith("no certificate found")


def test_certifier_preconditions():
    with pytest.raises(PreconditionError):
        certify_b2(C.random_lgp(7, RandomSource(0)), RandomSource(0))
    cfg, rec = C.hypergrid(3, 2, RandomSource(0))
    with pytest.raises(PreconditionError):
        certify_cone_construction(cfg, rec, RandomSource(0))
    _, rec, curve = C.rnc_points(C.default_params(8), RandomSource(0))
    with pytest.raises(PreconditionError):
        certify_on_curve(curve, rec.curve_params, 3, RandomSource(0))


# -- tamper detection --------------------------------------------------------


@pytest.mark.parametrize("name", ["example_cert", "cone_cert", "curve_cert"])
def test_every_single_leaf_mutation_is_rejected(name, request):
    doc = request.getfixturevalue(name).to_json()
    assert verify_document(doc).ok
    count = 0
    for path, bad in single_leaf_mutations(doc):
        count += 1
        res = verify_document(bad)
        assert not res.ok, f"mutation at {path} was accepted"
        assert res.failed
    assert count > 100


def test_swapped_assignment_fails_point_on_line(example_cert):
    doc = copy.deepcopy(example_cert.to_json())
    lines = doc["curve_witness"]["data"]["lines"]
    lines[0]["assigned"][1], lines[1]["assigned"][1] = lines[1]["assigned"][1], lines[0]["assigned"][1]
    res = verify_document(doc)
    assert not res.ok and res.failed == "point-on-line"


def test_wrong_surface_fails_vanishing(example_cert):
    doc = copy.deepcopy(example_cert.to_json())
    cert = GeprofiCertificate.from_json(doc)
    cert.surface = (x(0) * x(0)).normalized()
    assert verify_certificate(cert).failed == "surface_witness vanishing"


def test_line_components_have_one_encoding():
    a, b = ProjPoint([1, 2, 0, 3]), ProjPoint([2, 1, 1, 1])
    other = ProjPoint([3, 3, 1, 4])
    assert LineComponent(a, b, (0, 1)) == LineComponent(other, b, (0, 1))
    dup = LineComponent(a, a, (0, 1))
    assert dup.a == dup.b


def test_rescaled_coordinates_are_not_canonical(example_cert):
    doc = copy.deepcopy(example_cert.to_json())
    doc["center"] = [str(2 * QQ.from_json(v)) for v in doc["center"]]
    res = verify_document(doc)
    assert not res.ok and res.failed == "well-formed"


def test_verification_fails_when_transcript_is_edited(example_cert):
    doc = copy.deepcopy(example_cert.to_json())
    doc["transcript"].pop()
    assert verify_document(doc).failed == "transcript"


# -- twisted cubics ----------------------------------------------------------


@given(seeds)
@settings(max_examples=10)
def test_no_twisted_cubic_through_seven_general_points(seed):
    assert no_twisted_cubic_check(C.random_lgp(7, RandomSource(seed)), RandomSource(seed + 1))


def test_no_twisted_cubic_special_positions():
    rnc7, _, _ = C.rnc_points(C.default_params(7), RandomSource(0))
    assert no_twisted_cubic_check(rnc7, RandomSource(1))
    collinear = PointConfig(
        [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [1, 2, 3, 4, 5]]
    )
    assert no_twisted_cubic_check(collinear, RandomSource(2))
    with pytest.raises(PreconditionError):
        no_twisted_cubic_check(C.random_lgp(6, RandomSource(0)), RandomSource(0))
    flat = PointConfig([ProjPoint([1, k, k * k, k**3, 0]) for k in range(7)])
    with pytest.raises(PreconditionError):
        no_twisted_cubic_check(flat, RandomSource(0))
