import pytest

from geprofi import RandomSource
from geprofi.certify import verify_certificate
from geprofi.reproduce import SUITES, reproduce, secant_point, theorem_a_case
from geprofi import constructions as C
from geprofi.ideals import weddle_excess


@pytest.mark.parametrize("suite,count", [("theorem_a", 12), ("theorem_b", 8), ("weddle_wlp", 4)])
def test_suites_pass(suite, count):
    rows = reproduce(suite, seed=1)
    assert len(rows) == count
    failed = [(r.name, r.detail) for r in rows if not r.passed]
    assert not failed
    assert all(r.to_json()["status"] == "pass" for r in rows)


def test_unknown_suite():
    assert "paper_all" in SUITES
    with pytest.raises(ValueError):
        reproduce("everything")


def test_theorem_a_case_shapes():
    for b, d in [(4, 2), (5, 3), (4, 4)]:
        cert = theorem_a_case(b, d, RandomSource(0))
        assert (cert.b, cert.d) == (b, d) and verify_certificate(cert).ok


def test_secant_points_have_excess():
    cfg, _, curve = C.rnc_points(C.default_params(9), RandomSource(2))
    rs = RandomSource(3)
    assert all(weddle_excess(cfg, secant_point(curve, rs), 2) >= 1 for _ in range(3))
