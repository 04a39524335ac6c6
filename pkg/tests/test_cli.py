import copy
import json
import subprocess
import sys

import pytest

from geprofi import RandomSource
from geprofi import constructions as C
from geprofi.certify import certify_b2, certify_cone_construction
from geprofi.cli import main, run
from geprofi.ideals import hilbert


def invoke(*argv):
    status, doc, _ = run(list(argv))
    return status, doc


@pytest.fixture(scope="module")
def example_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "ex.json"
    assert main(["construct", "--kind", "example_3_2", "--out", str(path)]) == 0
    return path


@pytest.fixture(scope="module")
def cert_file(example_file):
    path = example_file.with_name("cert.json")
    assert main(["certify", "--mode", "b2", "--seed", "7", "--in", str(example_file), "--out", str(path)]) == 0
    return path


def test_construct_reports_h_vector(example_file):
    doc = json.loads(example_file.read_text())
    assert doc["format_version"] == 1 and doc["command"] == "construct"
    assert doc["seed"] == 0 and doc["field"] == "Q" and "seconds" in doc
    assert len(doc["result"]["config"]["points"]) == 10
    assert doc["result"]["h_vector"] == [1, 4, 5]


def test_certify_then_verify(cert_file):
    doc = json.loads(cert_file.read_text())
    cert = doc["result"]["certificate"]
    assert (cert["b"], cert["d"]) == (5, 2)
    status, out = invoke("verify", "--in", str(cert_file))
    assert status == 0 and out["result"]["verified"]
    status, out = invoke("verify", "--in", json.dumps(cert))
    assert status == 0


def test_tampered_certificate_exits_1(cert_file):
    cert = json.loads(cert_file.read_text())["result"]["certificate"]
    bad = copy.deepcopy(cert)
    lines = bad["curve_witness"]["data"]["lines"]
    lines[0]["assigned"][1], lines[1]["assigned"][1] = lines[1]["assigned"][1], lines[0]["assigned"][1]
    status, out = invoke("verify", "--in", json.dumps(bad))
    assert status == 1 and out["result"]["failed_check"] == "point-on-line"
    bad = copy.deepcopy(cert)
    bad["center"][0] = "2"
    status, out = invoke("verify", "--in", json.dumps(bad))
    assert status == 1 and out["result"]["failed_check"] == "well-formed"


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["verify", "--in", '{"b": 1,'], "line 1 column 9 (char 8)"),
        (["hvector", "--bogus", "1"], "unrecognized arguments"),
        (["frobnicate"], "invalid choice"),
        (["hvector"], "needs --in"),
        (["hvector", "--in", "/nonexistent/file.json"], "no such input file"),
        (["hvector", "--in", '{"ambient_dim": 4, "points": [["1", "0"]]}'], "not in P^4"),
        (["census", "--in", '{"ambient_dim": 4, "points": [["1","0","0","0","0"]]}'], "needs --b and --d"),
        (["construct"], "needs --kind"),
        (["construct", "--kind", "hypergrid", "--field", "Fp:7"], "built over Q"),
        (["construct", "--kind", "hypergrid", "--params", "[1]"], "JSON object"),
        (["reproduce", "--field", "Fp:8"], "prime"),
        (["reproduce", "--bound", "0"], "--bound"),
        (["certify", "--mode", "cone", "--in", '{"ambient_dim": 4, "points": [["1","0","0","0","0"]]}'], "construction record"),
    ],
)
def test_malformed_requests_exit_2(argv, fragment):
    status, doc = invoke(*argv)
    assert status == 2 and fragment in doc["error"]
    assert doc["format_version"] == 1


def test_lgp_false_is_not_an_error():
    cfg, _ = C.concurrent_lines([2] * 5, RandomSource(0))
    status, doc = invoke("lgp", "--in", json.dumps(cfg.to_json()))
    assert status == 0 and doc["result"]["lgp"] is False and doc["result"]["witness"]


def test_no_certificate_exits_1():
    cfg = C.random_lgp(10, RandomSource(0))
    status, doc = invoke("certify", "--in", json.dumps(cfg.to_json()))
    assert status == 1 and doc["result"]["certificate"] is None


def test_round_trip_matches_in_process(tmp_path):
    path = tmp_path / "c.json"
    assert main(["construct", "--kind", "concurrent_lines", "--seed", "3", "--out", str(path)]) == 0
    status, hv = invoke("hvector", "--in", str(path))
    status2, cert_doc = invoke("certify", "--mode", "cone", "--seed", "5", "--in", str(path))
    cfg, rec = C.concurrent_lines([2, 2, 2, 2, 2], RandomSource(3))
    assert hv["result"]["h_vector"] == list(hilbert(cfg).h_vector)
    cert = certify_cone_construction(cfg, rec, RandomSource(5))
    assert status == status2 == 0
    assert cert_doc["result"]["certificate"] == cert.to_json()
    cfg2, _ = C.example_3_2()
    status, doc = invoke("certify", "--seed", "7", "--in", json.dumps(cfg2.to_json()))
    assert doc["result"]["certificate"] == certify_b2(cfg2, RandomSource(7)).to_json()


def test_curve_mode_and_census(tmp_path):
    path = tmp_path / "r.json"
    assert main(["construct", "--kind", "rnc_points", "--params", '{"count": 12}', "--out", str(path)]) == 0
    status, doc = invoke("certify", "--mode", "curve", "--d", "3", "--in", str(path))
    assert status == 0 and doc["result"]["certificate"]["curve_witness"]["kind"] == "PARAM_CURVE"
    grid = tmp_path / "g.json"
    assert main(["construct", "--kind", "hypergrid", "--b", "3", "--d", "2", "--out", str(grid)]) == 0
    status, doc = invoke("census", "--b", "3", "--d", "2", "--in", str(grid))
    assert status == 0 and doc["result"]["verdict"] == "TRIVIAL_WITNESS_FOUND"


def test_weddle_and_wlp_commands(example_file):
    status, doc = invoke("wlp", "--in", str(example_file), "--params", '{"point": ["3", "1", "4", "1", "5"]}')
    assert status == 0 and doc["result"]["wlp_cokernel"] == 1
    status, doc = invoke("weddle", "--in", str(example_file), "--seed", "4")
    assert status == 0 and doc["result"]["weddle_excess"] == 1


def test_liaison_over_finite_field():
    for seed in range(6):
        status, doc = invoke("construct", "--kind", "liaison_ff", "--field", "Fp:11", "--seed", str(seed))
        if status == 0:
            break
    assert status == 0 and doc["field"] == {"Fp": 11}
    assert doc["result"]["h_vector"] == [1, 4, 4, 1]


def test_reproduce_suite_is_deterministic():
    def strip(doc):
        return [{k: v for k, v in r.items() if k != "seconds"} for r in doc["result"]["rows"]]

    s1, d1 = invoke("reproduce", "--suite", "weddle_wlp", "--seed", "3")
    s2, d2 = invoke("reproduce", "--suite", "weddle_wlp", "--seed", "3")
    assert s1 == s2 == 0 and d1["result"]["total"] == 4
    assert strip(d1) == strip(d2)


def test_console_script_and_stdin(example_file):
    text = example_file.read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "geprofi.cli", "hvector", "--in", "-"], input=text, capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["h_vector"] == [1, 4, 5]
    proc = subprocess.run([sys.executable, "-m", "geprofi.cli", "hvector", "--in", "{oops"], capture_output=True, text=True)
    assert proc.returncode == 2 and "malformed JSON" in json.loads(proc.stderr)["error"]
