import pytest
from hypothesis import HealthCheck, settings

from geprofi import _accel, _kernels_py

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

try:
    from geprofi import _kernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = ["python"] + (["cython"] if _compiled is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available mod-p kernel backend."""
    mod = _kernels_py if request.param == "python" else _compiled
    monkeypatch.setattr(_accel, "kernels", mod)
    return request.param


# -- acceptance summary ------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or report.when != "call":
        return
    n = mark.kwargs["criterion"]
    _ACCEPTANCE[n] = (mark.kwargs["title"], "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, status, secs = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}  ({secs:.2f} s)")
