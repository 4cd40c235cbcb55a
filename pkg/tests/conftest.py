import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "matlang",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("matlang")

_RESULTS = {}
_PROPERTIES = {"passed": 0, "failed": 0, "seconds": 0.0}
PROPERTY_BUDGET = 300.0


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and getattr(getattr(item, "obj", None), "is_hypothesis_test", False):
        _PROPERTIES["passed" if rep.passed else "failed"] += 1
        _PROPERTIES["seconds"] += rep.duration
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        if mark is not None and rep.when == "setup" and rep.failed:
            _RESULTS[mark.args[0]] = (mark.args[1], False, 0.0)
        return
    _RESULTS[mark.args[0]] = (mark.args[1], rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS and not _PROPERTIES["passed"] + _PROPERTIES["failed"]:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        title, ok, dur = _RESULTS[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({dur:.2f}s)")
    # criterion 10 aggregates every hypothesis-driven property across the modules
    n_ok, n_bad, secs = _PROPERTIES["passed"], _PROPERTIES["failed"], _PROPERTIES["seconds"]
    ok = n_bad == 0 and n_ok > 0 and secs < PROPERTY_BUDGET
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'} criterion 10: property suites, {n_ok} passed, {n_bad} failed, "
        f"100 examples each ({secs:.2f}s of {PROPERTY_BUDGET:.0f}s)")


class Stopwatch:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False


@pytest.fixture
def stopwatch():
    return Stopwatch()
