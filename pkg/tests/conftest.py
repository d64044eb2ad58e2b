"""Suite-wide wiring.

Two observers are registered at import time, before any test runs: one
records every reduced Groebner basis the engine computes, the other records
every defect report emitted. The aggregate acceptance checks replay those
recordings, so the acceptance module is moved to the end of the collection.
"""

from hypothesis import HealthCheck, settings

from lecalc import defect, groebner

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


RECORDED_BASES = []
RECORDED_REPORTS = []
_seen_bases = set()


def _record_basis(frame, descriptor, termlists):
    key = (frame.names, descriptor, tuple(tuple(t) for t in termlists))
    if key in _seen_bases:
        return
    _seen_bases.add(key)
    RECORDED_BASES.append((descriptor, termlists))


def _record_report(report):
    RECORDED_REPORTS.append(report)


groebner.register_basis_observer(_record_basis)
defect.register_report_observer(_record_report)


ACCEPTANCE = {}


def record_acceptance(num, desc, passed, detail=""):
    ACCEPTANCE[num] = (desc, bool(passed), detail)


def pytest_collection_modifyitems(config, items):
    # stable sort: keep file-internal order, push the acceptance battery last
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        desc, passed, detail = ACCEPTANCE[num]
        line = "AC%-2d %s - %s" % (num, "PASS" if passed else "FAIL", desc)
        if detail and not passed:
            line += " [%s]" % detail
        terminalreporter.write_line(line)
