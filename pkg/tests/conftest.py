import re

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# criterion number -> {test name: outcome}
_acceptance: dict[int, dict[str, str]] = {}
_CRITERION = re.compile(r"test_c(\d+)_([a-z0-9_]+)")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        m = _CRITERION.match(name)
        if m:
            _acceptance.setdefault(int(m.group(1)), {})[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        outcomes = _acceptance[number]
        ok = all(o == "passed" for o in outcomes.values())
        label = _CRITERION.match(next(iter(outcomes))).group(2)
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}  {label}  ({len(outcomes)} case(s))"
        )
