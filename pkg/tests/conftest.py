import re

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes = {}
_titles = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = _CRITERION.match(item.name)
        if m and item.module.__name__.endswith("test_acceptance"):
            n = int(m.group(1))
            titles = getattr(item.module, "CRITERIA", {})
            _titles[n] = titles.get(n, item.name)


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    m = _CRITERION.match(name)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        n = int(m.group(1))
        _outcomes.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        status = "PASS" if all(_outcomes[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {_titles.get(n, '')}")
