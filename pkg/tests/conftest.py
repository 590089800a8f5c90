from collections import defaultdict

_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker:
        item.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    k = dict(report.user_properties).get("criterion")
    if k and (report.when == "call" or report.failed):
        _outcomes[k].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_outcomes):
        runs = _outcomes[k]
        status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d}: {status}  ({sum(runs)}/{len(runs)} checks passed)")
