import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when != "call" and not report.failed:
        return
    number, title = props["criterion"]
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "notes": []})
    entry["ok"] = entry["ok"] and report.passed
    entry["notes"] += [str(v) for k, v in report.user_properties if k == "detail"]
    if report.failed:
        entry["notes"].append(f"failed: {report.nodeid.split('::')[-1]}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        notes = "; ".join(entry["notes"])
        line = f"{status} criterion {number:2d}: {entry['title']}"
        terminalreporter.write_line(line + (f" [{notes}]" if notes else ""))


@pytest.fixture
def detail(record_property):
    """Attach a one-line note to the acceptance summary."""
    return lambda text: record_property("detail", text)
