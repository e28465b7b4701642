import pytest

_CRITERIA: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    name = item.name
    if not name.startswith("test_criterion_"):
        return
    if rep.when == "call" or rep.failed:
        doc = (item.function.__doc__ or name).strip().splitlines()[0]
        prev = _CRITERIA.get(name, ("PASS", doc))[0]
        status = "FAIL" if rep.failed or prev == "FAIL" else "PASS"
        if rep.skipped:
            status = "SKIP"
        _CRITERIA[name] = (status, doc)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        status, doc = _CRITERIA[name]
        terminalreporter.write_line(f"{status}  {doc}")
