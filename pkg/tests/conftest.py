import os
import tempfile

# Keep census files out of the user's cache unless a directory is given.
os.environ.setdefault("OGT_CACHE_DIR", tempfile.mkdtemp(prefix="ogt-test-cache-"))


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        label = name[len("test_criterion_"):]
        num, _, title = label.partition("_")
        verdict = "PASS" if _criteria[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {verdict}  {title.replace('_', ' ')}")
