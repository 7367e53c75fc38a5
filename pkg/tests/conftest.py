import json
import time

import pytest

from diamondcheck import cli


@pytest.fixture(scope="session")
def m12_run(tmp_path_factory):
    """Run `verify m12` once per session.

    Returns (exit code, certificate path, certificate text, seconds taken).
    """
    out = tmp_path_factory.mktemp("m12") / "certificate.json"
    t0 = time.perf_counter()
    code = cli.main(["verify", "m12", "--out", str(out)])
    return code, out, out.read_text(), time.perf_counter() - t0


@pytest.fixture(scope="session")
def m12_cert(m12_run):
    return json.loads(m12_run[2])


_criteria: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _criteria.append((value, report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for crit, name, outcome in sorted(_criteria, key=lambda c: int(c[0].split(".")[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {crit:<5} {status}  {name}")
