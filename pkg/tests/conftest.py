"""Shared fixtures and the acceptance-criteria summary hook."""

import pathlib

import pytest

import mealyforge as mf

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "machines"


@pytest.fixture(scope="session")
def odometer():
    return mf.load_machine(str(CORPUS / "odometer.mealy"))


@pytest.fixture(scope="session")
def grigorchuk():
    return mf.load_machine(str(CORPUS / "grigorchuk.mealy"))


@pytest.fixture(scope="session")
def identity2():
    return mf.load_machine(str(CORPUS / "identity2.mealy"))


@pytest.fixture(scope="session")
def z2():
    return mf.GroupTable.cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return mf.GroupTable.cyclic(3)


@pytest.fixture(scope="session")
def klein():
    return mf.GroupTable.klein()


@pytest.fixture(scope="session")
def corpus_machines(odometer, grigorchuk, identity2):
    return {"odometer": odometer, "grigorchuk": grigorchuk, "identity2": identity2}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, ()):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid:
                name = nodeid.split("::")[-1]
                rows.append((name, "PASS" if status == "passed" else "FAIL"))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in sorted(rows):
            terminalreporter.write_line("%s  %s" % (status, name))
