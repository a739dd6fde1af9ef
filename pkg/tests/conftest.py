import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
REPO = TESTS_DIR.parent
sys.path.insert(0, str(TESTS_DIR))

FIXTURES = REPO / "fixtures"
PROFILES = REPO / "profiles"


@pytest.fixture(scope="session")
def atm_dir():
    return FIXTURES / "atm"


@pytest.fixture(scope="session")
def java_profile_path():
    return PROFILES / "java.profile.xml"


@pytest.fixture(scope="session")
def dotnet_profile_path():
    return PROFILES / "dotnet.profile.xml"


_ACCEPTANCE_RESULTS = []


def record_acceptance(name: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((name, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line("%s %s" % ("PASS" if passed else "FAIL", name))
