import pytest
from hypothesis import HealthCheck, settings

from soergelring.coxeter import a2, a3, b2
from soergelring.grotring import EXTENDED, PLAIN, GrothendieckRing
from soergelring.hilbert import HilbertOracle

settings.register_profile(
    "repo", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=100
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def plain():
    return GrothendieckRing(PLAIN)


@pytest.fixture(scope="session")
def ext():
    return GrothendieckRing(EXTENDED)


@pytest.fixture(scope="session")
def oracle_a2():
    return HilbertOracle(a2())


@pytest.fixture(scope="session")
def oracle_b2():
    return HilbertOracle(b2())


@pytest.fixture(scope="session")
def oracle_a3():
    return HilbertOracle(a3())


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, secs, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s) {detail}")
