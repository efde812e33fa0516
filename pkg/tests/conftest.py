import pytest
from hypothesis import HealthCheck, settings

from cluspt.verify import p6 as make_p6, path4 as make_path4

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def p6():
    return make_p6()


@pytest.fixture
def path4():
    return make_path4()


def pytest_terminal_summary(terminalreporter):
    from .helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
