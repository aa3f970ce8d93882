import pytest
from hypothesis import settings

from bohrradius.classes import ClassKind, ClassSpec

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SPECS = [
    ClassSpec(ClassKind.PH0_ALPHA, 0.0),
    ClassSpec(ClassKind.PH0_ALPHA, 0.3),
    ClassSpec(ClassKind.PH0_ALPHA, 0.7),
    ClassSpec(ClassKind.PH0_M, 0.1),
    ClassSpec(ClassKind.PH0_M, 0.5),
    ClassSpec(ClassKind.PH0_M, 1.0),
    ClassSpec(ClassKind.WH0_ALPHA, 0.0),
    ClassSpec(ClassKind.WH0_ALPHA, 0.3),
    ClassSpec(ClassKind.WH0_ALPHA, 0.7),
]


@pytest.fixture(params=SPECS, ids=str)
def spec(request):
    return request.param


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
