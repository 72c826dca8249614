import pytest

from mfchains import actions

PRESET_SPECS = [
    "un:n=3",
    "torus:n=3",
    "symtorus:n=3",
    "symc:m=2",
    "matc:m=2",
    "skewc:m=2",
    "sphere:n=5",
]


@pytest.fixture(params=PRESET_SPECS)
def preset(request):
    return actions.parse_action(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
