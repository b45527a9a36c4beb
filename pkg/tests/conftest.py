import pytest

from quadcodes.checks import PRESETS
from quadcodes.field import build_field


@pytest.fixture(scope="session")
def f27():
    return build_field(3, 3)


@pytest.fixture(scope="session")
def f125():
    return build_field(5, 3)


@pytest.fixture(scope="session")
def f81():
    return build_field(3, 4)


@pytest.fixture(scope="session")
def spec33():
    return PRESETS["3-3"].build()


@pytest.fixture(scope="session")
def spec53():
    return PRESETS["5-3"].build()


@pytest.fixture(scope="session")
def spec34_plus():
    return PRESETS["3-4-plus"].build()


@pytest.fixture(scope="session")
def spec34_minus():
    return PRESETS["3-4-minus"].build()


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record ``(passed, summary)`` for an acceptance criterion; printed in the terminal summary."""

    def record(number: int, passed: bool, summary: str) -> None:
        ACCEPTANCE[number] = (passed, summary)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}: {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}: {text}")
