import pytest
from hypothesis import HealthCheck, settings

from betanum.beta import quasi_greedy_expansion
from betanum.corpus import CORPUS
from betanum.field import NumberField

settings.register_profile(
    "default",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def fields():
    return {name: NumberField.from_text(e.polynomial) for name, e in CORPUS.items()}


@pytest.fixture(scope="session")
def expansions(fields):
    return {name: quasi_greedy_expansion(f) for name, f in fields.items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
