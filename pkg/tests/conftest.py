import pytest
from hypothesis import HealthCheck, settings

from colmez.galois import build_field

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def qi():
    return build_field(4)


@pytest.fixture(scope="session")
def q5():
    return build_field(5)


@pytest.fixture(scope="session")
def q7():
    return build_field(7)


@pytest.fixture(scope="session")
def biquad():
    """Q(i, sqrt 5) = fixed field of <9> in Q(zeta_20)."""
    return build_field(20, [9])


@pytest.fixture(scope="session")
def small_fields():
    return [build_field(n, gens) for n, gens in [(4, []), (3, []), (5, []), (20, [9]), (7, []), (8, []), (12, [])]]


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
