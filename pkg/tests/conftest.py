import pytest

from masonry_beam import BeamSpec, SolverSettings


@pytest.fixture
def beam():
    # default CLI beam: L/h = 10, E = 3 GPa
    return BeamSpec(b=0.4, h=0.4, L=4.0, E=3e9, rho=1800.0)


@pytest.fixture
def settings():
    return SolverSettings()


@pytest.fixture
def tight():
    """Iteration error well below the grid error."""
    return SolverSettings(epsilon=1e-9, max_iter=2000)


_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line; the lines are printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _VERDICTS.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
