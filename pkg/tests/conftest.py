from __future__ import annotations

from importlib import resources
from pathlib import Path

import pytest

from congruence_profiler.fabric import SyntheticProfile, generate_synthetic, implement, variant

DATA = Path(str(resources.files("congruence_profiler") / "data"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def baseline():
    return variant("baseline")


@pytest.fixture(scope="session")
def logic_design(baseline):
    netlist = generate_synthetic(SyntheticProfile.preset("logic-bound", 3))
    return implement(netlist, baseline, seed=1)


@pytest.fixture(scope="session")
def hblock_design(baseline):
    netlist = generate_synthetic(SyntheticProfile.preset("hblock-bound", 3))
    return implement(netlist, baseline, seed=1)


# ---------------------------------------------------------------- acceptance lines

_ACCEPTANCE: dict[int, str] = {}


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else (self.detail or f"{exc_type.__name__}: {exc}")
        line = f"criterion {self.number}: {status}  {self.title}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE[self.number] = line
        print(line)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
