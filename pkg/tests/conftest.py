import numpy as np
import pytest

from swapcorr.bloch import state_to_bloch
from swapcorr.ensembles import EnsembleSpec, sample_states

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


@pytest.fixture(scope="session")
def general_states():
    return sample_states(EnsembleSpec("general", 2, 11), 500)


@pytest.fixture(scope="session")
def general_blochs(general_states):
    return state_to_bloch(general_states)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
