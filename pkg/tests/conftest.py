import numpy as np
import pytest

from epsweep.model import LevelModel, LevelSpec

# level parameters of the N = 3..6 overlapping-resonance runs
ALPHA = (1.0, 0.0, 0.5, 0.0, 0.0, 1.0)
BETA = (-0.5, 1.0, 1.0, 2.0, 2.0, 1.0)
HALF_GAMMA = (-0.5, -0.1, -0.6335, -0.323, -0.31, -0.5)
OMEGA = 0.2


def fig_levels(n, hermitian=False):
    return [LevelSpec(ALPHA[i], BETA[i], 0.0 if hermitian else HALF_GAMMA[i])
            for i in range(n)]


@pytest.fixture
def fig_model():
    def make(n, hermitian=False, omega=OMEGA):
        return LevelModel.uniform(fig_levels(n, hermitian), omega)
    return make


@pytest.fixture
def pair_model():
    return LevelModel.uniform(fig_levels(2), OMEGA)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_complex_symmetric(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + a.T) / 2


_ACCEPTANCE = []


@pytest.fixture
def acceptance_record():
    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
