import numpy as np
import pytest

from mubkit._backend import available_backends

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(available_backends()))
def kernels(request):
    return available_backends()[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(N, rng, scale=1.0):
    a = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    return scale * (a + a.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
