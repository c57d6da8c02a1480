import numpy as np
import pytest

from pinskerf.dist import Distribution

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_distribution(rng, k, floor=0.0):
    w = rng.dirichlet(np.ones(k)) + floor
    return Distribution.normalized(w)


@pytest.fixture
def pair_sampler(rng):
    def sample(n, atoms=(2, 6), floor=1e-9):
        out = []
        for _ in range(n):
            k = int(rng.integers(atoms[0], atoms[1] + 1))
            out.append((random_distribution(rng, k, floor), random_distribution(rng, k, floor)))
        return out

    return sample


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
