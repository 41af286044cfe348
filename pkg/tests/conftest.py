import random

import pytest

from toricpull import Fan, cone_from_rays, pull

N1, N2, N3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
N4, N5 = (2, 1, 0), (0, 1, 2)


@pytest.fixture(scope="session")
def sigma():
    return cone_from_rays([N1, N2, N3])


@pytest.fixture(scope="session")
def tau():
    return cone_from_rays([N4, N5])


@pytest.fixture(scope="session")
def example(sigma, tau):
    return pull(sigma, tau, ((1, 1, 1), 1))


@pytest.fixture(scope="session")
def delta(sigma):
    return Fan.from_cones([sigma])


@pytest.fixture(scope="session")
def orthant2():
    return cone_from_rays([(1, 0), (0, 1)])


def random_pair(rng: random.Random, n: int):
    """A full-dimensional cone sigma and a subcone tau spanned by nonnegative combinations of its rays."""
    while True:
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(n, n + 2))]
        gens = [g for g in gens if any(g)]
        if not gens:
            continue
        try:
            s = cone_from_rays(gens, n)
        except ValueError:
            continue
        if not s.is_full_dimensional:
            continue
        tg = []
        for _ in range(rng.randint(1, min(3, n))):
            w = [rng.randint(0, 2) for _ in s.rays]
            if not any(w):
                w[0] = 1
            tg.append(tuple(sum(wi * r[j] for wi, r in zip(w, s.rays)) for j in range(n)))
        return s, cone_from_rays(tg, n)


def random_pairs(seed: int, count: int, ranks=(2, 3)):
    rng = random.Random(seed)
    return [random_pair(rng, rng.choice(ranks)) for _ in range(count)]


_acceptance_lines = {}


def record_acceptance(number: int, line: str) -> None:
    _acceptance_lines[number] = line


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_lines):
        terminalreporter.write_line(_acceptance_lines[number])
