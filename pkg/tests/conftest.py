import random

import pytest

from braidgen.braid_core import make_word


def random_word(rng: random.Random, n: int, length: int):
    return make_word(n, [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)])


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
