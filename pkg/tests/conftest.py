import random
from fractions import Fraction

import pytest

from hankelcf.cf import CFParams


def small_rational(rng, lo=-5, hi=5, max_den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_cf(rng, e=None, nonzero_a=True):
    vals = [small_rational(rng) for _ in range(6)]
    while nonzero_a and vals[0] == 0:
        vals[0] = small_rational(rng)
    if e is not None:
        vals[4] = Fraction(e)
    return CFParams(*vals)


@pytest.fixture
def rng():
    return random.Random(20230616)


# acceptance criteria report one line each in the terminal summary
_CRITERIA = []


def record_criterion(number, title, ok, detail=""):
    _CRITERIA.append((number, title, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA):
        status = "PASS" if ok else "FAIL"
        extra = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {number}. {title}{extra}")
