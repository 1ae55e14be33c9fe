import random
from fractions import Fraction

import pytest

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(number: int, ok: bool, elapsed: float, limit: float | None, detail: str = "") -> str:
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit is not None else "")
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {timing} {detail}".rstrip()
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance report")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


def rand_frac(rng: random.Random, lo=-5, hi=5, nonzero=False, dens=(1, 1, 2, 3, 5)) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.choice(dens))
        if x or not nonzero:
            return x


@pytest.fixture
def rng():
    return random.Random(20240611)
