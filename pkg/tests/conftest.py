import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from cliffalg import FLOAT, RATIONAL, Algebra  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rand_frac(rng, lo=-5, hi=5, den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_mv(alg, rng, nterms=4, grades=None):
    """Sparse random multivector with small rational (or float) coefficients."""
    n = alg.n
    masks = [m for m in range(1 << n) if grades is None or bin(m).count("1") in grades]
    terms = {}
    for _ in range(nterms):
        m = rng.choice(masks)
        if alg.ring == FLOAT:
            terms[m] = rng.uniform(-2, 2)
        else:
            terms[m] = rand_frac(rng)
    return alg.from_terms(terms)


def rand_vector(alg, rng):
    if alg.ring == FLOAT:
        return alg.vector([rng.uniform(-2, 2) for _ in range(alg.n)])
    return alg.vector([rand_frac(rng) for _ in range(alg.n)])


def rand_signature_values(rng, n, zeros=True):
    choices = (1, -1, 0) if zeros else (1, -1)
    return tuple(rng.choice(choices) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(20241016)


@pytest.fixture
def R3():
    return Algebra.from_counts(3, ring=RATIONAL)


# ----------------------------------------------------------------- acceptance report

def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """record(num, title, failures, detail) prints and stores one pass/fail line."""
    lines = request.config.acceptance_lines

    def record(num, title, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        line = f"[{status}] criterion {num:2d}: {title}"
        if detail:
            line += f" ({detail})"
        if failures:
            line += f"; first failure: {failures[0]}"
        lines.append((num, line))
        print(line)
        return not failures

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
