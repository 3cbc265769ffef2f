import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypercf.modular_poly import DensePoly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = [3, 5, 7, 11, 13]
primes = st.sampled_from(PRIMES)


@st.composite
def polys(draw, p, min_deg=0, max_deg=6, nonzero=False):
    d = draw(st.integers(min_deg, max_deg))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=d + 1, max_size=d + 1))
    if nonzero or min_deg > 0:
        coeffs[-1] = draw(st.integers(1, p - 1))
    return DensePoly(coeffs, p)


@st.composite
def prime_and_polys(draw, n=2, **kw):
    p = draw(primes)
    return (p,) + tuple(draw(polys(p, **kw)) for _ in range(n))


@st.composite
def words(draw, p, min_size=1, max_size=6, max_deg=3):
    n = draw(st.integers(min_size, max_size))
    return tuple(draw(polys(p, min_deg=1, max_deg=max_deg)) for _ in range(n))


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
