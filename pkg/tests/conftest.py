import numpy as np
import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GAMMA = 1.4


def random_prim(rng, n, ndim, vmax=3.0):
    """``(ndim + 2, n)`` admissible primitive states."""
    rho = rng.uniform(0.1, 10.0, n)
    vel = rng.uniform(-vmax, vmax, (ndim, n))
    p = rng.uniform(0.1, 10.0, n)
    return np.vstack([rho, vel, p])


def cons(prim, gamma=GAMMA):
    prim = np.asarray(prim, dtype=float)
    rho, vel, p = prim[0], prim[1:-1], prim[-1]
    return np.concatenate([[rho], rho * vel, [p / (gamma - 1) + 0.5 * rho * (vel**2).sum(axis=0)]])


def prim_states(ndim):
    """Hypothesis strategy for one admissible primitive state."""
    pos = st.floats(0.05, 20.0)
    vel = st.floats(-5.0, 5.0)
    return st.tuples(pos, *([vel] * ndim), pos).map(np.array)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def report():
    """``report(n, ok, detail)`` records one acceptance line and prints it."""

    def record(n, ok, detail=""):
        ACCEPTANCE[n] = (bool(ok), detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            ok, detail = ACCEPTANCE[n]
            terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
