from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from bicenter import random_instance, validate_and_build

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def path(weights, lengths=None, pairs=((0, 3), (1, 2))):
    n = len(weights)
    lengths = lengths or [1] * (n - 1)
    edges = [(i, i + 1, lengths[i]) for i in range(n - 1)]
    return validate_and_build(weights, edges, pairs)


@pytest.fixture
def unit_path():
    """0-1-2-3, unit lengths and weights, pairs (0,3) and (1,2)."""
    return path([1, 1, 1, 1])


@pytest.fixture
def weighted_path():
    return path([2, 1, 1, 1])


@pytest.fixture
def triangle():
    return validate_and_build([1, 1, 1], [(0, 1, 1), (1, 2, 1), (0, 2, 1)], [(0, 1)])


def star(arms, pairs, length=1):
    return validate_and_build([1] * (arms + 1), [(0, i, length) for i in range(1, arms + 1)], pairs)


seeds = st.integers(min_value=0, max_value=10 ** 6)


@st.composite
def small_instances(draw, kind=None, max_n=7, unit=False):
    seed = draw(seeds)
    n = draw(st.integers(min_value=2, max_value=max_n))
    kind = kind or draw(st.sampled_from(["tree", "connected-graph"]))
    m = None
    if kind == "connected-graph":
        m = draw(st.integers(min_value=n - 1, max_value=min(10, n * (n - 1) // 2)))
    weights = (1, 1) if unit else (0, 5)
    return random_instance(seed, n, kind, m, weights=weights)


__all__ = ["F", "path", "star", "small_instances", "seeds"]


# ---------------------------------------------------------------- acceptance report


@pytest.fixture
def criterion(request):
    """record(label, ok, detail) keeps one pass/fail line for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(label, ok, detail=""):
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
