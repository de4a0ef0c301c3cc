import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from liyorke.core_space import TailSpec, const, validate_point
from liyorke.dynamics import connected_point


@st.composite
def points(draw, kinds=("const", "arith", "infinity"), high=30, max_prefix=5):
    prefix = sorted(draw(st.lists(st.integers(1, high), max_size=max_prefix)))
    kind = draw(st.sampled_from(kinds))
    low = prefix[-1] if prefix else 1
    value = None if kind == "infinity" else draw(st.integers(low, high + 5))
    x0 = draw(st.floats(0.0, 1.0, exclude_max=True, allow_nan=False))
    return validate_point(x0, prefix, TailSpec(kind, None, value))


def random_point(rng, kinds=("const", "arith", "infinity"), high=30, max_prefix=5):
    prefix = sorted(int(v) for v in rng.integers(1, high + 1, size=rng.integers(0, max_prefix + 1)))
    kind = str(rng.choice(kinds))
    low = prefix[-1] if prefix else 1
    value = None if kind == "infinity" else int(rng.integers(low, high + 6))
    return validate_point(float(rng.random()), prefix, TailSpec(kind, None, value))


def random_applicable_pair(rng, high=20, max_r=10):
    """Two all-finite CONST-tailed points, or two points infinite from the same index."""
    shared = rng.random() < 0.5
    length = int(rng.integers(1, 6))
    xs = sorted(int(v) for v in rng.integers(1, high - max_r + 1, size=length))
    ys = [v + int(rng.integers(0, max_r + 1)) for v in xs]
    ys = [max(ys[: i + 1]) for i in range(len(ys))]
    ys = [min(v, high) for v in ys]
    if shared:
        tail = TailSpec("infinity", length + 1)
        return (validate_point(float(rng.random()), xs, tail),
                validate_point(float(rng.random()), ys, tail))
    return (validate_point(float(rng.random()), xs[:-1], const(xs[-1])),
            validate_point(float(rng.random()), ys[:-1], const(ys[-1])))


def random_connected(rng):
    n = int(rng.integers(0, 6))
    vals = sorted(rng.random(n + 1), reverse=True)
    if rng.random() < 0.3:
        vals[-1] = 0.0
    if rng.random() < 0.2 and n:
        vals[0] = 1.0
    return connected_point(float(rng.random()), vals[:-1], vals[-1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
