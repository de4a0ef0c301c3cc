"""Seeded random inputs for sweeps: a point plus a neighbourhood.

The ranges keep certification cheap: free indices up to 4 and coordinates up
to 50, so hit times stay far below the default budget of ``10**7``.
"""

from __future__ import annotations

import numpy as np

from .core_space import NeighborhoodSpec, Point, TailSpec, const, validate_point

CASE1_DELTAS = (0.25, 0.05)
# 0.1 still gives free index 4, the deepest the default sweep goes
CASE2_DELTAS = (0.25, 0.1)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` of a sweep."""
    return np.random.default_rng([seed, index])


def _sorted_ints(rng, count: int, high: int) -> list:
    return sorted(int(v) for v in rng.integers(1, high + 1, size=count))


def random_case1_input(rng: np.random.Generator, max_start: int = 4, high: int = 50):
    """Point infinite from a random index in ``1..max_start``, with a neighbourhood."""
    start = int(rng.integers(1, max_start + 1))
    x = validate_point(float(rng.random()), _sorted_ints(rng, start - 1, high),
                       TailSpec("infinity", start))
    delta = float(rng.choice(CASE1_DELTAS))
    U = NeighborhoodSpec(delta, int(rng.integers(1, start + 1)))
    return x, U


def random_case2_input(rng: np.random.Generator, max_prefix: int = 3, high: int = 50):
    """All-finite point with a constant tail, with a neighbourhood."""
    vals = _sorted_ints(rng, int(rng.integers(0, max_prefix + 1)) + 1, high)
    x = validate_point(float(rng.random()), vals[:-1], const(vals[-1]))
    delta = float(rng.choice(CASE2_DELTAS))
    U = NeighborhoodSpec(delta, int(rng.integers(1, 3)))
    return x, U


def random_sweep_input(rng: np.random.Generator) -> tuple[int, Point, NeighborhoodSpec]:
    case = 1 if rng.random() < 0.5 else 2
    x, U = random_case1_input(rng) if case == 1 else random_case2_input(rng)
    return case, x, U
