"""The skew-product map ``F`` on points, its fast-forward, and the connected
extension ``G``.

``F`` rotates the circle coordinate by ``sum_i 2**-i / x_i`` and adds one to
every finite coordinate.  After ``n`` steps the accumulated rotation is
``sum_i 2**-i * harmonic_window(x_i, n)``, which is how :func:`evolve` jumps
straight to time ``n`` instead of iterating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core_space import (
    ARITH,
    CONST,
    Point,
    circle_dist,
    metric_D,
    wrap,
)
from .errors import DecompositionFailed
from .harmonic_engine import harmonic_window


# large enough that stepping an orbit 10**4 times never evicts its own values
@lru_cache(maxsize=1 << 16)
def _arith_weight_sum(a: int) -> float:
    # sum_{j>=0} 2**-j / (a + j); the 64-term cut leaves < 2**-63
    return math.fsum(math.ldexp(1.0 / (a + j), -j) for j in range(64))


def rotation(p: Point) -> float:
    """One-step circle increment ``sum_{i>=1} 2**-i / x_i`` (not reduced)."""
    terms = [math.ldexp(1.0 / v, -i) for i, v in enumerate(p.prefix, start=1)]
    t = p.tail
    if t.kind == CONST:
        terms.append(math.ldexp(1.0 / t.value, -(t.start - 1)))
    elif t.kind == ARITH:
        terms.append(math.ldexp(_arith_weight_sum(t.value), -t.start))
    return math.fsum(terms)


def step(p: Point) -> Point:
    return Point(
        wrap(p.x0 + rotation(p)),
        tuple(v + 1 for v in p.prefix),
        p.tail.advanced(1),
    )


def advance_coordinates(p: Point, n: int) -> Point:
    """Coordinates moved ``n`` steps forward, circle coordinate untouched."""
    return Point(p.x0, tuple(v + n for v in p.prefix), p.tail.advanced(n))


def _arith_cut(start: int, n: int, tol: float) -> int:
    # every window is below 1 + ln(1+n); cut once the weighted remainder is < tol/2
    bound = 1.0 + math.log1p(n)
    return max(0, math.ceil(math.log2(2.0 * bound / tol)) - start)


def drift(p: Point, n: int, tol: float = 1e-12) -> float:
    """Accumulated circle rotation over ``n`` steps, ``sum_i 2**-i * H-window(x_i, n)``."""
    terms = [math.ldexp(harmonic_window(v, n), -i) for i, v in enumerate(p.prefix, start=1)]
    t = p.tail
    if t.kind == CONST:
        terms.append(math.ldexp(harmonic_window(t.value, n), -(t.start - 1)))
    elif t.kind == ARITH:
        for j in range(_arith_cut(t.start, n, tol) + 1):
            terms.append(math.ldexp(harmonic_window(t.value + j, n), -(t.start + j)))
    return math.fsum(terms)


def evolve(p: Point, n: int, tol: float = 1e-12) -> Point:
    """``F**n(p)`` by fast-forward; circle coordinate within ``tol``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return p
    q = advance_coordinates(p, n)
    return Point(wrap(math.fsum([p.x0, drift(p, n, tol)])), q.prefix, q.tail)


def pair_distance_at(x: Point, y: Point, n: int, tol: float = 1e-12) -> float:
    """``D(F**n x, F**n y)`` with total error at most ``tol``."""
    return metric_D(evolve(x, n, tol / 4), evolve(y, n, tol / 4), tol / 2)


# --- connected extension ----------------------------------------------------


@dataclass(frozen=True)
class ConnectedPoint:
    """Point of ``S x H`` with a nonincreasing coordinate sequence.

    ``coords`` holds indices ``1..len(coords)``; every later coordinate equals
    ``tail`` (``0.0`` is the zero tail).
    """

    z0: float
    coords: tuple
    tail: float = 0.0

    @property
    def start(self) -> int:
        return len(self.coords) + 1

    def coordinate(self, i: int) -> float:
        return self.coords[i - 1] if i < self.start else self.tail


def connected_point(z0: float, coords, tail: float = 0.0) -> ConnectedPoint:
    seq = [float(c) for c in coords] + [float(tail)]
    for i, c in enumerate(seq, start=1):
        if not 0.0 <= c <= 1.0:
            raise DecompositionFailed(f"coordinate {i} = {c} is outside [0, 1]")
        if i > 1 and c > seq[i - 2]:
            raise ValueError(f"coordinates must be nonincreasing (index {i})")
    return ConnectedPoint(wrap(z0), tuple(seq[:-1]), seq[-1])


def embed(p: Point) -> ConnectedPoint:
    """Image of ``p`` under ``k -> 1/k``, ``inf -> 0``."""
    if p.tail.kind == ARITH:
        raise ValueError("arithmetic tails have no finite connected-point description")
    tail = 0.0 if p.tail.kind != CONST else 1.0 / p.tail.value
    return ConnectedPoint(p.x0, tuple(1.0 / v for v in p.prefix), tail)


def decompose(x: float) -> tuple:
    """Write ``x`` in ``(0, 1]`` as ``1/k + t*(1/(k-1) - 1/k)`` with ``k >= 2``, ``t`` in ``(0, 1]``.

    ``x = 1/k`` exactly decomposes as ``(k + 1, 1)``.
    """
    if not 0.0 < x <= 1.0:
        raise DecompositionFailed(f"cannot decompose {x}: outside (0, 1]")
    k = math.floor(1.0 / x) + 1
    # the float nearest 1/(k-1) is the breakpoint itself
    t = 1.0 if x == 1.0 / (k - 1) else (x - 1.0 / k) * k * (k - 1)
    if t <= 0.0:
        k, t = k + 1, 1.0
    return k, min(t, 1.0)


def recompose(k: int, t: float) -> float:
    return 1.0 / k + t * (1.0 / (k - 1) - 1.0 / k)


def g_coordinate(x: float) -> float:
    if x == 0.0:
        return 0.0
    if not 0.0 <= x <= 1.0:
        raise DecompositionFailed(f"coordinate {x} is outside [0, 1]")
    k, t = decompose(x)
    return 1.0 / (k + 1) + t * (1.0 / k - 1.0 / (k + 1))


def g_step(z: ConnectedPoint) -> ConnectedPoint:
    terms = [z.z0]
    terms += [math.ldexp(c, -i) for i, c in enumerate(z.coords, start=1)]
    terms.append(math.ldexp(z.tail, -(z.start - 1)))
    return ConnectedPoint(
        wrap(math.fsum(terms)),
        tuple(g_coordinate(c) for c in z.coords),
        g_coordinate(z.tail),
    )


def connected_distance(a: ConnectedPoint, b: ConnectedPoint) -> float:
    """Product metric on ``S x H`` (circle distance plus weighted coordinate gaps)."""
    s = max(a.start, b.start)
    terms = [circle_dist(a.z0, b.z0)]
    terms += [math.ldexp(abs(a.coordinate(i) - b.coordinate(i)), -i) for i in range(1, s)]
    terms.append(math.ldexp(abs(a.tail - b.tail), -(s - 1)))
    return math.fsum(terms)

