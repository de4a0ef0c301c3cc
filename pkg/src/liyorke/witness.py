"""Construction of a scrambled partner ``y`` inside a neighbourhood of ``x``.

If ``x`` has an infinite tail from index ``M``, the partner copies ``x``
below ``M`` and continues with a large constant ``K`` (case I).  If ``x`` is
all finite, the partner copies ``x`` below ``M``, goes to infinity from
``M`` on, and has its circle coordinate shifted so that the rotation it no
longer gets from the tail is compensated (case II).  Either way exactly one
point of the pair has an infinite tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core_space import (
    CONST,
    INFINITY_TAIL,
    NeighborhoodSpec,
    Point,
    TailSpec,
    coordinate,
    validate_point,
    wrap,
)
from .errors import LiYorkeError, NotCase1, NotCase2
from .harmonic_engine import delta_shift

DEFAULT_MAX_INDEX = 12


@dataclass(frozen=True)
class WitnessParams:
    case: int
    M: int
    delta: float
    K: int | None = None
    # sum_i 2**-(i+M) * delta_i, the circle shift of case II
    shift: float = 0.0


def _ceil_ratio(num: Fraction, delta: float) -> int:
    return math.ceil(num / Fraction(delta))


def witness_case1(x: Point, U: NeighborhoodSpec):
    """Partner ``y = (x_0, ..., x_{M-1}, K, K, ...)`` for ``x`` with an infinite tail.

    ``M`` is the first infinite index of ``x`` and
    ``K = max(x_{M-1}, ceil(2**(1-M) / delta) + 1)``, which keeps
    ``D(x, y) = 2**(1-M) / K`` strictly below ``delta``.  If ``U`` pins
    coordinates at or past ``M`` (infinite in ``x``), ``K`` is also raised
    above ``1/delta`` so it lies in those coordinate balls.
    """
    if x.tail.kind != INFINITY_TAIL:
        raise NotCase1("x has no infinite coordinate")
    M = x.tail.start
    last = x.prefix[-1] if x.prefix else 1
    K = max(last, _ceil_ratio(Fraction(2) ** (1 - M), U.delta) + 1)
    if U.free_index > M:
        # same float test as in_neighborhood, so the containment check agrees
        K = max(K, math.floor(1 / U.delta))
        while 1.0 / K >= U.delta:
            K += 1
    y = validate_point(x.x0, x.prefix, TailSpec(CONST, M, K))
    return y, WitnessParams(case=1, M=M, delta=U.delta, K=K)


def choose_case2_index(U: NeighborhoodSpec, max_index: int | None = DEFAULT_MAX_INDEX) -> int:
    """Smallest ``M >= U.free_index`` with ``2**-M < delta``."""
    M = U.free_index
    while Fraction(1, 2**M) >= Fraction(U.delta):
        M += 1
    if max_index is not None and M > max_index:
        raise LiYorkeError(
            f"delta={U.delta} needs free index {M} > {max_index}; raise max_index"
        )
    return M


def case2_shift(x: Point, M: int, tol: float = 1e-15) -> float:
    """``sum_{i>=1} 2**-(i+M) * delta_shift(x_M, x_{i+M})``.

    Exact past the start of a constant tail, where every ``delta_i`` is the
    same; cut with remainder ``<= 2**-(M+N)`` for arithmetic tails.
    """
    x_M = coordinate(x, M)
    terms = []
    i = 1
    while i + M < x.tail.start:
        terms.append(math.ldexp(delta_shift(x_M, coordinate(x, i + M)), -(i + M)))
        i += 1
    if x.tail.kind == CONST:
        # sum_{i' >= i} 2**-(i'+M) c = c * 2**-(i+M-1)
        terms.append(math.ldexp(delta_shift(x_M, x.tail.value), -(i + M - 1)))
    else:
        cut = max(i, math.ceil(-math.log2(tol)) - M)
        for j in range(i, cut + 1):
            terms.append(math.ldexp(delta_shift(x_M, coordinate(x, j + M)), -(j + M)))
    return math.fsum(terms)


def witness_case2(x: Point, U: NeighborhoodSpec, max_index: int | None = DEFAULT_MAX_INDEX):
    """Partner for an all-finite ``x``: copy below ``M``, infinite from ``M``,
    circle coordinate moved back by :func:`case2_shift` (at most ``2**-M``)."""
    if x.tail.kind == INFINITY_TAIL:
        raise NotCase2("x has an infinite coordinate")
    M = choose_case2_index(U, max_index)
    shift = case2_shift(x, M)
    prefix = [coordinate(x, i) for i in range(1, M)]
    y = validate_point(wrap(x.x0 - shift), prefix, TailSpec(INFINITY_TAIL, M))
    return y, WitnessParams(case=2, M=M, delta=U.delta, shift=shift)


def ly_witness(x: Point, U: NeighborhoodSpec, max_index: int | None = DEFAULT_MAX_INDEX):
    if x.tail.kind == INFINITY_TAIL:
        return witness_case1(x, U)
    return witness_case2(x, U, max_index)

