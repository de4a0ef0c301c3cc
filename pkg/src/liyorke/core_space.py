"""Points of the phase space, coordinate metrics and the aggregate metric.

A point is a circle coordinate ``x0`` in ``[0, 1)`` followed by a
nondecreasing sequence in ``{1, 2, ...} U {inf}``.  Only finitely describable
sequences are supported: a finite prefix followed by one of three tails

* ``const``    -- ``x_i = K`` for every ``i >= start``
* ``arith``    -- ``x_i = a + (i - start)`` for every ``i >= start``
* ``infinity`` -- ``x_i = inf`` for every ``i >= start``

Infinite coordinates are represented by ``math.inf`` so that ``inf + 1`` and
ordering behave as required without special cases.  Points are kept in a
canonical form (the prefix never ends with a value the tail could absorb),
which makes ``==`` on :class:`Point` coincide with equality of sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Sequence, Union

from .errors import InfinityInPrefix, LiYorkeError, NotNondecreasing, TailMismatch

INFINITY = math.inf

ExtNat = Union[int, float]

CONST = "const"
ARITH = "arith"
INFINITY_TAIL = "infinity"
TAIL_KINDS = (CONST, ARITH, INFINITY_TAIL)


class PointFormatError(LiYorkeError):
    """Malformed point description (bad JSON field, wrong type, ...)."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def wrap(value: float) -> float:
    """Reduce a real number to ``[0, 1)``."""
    r = value % 1.0
    # a tiny negative input rounds to exactly 1.0
    return 0.0 if r >= 1.0 else r


def circle_dist(a: float, b: float) -> float:
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def reciprocal(v: ExtNat) -> float:
    return 0.0 if v == INFINITY else 1.0 / v


def successor(v: ExtNat) -> ExtNat:
    return v + 1


def coordinate_dist(a: ExtNat, b: ExtNat) -> float:
    """The metric on ``N U {inf}``: ``|1/a - 1/b|``."""
    return abs(reciprocal(a) - reciprocal(b))


@dataclass(frozen=True)
class TailSpec:
    kind: str
    start: int
    value: int | None = None

    def at(self, i: int) -> ExtNat:
        if self.kind == INFINITY_TAIL:
            return INFINITY
        if self.kind == CONST:
            return self.value
        return self.value + (i - self.start)

    @property
    def first(self) -> ExtNat:
        return self.at(self.start)

    def advanced(self, n: int) -> TailSpec:
        if self.kind == INFINITY_TAIL or n == 0:
            return self
        return TailSpec(self.kind, self.start, self.value + n)


def const(K: int, start: int | None = None) -> TailSpec:
    return TailSpec(CONST, start, K)


def arith(a: int, start: int | None = None) -> TailSpec:
    return TailSpec(ARITH, start, a)


def infinity(start: int | None = None) -> TailSpec:
    return TailSpec(INFINITY_TAIL, start)


@dataclass(frozen=True)
class Point:
    """A point of the phase space in canonical form.

    Build points with :func:`validate_point`; the constructor itself does not
    check anything.
    """

    x0: float
    prefix: tuple
    tail: TailSpec

    def coordinate(self, i: int) -> ExtNat:
        return coordinate(self, i)

    @property
    def has_infinity(self) -> bool:
        return self.tail.kind == INFINITY_TAIL

    @property
    def first_infinite_index(self) -> int | None:
        """Index of the first infinite coordinate, ``None`` if all are finite."""
        return self.tail.start if self.has_infinity else None

    def realize(self, depth: int) -> list:
        """Coordinates ``1..depth`` as an explicit list."""
        return [coordinate(self, i) for i in range(1, depth + 1)]


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_positive(v, field):
    if not _is_int(v) or v < 1:
        raise PointFormatError(field, f"expected a positive integer, got {v!r}")


def validate_point(x0: float, prefix: Sequence, tail: TailSpec) -> Point:
    """Check the ordering constraints and return the canonical :class:`Point`.

    ``tail.start`` may be ``None``, meaning the tail starts right after the
    prefix.  Trailing infinities in the prefix are folded into an infinite
    tail; an infinity followed by a finite value raises
    :class:`InfinityInPrefix`.
    """
    try:
        x0 = float(x0)
    except (TypeError, ValueError):
        raise PointFormatError("x0", f"not a real number: {x0!r}") from None
    if not math.isfinite(x0):
        raise PointFormatError("x0", "must be finite")
    if tail.kind not in TAIL_KINDS:
        raise PointFormatError("tail.kind", f"unknown tail kind {tail.kind!r}")

    prefix = list(prefix)
    start = len(prefix) + 1 if tail.start is None else tail.start
    if not _is_int(start) or start < 1:
        raise PointFormatError("tail.start", f"expected an index >= 1, got {start!r}")
    if start != len(prefix) + 1:
        raise TailMismatch(
            f"prefix has {len(prefix)} values but the tail starts at index {start}"
        )
    if tail.kind != INFINITY_TAIL:
        _check_positive(tail.value, "tail.value")

    if INFINITY in prefix:
        first_inf = prefix.index(INFINITY)
        if tail.kind != INFINITY_TAIL or any(v != INFINITY for v in prefix[first_inf:]):
            raise InfinityInPrefix(
                f"coordinate {first_inf + 1} is infinite but a later coordinate is finite"
            )
        prefix = prefix[:first_inf]
        start = first_inf + 1

    for i, v in enumerate(prefix, start=1):
        _check_positive(v, f"prefix[{i - 1}]")
        if i > 1 and v < prefix[i - 2]:
            raise NotNondecreasing(
                f"coordinate {i} = {v} is smaller than coordinate {i - 1} = {prefix[i - 2]}"
            )
    tail = TailSpec(tail.kind, start, tail.value)
    if prefix and tail.first < prefix[-1]:
        raise TailMismatch(
            f"last prefix value {prefix[-1]} exceeds tail value {tail.first}"
        )

    # canonical form: let the tail absorb matching prefix values
    while prefix:
        if tail.kind == CONST and prefix[-1] == tail.value:
            tail = TailSpec(CONST, tail.start - 1, tail.value)
        elif tail.kind == ARITH and prefix[-1] == tail.value - 1:
            tail = TailSpec(ARITH, tail.start - 1, tail.value - 1)
        else:
            break
        prefix.pop()
    return Point(wrap(x0), tuple(prefix), tail)


def coordinate(p: Point, i: int) -> ExtNat:
    if i < p.tail.start:
        return p.prefix[i - 1]
    return p.tail.at(i)


def _remainder_index(tol: float) -> int:
    """Smallest ``N`` with ``2**-N <= tol``."""
    return max(1, math.ceil(-math.log2(tol)))


def metric_D(a: Point, b: Point, tol: float = 1e-15) -> float:
    """``D(a, b) = sum_i d_i(a_i, b_i) / 2**i`` to within ``tol``.

    Past the longer prefix both points are on their tails.  Two non-arithmetic
    tails give a constant coordinate distance, summed as a geometric series;
    otherwise the series is cut at ``N`` with remainder at most ``2**-N``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    terms = [circle_dist(a.x0, b.x0)]
    s = max(a.tail.start, b.tail.start)
    for i in range(1, s):
        terms.append(coordinate_dist(coordinate(a, i), coordinate(b, i)) / 2.0**i)
    if a.tail.kind != ARITH and b.tail.kind != ARITH:
        terms.append(coordinate_dist(a.tail.at(s), b.tail.at(s)) / 2.0 ** (s - 1))
    else:
        for i in range(s, max(s, _remainder_index(tol)) + 1):
            terms.append(coordinate_dist(a.tail.at(i), b.tail.at(i)) / 2.0**i)
    return math.fsum(terms)


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Product neighbourhood: circle ball of radius ``delta`` and coordinates
    pinned below ``free_index``.

    An infinite coordinate cannot be pinned (``inf`` is not isolated), so at
    an infinite coordinate of the centre the constraint is the ``d_i``-ball of
    radius ``delta`` instead: the other point needs ``1/y_i < delta``.
    """

    delta: float
    free_index: int = 1

    def __post_init__(self):
        if not 0 < self.delta <= 0.5:
            raise ValueError(f"delta must lie in (0, 1/2], got {self.delta}")
        if not _is_int(self.free_index) or self.free_index < 1:
            raise ValueError(f"free_index must be >= 1, got {self.free_index}")


def in_neighborhood(y: Point, x: Point, U: NeighborhoodSpec) -> bool:
    if circle_dist(y.x0, x.x0) >= U.delta:
        return False
    for i in range(1, U.free_index):
        xi, yi = coordinate(x, i), coordinate(y, i)
        if xi == INFINITY:
            if reciprocal(yi) >= U.delta:
                return False
        elif xi != yi:
            return False
    return True


# --- JSON point schema ------------------------------------------------------


def format_real(v: float) -> str:
    """Shortest decimal string that parses back to the same float."""
    return repr(float(v))


def parse_real(s, field: str) -> float:
    if isinstance(s, bool):
        raise PointFormatError(field, f"expected a decimal string, got {s!r}")
    if isinstance(s, (int, float)):
        return float(s)
    if not isinstance(s, str):
        raise PointFormatError(field, f"expected a decimal string, got {s!r}")
    try:
        d = Decimal(s.strip())
    except InvalidOperation:
        raise PointFormatError(field, f"not a decimal number: {s!r}") from None
    if not d.is_finite():
        raise PointFormatError(field, f"not a finite number: {s!r}")
    return float(d)


def point_to_json(p: Point) -> dict:
    tail = {"kind": p.tail.kind, "start": p.tail.start}
    if p.tail.kind == CONST:
        tail["value"] = p.tail.value
    elif p.tail.kind == ARITH:
        tail["a"] = p.tail.value
    return {"x0": format_real(p.x0), "prefix": list(p.prefix), "tail": tail}


def point_from_json(obj) -> Point:
    if not isinstance(obj, dict):
        raise PointFormatError("point", f"expected an object, got {type(obj).__name__}")
    for key in ("x0", "prefix", "tail"):
        if key not in obj:
            raise PointFormatError(key, "missing field")
    x0 = parse_real(obj["x0"], "x0")
    prefix = obj["prefix"]
    if not isinstance(prefix, list):
        raise PointFormatError("prefix", "expected a list of integers")
    prefix = [INFINITY if v in ("inf", "infinity") else v for v in prefix]
    for i, v in enumerate(prefix):
        if v != INFINITY:
            _check_positive(v, f"prefix[{i}]")
    t = obj["tail"]
    if not isinstance(t, dict):
        raise PointFormatError("tail", "expected an object")
    kind = t.get("kind")
    if kind not in TAIL_KINDS:
        raise PointFormatError("tail.kind", f"expected one of {TAIL_KINDS}, got {kind!r}")
    start = t.get("start")
    if kind == CONST:
        if "value" not in t:
            raise PointFormatError("tail.value", "missing field")
        tail = TailSpec(CONST, start, t["value"])
    elif kind == ARITH:
        if "a" not in t:
            raise PointFormatError("tail.a", "missing field")
        _check_positive(t["a"], "tail.a")
        tail = TailSpec(ARITH, start, t["a"])
    else:
        tail = TailSpec(INFINITY_TAIL, start)
    return validate_point(x0, prefix, tail)
