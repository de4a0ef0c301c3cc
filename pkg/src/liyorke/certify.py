"""Evidence about pairs and sets of points.

Mixed pairs (exactly one point with an infinite tail) get a
:class:`PairCertificate`: finite times at which the pair is within ``eps``
and times at which it is at least ``1/2 - eps`` apart.  Pairs of the same
shape have a limit distance in closed form (:func:`predict_limit`), so they
are never scrambled; :func:`refute_scrambled_set` uses this to reject
candidate scrambled sets.

For a mixed pair with ``a`` infinite from index ``M`` and ``b`` finite, the
circle gap is asymptotically ``C - 2**(1-M) * harmonic_window(b_M, n)`` for a
computable constant ``C``.  Candidate times are therefore times where that
dominant window sits at ``C`` (close) or ``C + 1/2`` (far) mod 1; every
candidate is then checked with the full metric.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .core_space import (
    ARITH,
    INFINITY,
    INFINITY_TAIL,
    Point,
    coordinate,
    wrap,
)
from .dynamics import pair_distance_at
from .errors import BudgetExhausted, MixedShape, NotCertifiableShape
from .harmonic_engine import HitRequest, find_mod1_hit, harmonic_window

log = logging.getLogger(__name__)

ALL_FINITE = "ALL_FINITE"
SHARED_INFINITY_START = "SHARED_INFINITY_START"
VIOLATION = "VIOLATION"
STRUCTURALLY_ADMISSIBLE = "STRUCTURALLY_ADMISSIBLE"


def _dyadic_series(g, start: int, stop: int | None = None, settle: int | None = None,
                   tol: float = 1e-15) -> float:
    """``sum_{i >= start} 2**-i * g(i)``, up to ``stop`` (exclusive) if given.

    With ``settle``, ``g`` is constant from ``settle`` on and the rest is a
    geometric series.  Otherwise ``g`` may grow by at most one per index, so
    the remainder after ``i`` is below ``2**-i * (|g(i)| + 2)``.
    """
    terms = []
    i = start
    while True:
        if stop is not None and i >= stop:
            break
        if settle is not None and stop is None and i >= settle:
            terms.append(math.ldexp(g(i), -(i - 1)))
            break
        gi = g(i)
        terms.append(math.ldexp(gi, -i))
        if stop is None and settle is None and math.ldexp(abs(gi) + 2.0, -i) < tol:
            break
        i += 1
    return math.fsum(terms)


def _settle_index(*points: Point) -> int | None:
    """Index past which every pairwise quantity is constant, if any."""
    if any(p.tail.kind == ARITH for p in points):
        return None
    return max(p.tail.start for p in points)


def _gap_limit(a: int, b: int) -> float:
    """``lim_n [H-window(a, n) - H-window(b, n)]``."""
    if a <= b:
        return harmonic_window(a, b - a)
    return -harmonic_window(b, a - b)


# --- certificates for mixed pairs -------------------------------------------


@dataclass(frozen=True)
class PairCertificate:
    """Times at which a mixed pair is close or far apart.

    ``liminf_upper_bound`` is the largest distance recorded at a proximal
    time and ``limsup_lower_bound`` the smallest recorded at a separation
    time, so every listed time satisfies its bound.
    """

    proximal_times: tuple
    separation_times: tuple
    proximal_distances: tuple
    separation_distances: tuple
    epsilon: float
    budget: int
    M: int
    base: int
    offset: float

    @property
    def liminf_upper_bound(self) -> float:
        return max(self.proximal_distances, default=math.inf)

    @property
    def limsup_lower_bound(self) -> float:
        return min(self.separation_distances, default=0.0)

    @property
    def succeeded(self) -> bool:
        return (
            bool(self.proximal_times)
            and bool(self.separation_times)
            and self.liminf_upper_bound <= self.epsilon
            and self.limsup_lower_bound >= 0.5 - self.epsilon
        )


def mixed_orientation(x: Point, y: Point):
    """Return ``(a, b)`` with ``a`` the point with the infinite tail."""
    if x.has_infinity == y.has_infinity:
        raise NotCertifiableShape(
            "need exactly one point with an infinite tail; "
            "same-shape pairs have a limit distance (use predict_limit)"
        )
    return (x, y) if x.has_infinity else (y, x)


def circle_offset(a: Point, b: Point) -> float:
    """Constant ``C`` with ``a0^n - b0^n = C - 2**(1-M) H-window(b_M, n) + o(1)``, mod 1."""
    M = a.tail.start
    b_M = coordinate(b, M)
    head = _dyadic_series(lambda i: _gap_limit(coordinate(a, i), coordinate(b, i)), 1, stop=M)
    settle = None if b.tail.kind == ARITH else max(M, b.tail.start)
    tail = _dyadic_series(lambda i: harmonic_window(b_M, coordinate(b, i) - b_M), M,
                          settle=settle)
    return wrap(math.fsum([a.x0, -b.x0, head, tail]))


def certify_scrambled(x: Point, y: Point, eps: float = 1e-3, n_max: int = 10**7,
                      count: int = 3, tol: float = 1e-12) -> PairCertificate:
    """Find ``count`` proximal and ``count`` separation times for a mixed pair.

    Raises :class:`BudgetExhausted` (with the partial certificate attached)
    if the candidate times run past ``n_max``.
    """
    if not 0 < eps <= 0.1:
        raise ValueError(f"eps must lie in (0, 0.1], got {eps}")
    a, b = mixed_orientation(x, y)
    M = a.tail.start
    base = coordinate(b, M)
    C = circle_offset(a, b)
    found = {"close": ([], []), "far": ([], [])}

    def partial():
        (pt, pd), (st, sd) = found["close"], found["far"]
        return PairCertificate(tuple(pt), tuple(st), tuple(pd), tuple(sd),
                               eps, n_max, M, base, C)

    for kind, target in (("close", C), ("far", C + 0.5)):
        times, dists = found[kind]
        v = 0
        while len(times) < count:
            req = HitRequest(p=M - 1, m=base, target=target, epsilon=eps / 2,
                             n_max=n_max, start=v)
            try:
                v = find_mod1_hit(req)
            except BudgetExhausted as exc:
                raise BudgetExhausted(
                    f"{kind} times: found {len(times)} of {count} within n_max={n_max}",
                    partial=partial(),
                ) from exc
            d = pair_distance_at(x, y, v, tol)
            if (d <= eps) if kind == "close" else (d >= 0.5 - eps):
                times.append(v)
                dists.append(d)
        log.debug("%s times %s", kind, times)
    return partial()


# --- closed-form limits for same-shape pairs --------------------------------


@dataclass(frozen=True)
class LimitPrediction:
    """Closed-form ``lim_n D(F^n x, F^n y)``.

    ``r_values`` lists ``|x_i - y_i|`` up to the index where both tails have
    started; past it the gap is the constant ``tail_r`` (``None`` if it keeps
    changing or the sum stops before then).  ``weighted_r = sum_i 2**-i r_i``
    bounds how far the distance at time ``n`` is from the limit: at most
    ``weighted_r * (1/n + 1/n**2)``.
    """

    limit_circle_raw: float
    limit_D: float
    applicable: str
    r_values: dict = field(default_factory=dict)
    tail_r: int | None = None
    weighted_r: float = 0.0

    @property
    def max_r(self):
        if self.applicable == ALL_FINITE and self.tail_r is None:
            # an arithmetic tail can keep the gap growing
            return math.inf
        extra = [self.tail_r] if self.tail_r is not None else []
        return max([*self.r_values.values(), *extra], default=0)

    def convergence_bound(self, n: int) -> float:
        return self.weighted_r * (1.0 / n + 1.0 / n**2)


def predict_limit(x: Point, y: Point) -> LimitPrediction:
    if not x.has_infinity and not y.has_infinity:
        applicable = ALL_FINITE
        stop = None
        settle = _settle_index(x, y)
    elif x.has_infinity and y.has_infinity and x.tail.start == y.tail.start:
        applicable = SHARED_INFINITY_START
        stop = x.tail.start
        settle = None
    else:
        raise MixedShape(
            "limit formula needs both points all finite or both infinite from the "
            "same index; this pair may be scrambled (use certify_scrambled)"
        )

    def gap(i):
        return _gap_limit(coordinate(x, i), coordinate(y, i))

    def r(i):
        return abs(coordinate(x, i) - coordinate(y, i))

    total = _dyadic_series(gap, 1, stop=stop, settle=settle)
    raw = wrap(abs(math.fsum([x.x0, -y.x0, total])))
    explicit_end = stop if stop is not None else (settle or max(x.tail.start, y.tail.start))
    r_values = {i: r(i) for i in range(1, explicit_end)}
    tail_r = r(settle) if settle is not None else None
    weighted = _dyadic_series(r, 1, stop=stop, settle=settle)
    return LimitPrediction(raw, min(raw, 1.0 - raw), applicable, r_values, tail_r, weighted)


# --- scrambled-set refutation -----------------------------------------------


@dataclass(frozen=True)
class RefutationReport:
    verdict: str
    l_values: tuple
    pair: tuple | None = None
    prediction: LimitPrediction | None = None
    horizon: int | None = None
    simulated_D: float | None = None
    check_passed: bool | None = None


def first_infinite_index(p: Point):
    return p.tail.start if p.tail.kind == INFINITY_TAIL else None


def refute_scrambled_set(points, eps: float = 1e-4, n_max: int = 10**6) -> RefutationReport:
    """Reject ``points`` as a scrambled set, or report it structurally admissible.

    A set is refuted by the first pair (in index order) that is either all
    finite on both sides or shares its first infinite index; such a pair has
    a limit distance and so is not scrambled.  The prediction is checked
    against simulation at ``n_max`` with slack ``eps`` plus the convergence
    bound.  A set with pairwise distinct first infinite indices and at most
    one all-finite point is the countable shape a scrambled set must have.
    """
    points = list(points)
    if len(points) < 2:
        raise ValueError("need at least two points")
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    ls = tuple(first_infinite_index(p) for p in points)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if ls[i] == ls[j]:
                pred = predict_limit(points[i], points[j])
                d = pair_distance_at(points[i], points[j], n_max)
                ok = abs(d - pred.limit_D) <= eps + pred.convergence_bound(n_max)
                return RefutationReport(VIOLATION, ls, (i, j), pred, n_max, d, ok)
    return RefutationReport(STRUCTURALLY_ADMISSIBLE, ls)


# --- JSON reports -----------------------------------------------------------


def fmt(v) -> str | None:
    """Decimal string with 15 significant digits."""
    if v is None:
        return None
    if v == INFINITY:
        return "inf"
    return format(float(v), ".15g")


def prediction_to_json(pred: LimitPrediction) -> dict:
    return {
        "applicable": pred.applicable,
        "limit_circle_raw": fmt(pred.limit_circle_raw),
        "limit_D": fmt(pred.limit_D),
        "r_values": {str(i): r for i, r in pred.r_values.items()},
        "tail_r": pred.tail_r,
        "weighted_r": fmt(pred.weighted_r),
    }


def certificate_to_json(cert: PairCertificate, verdict: str = "scrambled-evidence") -> dict:
    return {
        "verdict": verdict,
        "times": {
            "proximal": list(cert.proximal_times),
            "separation": list(cert.separation_times),
        },
        "distances": {
            "proximal": [fmt(d) for d in cert.proximal_distances],
            "separation": [fmt(d) for d in cert.separation_distances],
        },
        "bounds": {
            "liminf_upper_bound": fmt(cert.liminf_upper_bound),
            "limsup_lower_bound": fmt(cert.limsup_lower_bound),
            "epsilon": fmt(cert.epsilon),
            "budget": cert.budget,
        },
        "dominant": {"M": cert.M, "base": cert.base, "offset": fmt(cert.offset)},
        "limit": None,
    }


def limit_to_json(pred: LimitPrediction) -> dict:
    return {"verdict": "limit-exists", "times": [], "bounds": {},
            "limit": prediction_to_json(pred)}


def report_to_json(rep: RefutationReport) -> dict:
    out = {
        "verdict": rep.verdict,
        "l_values": [l if l is not None else "finite" for l in rep.l_values],
        "times": [rep.horizon] if rep.horizon is not None else [],
        "bounds": {},
        "limit": None,
    }
    if rep.prediction is not None:
        out["pair"] = list(rep.pair)
        out["limit"] = prediction_to_json(rep.prediction)
        out["bounds"] = {
            "simulated_D": fmt(rep.simulated_D),
            "convergence_bound": fmt(rep.prediction.convergence_bound(rep.horizon)),
            "check_passed": rep.check_passed,
        }
    return out
