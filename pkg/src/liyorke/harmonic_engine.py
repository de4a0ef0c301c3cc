"""Harmonic sums, their reductions mod 1 and index searches on them.

Everything the dynamics needs reduces to windows of the harmonic series,
``harmonic_window(k, n) = 1/k + 1/(k+1) + ... + 1/(k+n-1)``.  Short windows
are summed directly; long ones are differences of harmonic numbers, taken
from a compensated table up to ``10**4`` and from the asymptotic expansion
above it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core_space import circle_dist, wrap
from .errors import BudgetExhausted, OrderViolated

log = logging.getLogger(__name__)

EULER_GAMMA = 0.577215664901532860606512090082

DIRECT_LIMIT = 10**4
# windows this short are summed term by term
SHORT_WINDOW = 64


@lru_cache(maxsize=1)
def _harmonic_table() -> np.ndarray:
    # Neumaier running sum; each entry is correct to about one ulp
    table = np.empty(DIRECT_LIMIT + 1)
    s = c = 0.0
    table[0] = 0.0
    for k in range(1, DIRECT_LIMIT + 1):
        x = 1.0 / k
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        table[k] = s + c
    return table


def _asymptotic_tail(n: float) -> float:
    """``H_n - ln n - gamma`` for large ``n``; truncation error below ``1/(252 n**6)``."""
    r = 1.0 / n
    r2 = r * r
    return 0.5 * r - r2 / 12.0 + r2 * r2 / 120.0


def harmonic_number(n: int) -> float:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n <= DIRECT_LIMIT:
        return float(_harmonic_table()[n])
    return math.log(n) + EULER_GAMMA + _asymptotic_tail(n)


def harmonic_window(k: int, n: int) -> float:
    """``sum(1/(k+j) for j in range(n))``, absolute error well below ``2e-13``."""
    if k < 1 or n < 0:
        raise ValueError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    if n <= SHORT_WINDOW:
        return math.fsum(1.0 / (k + j) for j in range(n))
    lo, hi = k - 1, k + n - 1
    if lo > DIRECT_LIMIT:
        # both ends asymptotic: the constant cancels, keep the log accurate
        return math.log1p(n / lo) + (_asymptotic_tail(hi) - _asymptotic_tail(lo))
    return harmonic_number(hi) - harmonic_number(lo)


def scaled_window_mod1(p: int, m: int, v: int) -> float:
    """``(2**-p * harmonic_window(m, v)) mod 1``."""
    return wrap(math.ldexp(harmonic_window(m, v), -p))


@dataclass(frozen=True)
class HitRequest:
    """Search for ``v`` with ``(2**-p * harmonic_window(m, v)) mod 1`` within
    ``epsilon`` of ``target``.

    Only ``start < v <= n_max`` is searched; ``start`` lets a caller resume
    after an earlier hit.
    """

    p: int
    m: int
    target: float
    epsilon: float
    n_max: int
    start: int = 0

    def __post_init__(self):
        if self.p < 0 or self.m < 1:
            raise ValueError(f"need p >= 0 and m >= 1, got p={self.p}, m={self.m}")
        if not 0 < self.epsilon < 0.25:
            raise ValueError(f"epsilon must lie in (0, 1/4), got {self.epsilon}")
        if self.n_max < 1 or self.start < 0:
            raise ValueError("need n_max >= 1 and start >= 0")


def find_mod1_hit(req: HitRequest) -> int:
    """Smallest ``v`` in ``(req.start, req.n_max]`` that hits the target.

    One forward sweep: the running sum is advanced in vectorised chunks and
    re-anchored on :func:`harmonic_window` at every chunk boundary, so rounding
    drift never spans more than one chunk.  A candidate is accepted only after
    direct re-evaluation.
    """
    target = wrap(req.target)
    scale = math.ldexp(1.0, -req.p)
    v = req.start
    chunk = 1024
    while v < req.n_max:
        c = min(chunk, req.n_max - v)
        base = harmonic_window(req.m, v)
        steps = np.cumsum(1.0 / np.arange(req.m + v, req.m + v + c, dtype=float))
        vals = np.mod((base + steps) * scale, 1.0)
        d = np.abs(vals - target)
        d = np.minimum(d, 1.0 - d)
        for idx in np.flatnonzero(d < req.epsilon):
            cand = v + 1 + int(idx)
            if circle_dist(scaled_window_mod1(req.p, req.m, cand), target) < req.epsilon:
                log.debug("hit p=%d m=%d target=%.6g eps=%.3g: v=%d", req.p, req.m,
                          target, req.epsilon, cand)
                return cand
        v += c
        chunk = min(2 * chunk, 1 << 16)
    raise BudgetExhausted(
        f"no v in ({req.start}, {req.n_max}] brings 2^-{req.p} * H-window({req.m}, v) "
        f"within {req.epsilon} of {target} mod 1"
    )


def delta_shift(x_M: int, x_iM: int) -> float:
    """Circle offset ``(sum_{j < x_iM - x_M} 1/(x_M + j)) mod 1`` used by the
    all-finite witness."""
    if x_iM < x_M:
        raise OrderViolated(f"need x_iM >= x_M, got {x_iM} < {x_M}")
    if x_iM == x_M:
        return 0.0
    return wrap(harmonic_window(x_M, x_iM - x_M))


def gamma_residual(x_M: int, x_iM: int, n: int) -> float:
    """``(sum_{j=x_M}^{x_iM-1} 1/(n+j)) mod 1``; at most ``(x_iM - x_M)/n``."""
    if x_iM < x_M:
        raise OrderViolated(f"need x_iM >= x_M, got {x_iM} < {x_M}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if x_iM == x_M:
        return 0.0
    return wrap(harmonic_window(n + x_M, x_iM - x_M))
