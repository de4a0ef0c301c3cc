"""Acceptance criteria, one test per criterion.

Each test prints a ``PASS``/``FAIL`` line (also collected into the pytest
terminal summary).  Run standalone with ``python tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from liyorke.certify import (
    STRUCTURALLY_ADMISSIBLE,
    VIOLATION,
    certify_scrambled,
    predict_limit,
    refute_scrambled_set,
)
from liyorke.core_space import (
    TailSpec,
    circle_dist,
    const,
    coordinate,
    infinity,
    metric_D,
    validate_point,
    wrap,
)
from liyorke.dynamics import embed, evolve, g_step, pair_distance_at, step
from liyorke.errors import BudgetExhausted
from liyorke.harmonic_engine import (
    HitRequest,
    delta_shift,
    find_mod1_hit,
    gamma_residual,
    harmonic_window,
)
from liyorke.sampling import random_case1_input, random_case2_input, sample_rng
from liyorke.witness import ly_witness

from conftest import random_applicable_pair, random_connected, random_point
from oracles import direct_window, explicit_metric, naive_orbit

SEED = 2024
RESULTS = {}


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS[number] = line
    print(line)
    return ok


# 1 ---------------------------------------------------------------------------


def criterion_1():
    eps, n_max = 1e-3, 10**7
    started = time.perf_counter()
    failures, worst_inf, worst_sup = [], 0.0, 1.0
    for case, make in ((1, random_case1_input), (2, random_case2_input)):
        for i in range(50):
            x, U = make(sample_rng(SEED + case, i))
            y, _ = ly_witness(x, U)
            try:
                cert = certify_scrambled(x, y, eps, n_max)
            except BudgetExhausted:
                failures.append((case, i, "budget"))
                continue
            worst_inf = max(worst_inf, cert.liminf_upper_bound)
            worst_sup = min(worst_sup, cert.limsup_lower_bound)
            if not (cert.liminf_upper_bound <= eps and cert.limsup_lower_bound >= 0.5 - eps):
                failures.append((case, i, "bounds"))
    elapsed = time.perf_counter() - started
    ok = not failures and elapsed <= 60
    return ok, (f"100 witness pairs, worst liminf bound {worst_inf:.2e}, "
                f"worst limsup bound {worst_sup:.6f}, {elapsed:.1f}s, failures {failures}")


# 2 ---------------------------------------------------------------------------


def criterion_2():
    n = 10**6
    rng = np.random.default_rng(SEED)
    worst, bad = 0.0, 0
    for _ in range(100):
        x, y = random_applicable_pair(rng)
        pred = predict_limit(x, y)
        err = abs(pred.limit_D - pair_distance_at(x, y, n))
        worst = max(worst, err)
        bad += err > 1e-4 + pred.max_r / n
    hand = [
        ((validate_point(0, [], const(1, 1)), validate_point(0, [], const(3, 1))), 0.5),
        ((validate_point(0.3, [2], infinity(2)), validate_point(0.3, [5], infinity(2))), 11 / 24),
    ]
    hand_err = []
    for (x, y), value in hand:
        hand_err.append(max(abs(predict_limit(x, y).limit_D - value),
                            abs(pair_distance_at(x, y, n) - value)))
    ok = bad == 0 and max(hand_err) <= 1e-4
    return ok, (f"100 random pairs, worst |prediction - D at 1e6| {worst:.2e}, "
                f"hand values 1/2 and 11/24 off by {hand_err[0]:.1e} and {hand_err[1]:.1e}")


# 3 ---------------------------------------------------------------------------


def criterion_3():
    rng = np.random.default_rng(SEED + 3)
    checkpoints = [1, 10, 100, 10**3, 10**4]
    pts = [random_point(rng) for _ in range(200)]
    started = time.perf_counter()
    worst, coord_bad = 0.0, 0
    for p in pts:
        orbit = naive_orbit(p, checkpoints)
        for n in checkpoints:
            q = evolve(p, n)
            worst = max(worst, circle_dist(q.x0, orbit[n].x0))
            coord_bad += (q.prefix, q.tail) != (orbit[n].prefix, orbit[n].tail)
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-9 and coord_bad == 0 and elapsed <= 10
    return ok, (f"200 points x 5 horizons, worst circle gap {worst:.1e}, "
                f"{coord_bad} coordinate mismatches, {elapsed:.1f}s")


# 4 ---------------------------------------------------------------------------


def criterion_4():
    exact = find_mod1_hit(HitRequest(p=0, m=1, target=0.0, epsilon=1e-9, n_max=10))
    rng = np.random.default_rng(SEED + 4)
    checked, bad = 0, 0
    for _ in range(200):
        p, m = int(rng.integers(0, 4)), int(rng.integers(1, 60))
        target, eps = float(rng.random()), float(rng.choice([1e-2, 1e-3]))
        try:
            v = find_mod1_hit(HitRequest(p=p, m=m, target=target, epsilon=eps, n_max=2 * 10**5))
        except BudgetExhausted:
            continue
        checked += 1
        bad += circle_dist(wrap(math.ldexp(direct_window(m, v), -p)), target) >= eps
    ok = exact == 1 and bad == 0 and checked >= 100
    return ok, f"exact hit v={exact}, {checked} hits re-verified by direct summation, {bad} failures"


# 5 ---------------------------------------------------------------------------

# float slack for the r = 1 cases, where the bound holds with equality
ROUNDING = 1e-14


def criterion_5():
    worst_ratio, bad = 0.0, 0
    for n in (10**3, 10**5):
        j = np.arange(n, dtype=float)
        for k in range(1, 21):
            head = 1.0 / (k + j)
            for r in range(1, 21):
                partial = math.fsum(np.concatenate([head, -1.0 / (k + r + j)]))
                gap = abs(partial - harmonic_window(k, r))
                bound = r / (k + n)
                worst_ratio = max(worst_ratio, gap / bound)
                bad += gap > bound + ROUNDING
    return bad == 0, f"800 (k, r, n) cases, largest gap / bound {worst_ratio:.12f}"


# 6 ---------------------------------------------------------------------------


def criterion_6():
    rng = np.random.default_rng(SEED + 6)
    worst, decay_bad = 0.0, 0
    for _ in range(500):
        x_M = int(rng.integers(1, 500))
        diff = int(rng.integers(0, 500))
        n = int(rng.integers(1, 10**8))
        x_iM = x_M + diff
        lhs = wrap(delta_shift(x_M, x_iM) + harmonic_window(x_iM, n))
        rhs = wrap(harmonic_window(x_M, n) + gamma_residual(x_M, x_iM, n))
        worst = max(worst, circle_dist(lhs, rhs))
        decay_bad += gamma_residual(x_M, x_iM, n) > diff / n
    ok = worst <= 1e-10 and decay_bad == 0
    return ok, f"500 triples, worst identity gap {worst:.1e}, {decay_bad} decay-bound violations"


# 7 ---------------------------------------------------------------------------


def _inf_point(rng, l, high=20):
    prefix = sorted(int(v) for v in rng.integers(1, high + 1, size=l - 1))
    return validate_point(float(rng.random()), prefix, TailSpec("infinity", l))


def _finite_point(rng, high=20):
    vals = sorted(int(v) for v in rng.integers(1, high + 1, size=int(rng.integers(1, 5))))
    return validate_point(float(rng.random()), vals[:-1], const(vals[-1]))


def violation_set(rng):
    ls = [int(v) for v in rng.choice(np.arange(1, 9), size=int(rng.integers(1, 5)), replace=False)]
    pts = [_inf_point(rng, l) for l in ls]
    if rng.random() < 0.5:
        pts.append(_inf_point(rng, int(rng.choice(ls))))
    else:
        pts += [_finite_point(rng), _finite_point(rng)]
    order = rng.permutation(len(pts))
    return [pts[i] for i in order]


def admissible_set(rng):
    ls = rng.choice(np.arange(1, 11), size=int(rng.integers(2, 7)), replace=False)
    pts = [_inf_point(rng, int(l)) for l in ls]
    if rng.random() < 0.5:
        pts.append(_finite_point(rng))
    return pts


def criterion_7():
    n = 10**6
    rng = np.random.default_rng(SEED + 7)
    refuted = checks = 0
    for _ in range(50):
        pts = violation_set(rng)
        while len(set(pts)) != len(pts):
            pts = violation_set(rng)
        rep = refute_scrambled_set(pts, eps=1e-4, n_max=n)
        if rep.verdict != VIOLATION or rep.prediction is None:
            continue
        refuted += 1
        i, j = rep.pair
        d = pair_distance_at(pts[i], pts[j], n)
        checks += abs(rep.prediction.limit_D - d) <= 1e-4 + rep.prediction.max_r / n
    admissible = sum(
        refute_scrambled_set(admissible_set(rng)).verdict == STRUCTURALLY_ADMISSIBLE
        for _ in range(50)
    )
    ok = refuted == 50 and checks == 50 and admissible == 50
    return ok, (f"{refuted}/50 violation sets refuted, {checks}/50 simulated checks pass, "
                f"{admissible}/50 distinct-l sets admissible")


# 8 ---------------------------------------------------------------------------


def criterion_8():
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for _ in range(100):
        p = random_point(rng, kinds=("const", "infinity"))
        a, b = g_step(embed(p)), embed(step(p))
        gaps = [circle_dist(a.z0, b.z0)]
        gaps += [abs(a.coordinate(i) - b.coordinate(i)) for i in range(1, 41)]
        worst = max(worst, max(gaps))
    z_bad = 0
    for _ in range(1000):
        w = g_step(random_connected(rng))
        seq = [w.coordinate(i) for i in range(1, w.start + 2)]
        z_bad += not (all(0.0 <= c <= 1.0 for c in seq)
                      and all(s >= t for s, t in zip(seq, seq[1:])))
    ok = worst <= 1e-10 and z_bad == 0
    return ok, f"100 embedded points, worst gap {worst:.1e}; {z_bad}/1000 Z points break invariants"


# 9 ---------------------------------------------------------------------------


def criterion_9():
    rng = np.random.default_rng(SEED + 9)
    instances = 1500
    axiom_bad = oracle_bad = invariance_bad = 0
    for _ in range(instances):
        a, b, c = (random_point(rng) for _ in range(3))
        dab, dba = metric_D(a, b), metric_D(b, a)
        axiom_bad += not (
            metric_D(a, a) == 0.0
            and dab == dba
            and (dab > 0.0) == (a != b)
            and metric_D(a, c) <= dab + metric_D(b, c) + 1e-14
        )
        oracle_bad += abs(dab - explicit_metric(a, b)) > 1e-13
        q = step(a)
        seq = q.realize(30)
        invariance_bad += not (
            0.0 <= q.x0 < 1.0
            and all(s <= t for s, t in zip(seq, seq[1:]))
            and all(coordinate(q, i) == coordinate(a, i) + 1 for i in range(1, 30))
            and validate_point(q.x0, list(q.prefix), q.tail) == q
        )
    ok = axiom_bad == oracle_bad == invariance_bad == 0
    return ok, (f"{instances} instances: {axiom_bad} axiom failures, {oracle_bad} metric "
                f"oracle mismatches, {invariance_bad} invariance failures")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    assert record(number, ok, detail), detail


if __name__ == "__main__":
    results = [record(k, *CRITERIA[k]()) for k in sorted(CRITERIA)]
    raise SystemExit(0 if all(results) else 1)
