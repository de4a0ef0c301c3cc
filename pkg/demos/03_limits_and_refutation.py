"""Why there is no uncountable scrambled set.

If two points are both all finite, or both become infinite at the same
index, their distance converges, so they are not scrambled.  Sending each
point to the index where it first becomes infinite is then injective on a
scrambled set, which is therefore countable.
"""

from liyorke.certify import predict_limit, refute_scrambled_set
from liyorke.core_space import const, infinity, validate_point
from liyorke.dynamics import pair_distance_at

pairs = {
    "constant tails 1 and 3": (validate_point(0, [], const(1, 1)), validate_point(0, [], const(3, 1))),
    "infinite from index 2": (validate_point(0.3, [2], infinity(2)), validate_point(0.3, [5], infinity(2))),
}
for label, (x, y) in pairs.items():
    pred = predict_limit(x, y)
    print(f"{label}: predicted limit {pred.limit_D:.6f}")
    for n in (10, 10**3, 10**5, 10**7):
        print(f"    n = {n:>8}: D = {pair_distance_at(x, y, n):.6f}")

candidates = {
    "shared first infinite index": [validate_point(0, [2], infinity(2)), validate_point(0, [5], infinity(2)),
                                    validate_point(0, [], infinity(1))],
    "two all-finite points": [validate_point(0, [], const(1, 1)), validate_point(0.5, [2], const(7))],
    "distinct indices": [validate_point(0, [], infinity(1)), validate_point(0, [2], infinity(2)),
                         validate_point(0, [2, 3], infinity(3)), validate_point(0.1, [], const(4))],
}
print()
for label, pts in candidates.items():
    rep = refute_scrambled_set(pts)
    line = f"{label}: {rep.verdict}, first infinite indices {rep.l_values}"
    if rep.prediction is not None:
        line += (f"; pair {rep.pair} converges to {rep.prediction.limit_D:.6f}, "
                 f"simulated {rep.simulated_D:.6f} at n = {rep.horizon}")
    print(line)
