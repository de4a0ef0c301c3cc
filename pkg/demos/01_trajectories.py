"""Fast-forwarding orbits of the skew product.

Three starting points, each followed out to ten million steps.  The circle
coordinate drifts by a weighted sum of harmonic windows, which grow like
``log n``: the drift never stops, but it slows down.  A point whose
coordinates are all infinite does not move at all.
"""

from liyorke.core_space import arith, const, infinity, metric_D, validate_point
from liyorke.dynamics import evolve, step

POINTS = {
    "fixed (all infinite)": validate_point(0.3, [], infinity(1)),
    "constant tail of ones": validate_point(0.0, [], const(1, 1)),
    "2, 3, then 4, 5, 6, ...": validate_point(0.25, [2, 3], arith(4)),
}

print("Circle coordinate at logarithmically spaced times\n")
times = [0, 1, 10, 100, 10**3, 10**4, 10**5, 10**6, 10**7]
print(f"{'n':>9}  " + "  ".join(f"{name[:24]:>24}" for name in POINTS))
for n in times:
    row = [f"{evolve(p, n).x0:24.12f}" for p in POINTS.values()]
    print(f"{n:>9}  " + "  ".join(row))

# the jump agrees with one-at-a-time iteration
p = POINTS["2, 3, then 4, 5, 6, ..."]
q = p
for _ in range(1000):
    q = step(q)
print(f"\n1000 single steps vs one jump: D = {metric_D(q, evolve(p, 1000)):.2e}")
print(f"coordinates after 1000 steps start {evolve(p, 1000).realize(5)}")
