"""A connected version of the system.

Replacing each coordinate ``k`` by ``1/k`` (and infinity by 0) places the
phase space inside the circle times the Hilbert cube.  The map extends to
the whole nonincreasing part of the cube by interpolating linearly between
consecutive reciprocals, and the extension agrees with the original map on
the embedded copy.
"""

import numpy as np

from liyorke.core_space import const, infinity, validate_point
from liyorke.dynamics import connected_distance, connected_point, decompose, embed, g_step, step

print("staircase decomposition x = 1/k + t (1/(k-1) - 1/k)")
for x in (1.0, 0.75, 0.5, 0.4, 1 / 3, 0.01):
    k, t = decompose(x)
    print(f"    x = {x:.4f}: k = {k}, t = {t:.4f}")

print("\ncommuting square on embedded points")
for p in (validate_point(0.1, [3], const(5, 2)), validate_point(0.8, [1, 2, 6], infinity(4))):
    gap = connected_distance(g_step(embed(p)), embed(step(p)))
    print(f"    {p.realize(5)}: |G(embed p) - embed(F p)| = {gap:.1e}")

print("\nan orbit between the embedded points")
rng = np.random.default_rng(0)
z = connected_point(0.0, sorted(rng.random(4), reverse=True), 0.0)
for n in range(6):
    print(f"    n = {n}: z0 = {z.z0:.6f}, coords = {np.round(z.coords, 5).tolist()}")
    z = g_step(z)
