"""Every neighbourhood of every point holds a partner that is scrambled with it.

For a point with an infinite tail the partner swaps the tail for a large
constant.  For an all-finite point the partner goes infinite from some index
on and shifts its circle coordinate to compensate.  The certificate lists
times when the pair comes within ``eps`` and times when it is at least
``1/2 - eps`` apart.
"""

from liyorke.certify import certify_scrambled
from liyorke.core_space import NeighborhoodSpec, const, in_neighborhood, infinity, metric_D, validate_point
from liyorke.witness import ly_witness

cases = [
    ("infinite tail", validate_point(0.2, [], infinity(1)), NeighborhoodSpec(0.1, 1)),
    ("infinite from index 3", validate_point(0.7, [4, 9], infinity(3)), NeighborhoodSpec(0.05, 2)),
    ("all finite", validate_point(0.0, [], const(2, 1)), NeighborhoodSpec(0.3, 2)),
    ("all finite, uneven", validate_point(0.45, [1, 3, 8], const(20)), NeighborhoodSpec(0.1, 1)),
]

for label, x, U in cases:
    y, params = ly_witness(x, U)
    cert = certify_scrambled(x, y, eps=1e-3)
    print(f"== {label}")
    print(f"   x = {x.realize(6)} ..., x0 = {x.x0}")
    print(f"   y = {y.realize(6)} ..., y0 = {y.x0:.15f}")
    print(f"   witness case {params.case}, M = {params.M}, K = {params.K}, "
          f"D(x, y) = {metric_D(x, y):.4f} < delta = {U.delta}: {in_neighborhood(y, x, U)}")
    print(f"   close at n = {list(cert.proximal_times)}, D <= {cert.liminf_upper_bound:.2e}")
    print(f"   apart at n = {list(cert.separation_times)}, D >= {cert.limsup_lower_bound:.4f}\n")
