# # Indexes at the poles and the connection form along parallels
#
# The Poincare index at N is read off from how many times theta turns against
# the moving frame along a parallel (W), plus one turn of the frame itself:
# I_N = 1 + W and I_S = 1 - W, so the two always add up to 2.
import math

import numpy as np

from spherefields import BumpSpec, SphericalPoint, Spin, index_report, make_grid, perturb, stokes_check

for k in (1, 3, 4, 7):
    rep = index_report(Spin(k))
    print(f"Spin({k}): I_N = {rep.index_north:3d}, I_S = {rep.index_south:3d}")

# A bump does not change the indexes, and neither does sampling on a grid.
bumped = perturb(Spin(4), BumpSpec(0.3, SphericalPoint(0.0, math.pi), 0.5))
print("perturbed Spin(4):", index_report(bumped))
print("gridded Spin(5):  ", index_report(make_grid(Spin(5), 64, 64)))

# The connection form of {v_perp, v} pulled back to a parallel is
# tan(alpha) + theta1. Integrated along the parallel (arc length
# cos(alpha) d beta) it returns 2 pi (k - 1 + sin alpha).
print("\n  k   alpha    integral         2 pi (k - 1 + sin alpha)")
for k in (3, 4):
    for alpha in np.linspace(-1.2, 1.2, 5):
        chk = stokes_check(Spin(k), alpha, 256)
        print(f"{k:3d}  {alpha:6.2f}  {chk.lhs:14.10f}   {chk.rhs:14.10f}")
