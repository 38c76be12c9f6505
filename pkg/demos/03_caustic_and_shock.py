"""
Caustic and shock front
=======================

The fold of the solution surface projects to a caustic in the (t, x)
plane; its earliest point is the cusp at t*.  The physical solution
replaces the folded part by a jump whose position conserves mass.
"""

import numpy as np

from gasflow import ConstraintConstants, breakdown_time, caustic, cusp_point, shock_front_curve
from gasflow.singularity import caustic_x_bounds, shock_residuals

consts = ConstraintConstants.reference()
cusp = cusp_point(consts)
print(f"cusp: rho={cusp.rho:.8f} t={cusp.t:.8f} x={cusp.x:.6f}")
print(f"closed-form t* = {breakdown_time(consts):.8f}")

# %%
plus, minus = caustic(consts, samples=401)
k = int(np.argmin(plus.t))
print(f"+ caustic sampled at {plus.rho.size} densities, earliest time {plus.t[k]:.6f} at rho={plus.rho[k]:.4f}")

# %%
# The front, by continuation from the cusp.
front = shock_front_curve(consts, cusp.t + 20.0, samples=200, cusp=cusp)
print("\n     t          x_s       rho1      rho2     caustic x-range")
for p in front.points[::25]:
    if p.rho1 == p.rho2:
        print(f"{p.t:8.4f}  {p.x_s:10.4f}  {p.rho1:.5f}  {p.rho2:.5f}   (cusp)")
        continue
    xa, xb = caustic_x_bounds(consts, p.t, cusp)
    print(f"{p.t:8.4f}  {p.x_s:10.4f}  {p.rho1:.5f}  {p.rho2:.5f}   [{xa:.3f}, {xb:.3f}]")

worst = max(max(map(abs, shock_residuals(consts, p.t, p.rho1, p.rho2))) for p in front.points[1:])
print(f"\nworst mass / position mismatch along the front: {worst:.2e}")
