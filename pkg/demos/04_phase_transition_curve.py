"""
Condensation in the flow plane
==============================

On the isentrope the temperature is a function of density, so the gas
side of the binodal picks out one density.  Its image x(rho, t) is a curve
in the (t, x) plane, and the shock front crosses it.
"""

import math

from gasflow import ConstraintConstants, ThermoModel, phase_shock_intersections, phase_transition_curve
from gasflow.homentropic import homentrope_T
from gasflow.singularity import phase_onsets

gas = ThermoModel.van_der_waals(n=3)
s0 = 4 * math.log(6.0)
consts = ConstraintConstants.reference()

for rho, side in phase_onsets(gas, s0):
    print(f"{side.value}: rho = {rho:.10f}, T = {float(homentrope_T(gas, s0, rho)):.6f}")

# %%
curve = phase_transition_curve(consts, gas, s0, (0.0, 30.0), samples=7)
for p in curve:
    print(f"t={p.t:5.1f}  x={p.x:10.4f}  branch {p.branch_id}")

# %%
for hit in phase_shock_intersections(consts, gas, s0, t_max=32.5):
    print(f"\nthe front meets the curve at t={hit.t:.6f}, x={hit.x:.6f} (gap {hit.distance:.1e})")
