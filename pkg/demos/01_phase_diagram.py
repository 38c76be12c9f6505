"""
The van der Waals phase diagram
===============================

Isotherms below the critical temperature T = 1 have a loop.  The spinodal
marks where the loop turns (dp/drho = 0) and the binodal marks where gas and
liquid actually coexist.
"""

import numpy as np

from gasflow import ThermoModel, binodal_curve, kappa, oracles, spinodal_T, thermo

gas = ThermoModel.van_der_waals(n=3)

# %%
# The kappa form tells stable states from unstable ones: k_rr < 0 means the
# isotherm is locally stable.  At the critical point it vanishes together
# with its density derivative.
print("k_rr at (T, rho) = (1, 1):", float(kappa(gas, 1.0, 1.0).k_rr))
print("k_rr at (T, rho) = (0.9, 1):", float(kappa(gas, 0.9, 1.0).k_rr))

# %%
# Spinodal temperatures over a density grid.
rho = np.linspace(0.2, 2.6, 7)
for r, T in zip(rho, spinodal_T(gas, rho)):
    print(f"rho={r:4.2f}  T_spinodal={T:.4f}")

# %%
# The binodal comes from equal pressure and equal Gibbs potential.  The
# classical equal-area rule gives the same pressure by a different route.
print("\n   T        p       rho_gas   rho_liq   equal-area p")
for b in binodal_curve(gas, 0.85, 0.99, 8):
    print(f"{b.T:.3f}  {b.p:.6f}  {b.rho_gas:.6f}  {b.rho_liq:.6f}  {oracles.equal_area_binodal(b.T)[0]:.6f}")

# %%
# Both coexisting densities sit outside the spinodal interval.
lo, hi = thermo.spinodal_densities(gas, 0.9)
print(f"\nT=0.9 spinodal densities: {lo:.4f}, {hi:.4f}")
