"""
Wave breaking in an exact solution
==================================

The exact solution is a surface parametrized by density and time.  Before
the breakdown time each x carries one density; afterwards the surface folds
and some x carry three.
"""

from gasflow import ConstraintConstants, breakdown_time, density_profile

consts = ConstraintConstants.reference()
print(f"C5 = {consts.C5:.6g}, C6 = {consts.C6:.6g}, entropy level s0 = {consts.s0:.6f}")
print(f"breakdown time t* = {breakdown_time(consts):.6f}")

# %%
for t in (0.0, 10.0, 20.0, 30.0):
    prof = density_profile(consts, t)
    triple = [(a, b) for a, b, k in prof.multiplicity_intervals() if k == 3]
    print(f"\nt = {t:4.1f}: {prof.n_branches} branch(es)")
    for b, (x0, x1) in enumerate(prof.branch_ranges()):
        print(f"  branch {b}: x from {x0:9.3f} to {x1:9.3f}")
    if triple:
        print(f"  three densities for x in ({triple[0][0]:.3f}, {triple[0][1]:.3f})")
