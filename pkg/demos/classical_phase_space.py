"""Phase portrait of the classical kicked top at kick strength 3.

One long chaotic orbit fills the sea and leaves the regular islands as
holes; short orbits started near the positive fixed point trace the
island tori.  Points are flattened to the x-z plane with the area-true
scaling R/r used throughout this package.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import kickedtop as kt
from kickedtop.classical import orbit, project_orbit

alpha = 3.0

sea = project_orbit(orbit(np.asarray(kt.CHAOTIC_SEED), alpha, 10000))

fig, ax = plt.subplots(figsize=(6, 6))
ax.plot(sea[:, 0], sea[:, 1], ",", color="black", alpha=0.5)

# a few tori around the fixed point
x_f, y_f, z_f = kt.FIXED_POINT_PLUS
for eps in (0.02, 0.06, 0.10):
    z = z_f - eps
    p0 = np.array([x_f, np.sqrt(1 - x_f**2 - z**2), z])
    ring = project_orbit(orbit(p0, alpha, 2000))
    ax.plot(ring[:, 0], ring[:, 1], ",", color="tab:red")

px, pz = kt.project(kt.FIXED_POINT_PLUS)
ax.plot([px], [pz], "+", color="tab:blue", ms=12, mew=2)
ax.set_xlabel("x R/r")
ax.set_ylabel("z R/r")
ax.set_aspect("equal")
ax.set_title("classical kicked top, alpha = 3")
fig.tight_layout()
fig.savefig("classical_phase_space.png", dpi=150)
print(f"fixed point projects to ({px:.4f}, {pz:.4f})")
print("wrote classical_phase_space.png")
