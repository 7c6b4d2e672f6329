"""How the border state's relaxation depends on perturbation strength.

Sweeping the kick-strength difference delta across four decades at
J = 240: the relaxation time tau falls off as roughly 1/delta, while
the entropic index q_rel holds a plateau below the critical
perturbation delta_c = sqrt(2*pi/N^3) and grows beyond it.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import kickedtop as kt
from kickedtop import edge

J = 240
deltas = np.geomspace(2e-4, 2e-2, 11)
sweep = kt.delta_sweep(J, 3.0, edge.Z_F - 0.176, deltas)

print(f"delta_c = {sweep.delta_c:.3g}   tau ~ delta^{sweep.tau_slope:.2f}")
for p in sweep.points:
    if p.error:
        print(f"  delta={p.delta:.4g}: {p.error}")
    else:
        print(f"  delta={p.delta:.4g}: q_rel={p.q_rel:.2f}  tau={p.tau:.1f}")

ok = [p for p in sweep.points if p.q_rel is not None]
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
ax1.semilogx([p.delta for p in ok], [p.q_rel for p in ok], "o-")
ax1.axvline(sweep.delta_c, color="gray", ls=":")
ax1.set_xlabel("delta")
ax1.set_ylabel("q_rel")
ax2.loglog([p.delta for p in ok], [p.tau for p in ok], "o-")
ax2.set_xlabel("delta")
ax2.set_ylabel("tau")
fig.suptitle(f"J={J} border state; dotted line: delta_c")
fig.tight_layout()
fig.savefig("perturbation_sweep.png", dpi=150)
print("wrote perturbation_sweep.png")
