"""Scanning for the edge of quantum chaos at J = 120.

Coherent-state centers walk down the circle x = x_f from the fixed
point.  Deep in the island the perturbed overlap barely decays; in the
sea it decays exponentially; in between, a band of states decays as a
power law in both the strong and the weak perturbation regime.  The
scanner reports that band and picks the state with the widest joint
power-law window as the edge.
"""

import kickedtop as kt
from kickedtop import edge

J = 120
result = kt.scan_edge(J, delta=edge.scan_delta_for(J), z_step=0.005)

print(f"J = {J}: edge at z = {result.edge_z:.3f} "
      f"(offset {result.edge_offset:.3f} below the fixed point)\n")
print("   z      class         FGR decades   weak decades")
for p in result.points:
    weak = "" if p.weak_decades is None else f"{p.weak_decades:.2f}"
    dec = f"{p.decades:.2f}" if p.kind == "power_law" else ""
    mark = " <-- edge" if abs(p.z - result.edge_z) < 1e-12 else ""
    print(f" {p.z:.3f}  {p.kind:12s}  {dec:>6s}        {weak:>6s}{mark}")
