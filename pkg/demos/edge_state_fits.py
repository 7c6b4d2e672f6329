"""q-exponential fits of the border state's overlap decay (J = 240).

The state centered 0.176 below the fixed point on the scan circle sits
at the border between the regular island and the chaotic sea.  Its
overlap decays as a power law in both perturbation regimes, and the
q-exponential [1 + (q-1)(t/tau)^2]^(1/(1-q)) fits the whole curve.
Plotting ln_q(O) against t^2 with the fitted q turns the decay into a
straight line of slope -1/tau^2, which is the quickest way to see the
fit quality by eye.
"""

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import kickedtop as kt
from kickedtop import edge
from kickedtop.tsallis import e_q, ln_q

J = 240
state = edge.scan_state(J, edge.Z_F - 0.176)

runs = {
    "weak (delta=0.0003)": dict(delta=0.0003, steps=3000, window=(600, 2500)),
    "FGR (delta=0.01)": dict(delta=0.01, steps=300, window=(20, 70)),
}

fig, axes = plt.subplots(2, 2, figsize=(10, 7))
for row, (label, p) in enumerate(runs.items()):
    series = kt.fidelity_series(kt.KickedTopSpec(J, 3.0, p["delta"]),
                                state, p["steps"])
    fit = kt.fit_qexp(series, window=p["window"])
    print(f"{label:22s} q_rel = {fit.q:.2f}   tau = {fit.tau:.1f}   "
          f"(window {p['window']})")

    t = series.steps
    ax = axes[row, 0]
    ax.loglog(t[1:], series.values[1:], lw=0.8, label="data")
    model = e_q(-((t / fit.tau) ** 2), fit.q)
    ax.loglog(t[1:], model[1:], "--", label=f"q={fit.q:.2f}, tau={fit.tau:.0f}")
    ax.axvspan(*p["window"], color="orange", alpha=0.15)
    ax.set_xlabel("kicks")
    ax.set_ylabel("overlap")
    ax.set_title(label)
    ax.legend()

    # the linearizing plot: ln_q O against t^2 inside the window
    a, b = p["window"]
    tw = np.arange(a, b + 1)
    ax = axes[row, 1]
    ax.plot(tw**2, ln_q(series.values[a:b + 1], fit.q), lw=0.8)
    ax.plot(tw**2, fit.intercept + fit.slope * tw.astype(float)**2, "--")
    ax.set_xlabel("t^2")
    ax.set_ylabel(f"ln_q O  (q={fit.q:.2f})")
    ax.set_title("linearized: slope = -1/tau^2")

fig.tight_layout()
fig.savefig("edge_state_fits.png", dpi=150)
print("wrote edge_state_fits.png")
