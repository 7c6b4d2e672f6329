"""State propagation under Floquet maps and overlap (fidelity) series."""

from dataclasses import dataclass, field

import numpy as np

from .coherent import QuantumState
from .errors import DimensionMismatchError, InsufficientDataError
from .top import oo_floquet_pair


@dataclass(frozen=True)
class OverlapSeries:
    """O(t) = |<psi_u(t)|psi_p(t)>| for t = 0..n, with run metadata."""

    values: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)

    @property
    def steps(self):
        return np.arange(len(self.values))

    def __len__(self):
        return len(self.values)


def evolve(U, state, n):
    """Apply U n times by repeated matrix-vector products."""
    if n < 0:
        raise ValueError(f"step count must be >= 0, got {n}")
    if U.shape[1] != state.dim:
        raise DimensionMismatchError(
            f"operator dim {U.shape[1]} != state dim {state.dim}"
        )
    v = state.amps
    for _ in range(n):
        v = U @ v
    return QuantumState(v, state.basis)


def overlap(a, b):
    """|<a|b>|, requiring matching bases."""
    if a.basis != b.basis or a.dim != b.dim:
        raise DimensionMismatchError(f"overlap of {a.basis} with {b.basis}")
    return float(abs(np.vdot(a.amps, b.amps)))


def fidelity_series(spec, initial, n_steps):
    """Overlap decay of `initial` under the unperturbed vs perturbed top.

    `initial` must already live in the oo basis of spec.J.
    """
    if initial.basis != f"oo:{spec.J}":
        raise DimensionMismatchError(
            f"fidelity_series needs an oo:{spec.J} state, got {initial.basis}"
        )
    u0, u1 = oo_floquet_pair(spec)
    return _series_from_operators(u0, u1, initial.amps, n_steps, meta={
        "J": spec.J, "alpha": spec.alpha, "delta": spec.delta,
        "N": u0.shape[0],
    })


def _series_from_operators(u0, u1, v0, n_steps, meta=None):
    a = v0.copy()
    b = v0.copy()
    out = np.empty(n_steps + 1)
    out[0] = abs(np.vdot(a, b))
    for t in range(1, n_steps + 1):
        a = u0 @ a
        b = u1 @ b
        out[t] = abs(np.vdot(a, b))
    return OverlapSeries(values=out, meta=meta or {})


def plateau(series, tail_fraction=0.2):
    """Mean of the final tail_fraction of the series.

    The caller is responsible for the series being long enough that the
    tail is past the decay.
    """
    values = np.asarray(series.values if isinstance(series, OverlapSeries) else series)
    if len(values) < 10:
        raise InsufficientDataError(
            f"plateau needs >= 10 points, got {len(values)}"
        )
    k = max(1, int(round(len(values) * tail_fraction)))
    return float(values[-k:].mean())


def short_time_exponent(series, loss_cap=0.1, min_points=4):
    """Power of t in the initial growth of the loss 1 - O(t).

    Fits c * t^p to the raw loss by least squares over t = 1 up to the
    first step whose loss envelope reaches loss_cap.  Fitting values
    rather than logs keeps the kick-to-kick oscillation dips (which
    carry tiny absolute residuals) from wrecking the estimate.
    Quadratic decay gives p = 2.
    """
    from scipy.optimize import least_squares

    values = np.asarray(series.values if isinstance(series, OverlapSeries) else series)
    d = 1.0 - values
    env = np.maximum.accumulate(d)
    over = np.nonzero(env >= loss_cap)[0]
    t_max = int(over[0]) if len(over) else len(d) - 1
    t = np.arange(1, t_max + 1, dtype=float)
    y = d[1:t_max + 1]
    if len(t) < min_points or y.max() <= 1e-10:
        raise InsufficientDataError("no early-decay window for exponent fit")

    def resid(p):
        return p[0] * t ** p[1] - y

    sol = least_squares(resid, x0=[max(y[-1], 1e-12) / t[-1] ** 2, 2.0],
                        bounds=([0.0, 0.1], [np.inf, 6.0]))
    return float(sol.x[1])
