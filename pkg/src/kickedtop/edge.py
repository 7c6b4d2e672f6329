"""Locating the edge of quantum chaos and sweeping perturbation strength.

The scan walks initial coherent-state centers along a circle on the
sphere through the positive classical fixed point, lowering z from z_f
and reconstructing the free coordinate from the unit constraint.  By
default the scan holds x = x_f ("hold x"): the regular island around
the fixed point extends farthest along that circle (classically the
border sits near z_f - 0.23), so the quantum transitory region is
cleanly bracketed.  ``hold="y"`` instead keeps y = y_f, the narrow
direction of the island.

A state qualifies as an edge candidate when its overlap decay shows a
power-law stretch: a log-log-linear window of bounded slope (Gaussian
and exponential decays steepen without bound on log-log axes).  Edge
behavior is a property of the state, not of one perturbation strength:
the transitory must show up both for a strong (FGR-regime) and a weak
(below-critical) perturbation.  The weak probe is what pins the edge
down: island states barely decay under it and sea states decay in a
Gaussian, so only the border region keeps its power-law stretch in
both regimes.  The edge is the candidate whose stretches jointly span
the most decades, ties going to the state nearer the fixed point.
"""

from dataclasses import dataclass, field

import numpy as np

from .classical import FIXED_POINT_PLUS
from .coherent import coherent_state_at, project_oo
from .errors import EdgeNotFoundError, FitError, InvalidPointError
from .evolution import _series_from_operators
from .top import KickedTopSpec, critical_delta, oo_floquet_pair, parity_basis
from .tsallis import (
    classify_decay,
    fit_qexp,
    linear_regression,
    powerlaw_candidate,
)

X_F, Y_F, Z_F = FIXED_POINT_PLUS

# power-law window gates used while scanning: the FGR-regime transitory
# has entropic index well above 3 (shallow log-log slope); weak-regime
# indices run down to ~2.6, so the confirmation pass admits steeper slopes
SCAN_POWERLAW_KW = dict(
    r2_min=0.95, min_decades=0.5, slope_band=(-1.1, -0.15), max_end_value=0.5,
)
WEAK_POWERLAW_KW = dict(
    r2_min=0.95, min_decades=0.5, slope_band=(-1.4, -0.15), max_end_value=0.5,
)
DEFAULT_SCAN_DELTA = 0.01
DEFAULT_SCAN_STEPS = 1500
WEAK_DELTA_FRACTION = 1 / 6      # weak probe at delta_c/6
SCORE_TIE_TOL = 0.10             # joint window scores within 10% count as tied
BAND_GAP = 0.012                 # minimum z gap separating candidate bands


def scan_point(z, hold="x"):
    """Sphere point of the scan circle at height z."""
    if hold == "x":
        r2 = 1.0 - X_F**2 - z * z
        if r2 < 0:
            raise InvalidPointError(f"z = {z} leaves the x = x_f circle")
        return (X_F, float(np.sqrt(r2)), float(z))
    if hold == "y":
        r2 = 1.0 - Y_F**2 - z * z
        if r2 < 0:
            raise InvalidPointError(f"z = {z} leaves the y = y_f circle")
        return (float(np.sqrt(r2)), Y_F, float(z))
    raise ValueError(f"hold must be 'x' or 'y', got {hold!r}")


def scan_state(J, z, hold="x"):
    """oo-projected coherent state centered on the scan circle at z."""
    decomp = parity_basis(J)
    full = coherent_state_at(J, *scan_point(z, hold=hold))
    state, _ = project_oo(full, decomp)
    return state


@dataclass(frozen=True)
class ScanPoint:
    z: float
    kind: str
    decades: float = 0.0          # FGR-probe window span
    qexp: object = None
    window: object = None
    weak_decades: float = None    # weak-probe span (None: not probed)


@dataclass(frozen=True)
class EdgeScanResult:
    J: int
    alpha: float
    delta: float
    points: list = field(repr=False)
    edge_z: float = None
    edge_offset: float = None      # z_f - edge_z
    edge_state: object = field(default=None, repr=False)
    hold: str = "x"


def scan_edge(J, alpha=3.0, delta=DEFAULT_SCAN_DELTA, z_range=None,
              z_step=0.002, steps=DEFAULT_SCAN_STEPS, hold="x",
              weak_delta=None, powerlaw_kw=None):
    """Scan coherent-state centers along the ray and locate the edge.

    Two passes: every z is probed at the (FGR-regime) ``delta``; states
    whose decay shows a power-law window are then re-probed at the weak
    ``weak_delta`` (default delta_c/6).  The edge is the state whose
    two windows jointly span the most decades (the smaller of the two
    spans is the score).  Raises EdgeNotFoundError with the per-z
    classification when no state qualifies in both regimes.
    """
    if z_range is None:
        z_range = (Z_F - 0.30, Z_F)
    lo, hi = min(z_range), max(z_range)
    if z_step <= 0:
        raise ValueError(f"z_step must be positive, got {z_step}")
    zs = np.arange(hi, lo - z_step / 2, -z_step)   # from the fixed point outward

    delta_c = critical_delta(J // 2)
    if weak_delta is None:
        weak_delta = delta_c * WEAK_DELTA_FRACTION
    u0, u1 = oo_floquet_pair(KickedTopSpec(J, alpha, delta))
    decomp = parity_basis(J)
    pw_kw = dict(SCAN_POWERLAW_KW)
    pw_kw.update(powerlaw_kw or {})

    candidates = []      # (z, state, cls)
    points = {}
    for z in zs:
        full = coherent_state_at(J, *scan_point(z, hold=hold))
        state, _ = project_oo(full, decomp)
        series = _series_from_operators(u0, u1, state.amps, steps)
        cls = classify_decay(series, powerlaw_kw=pw_kw)
        if cls.kind == "power_law":
            points[float(z)] = ScanPoint(
                z=float(z), kind=cls.kind, decades=cls.window.decades,
                qexp=cls.qexp, window=cls.window,
            )
            candidates.append((float(z), state, cls))
        else:
            points[float(z)] = ScanPoint(z=float(z), kind=cls.kind)

    scored = []          # (score, z, state) in fp-outward order
    if candidates:
        w0, w1 = oo_floquet_pair(KickedTopSpec(J, alpha, weak_delta))
        weak_steps = steps_for_delta(weak_delta)
        for z, state, cls in candidates:
            wseries = _series_from_operators(w0, w1, state.amps, weak_steps)
            wwin, _ = powerlaw_candidate(wseries.values, powerlaw_kw=WEAK_POWERLAW_KW)
            wdec = wwin.decades if wwin is not None else 0.0
            points[z] = ScanPoint(
                z=z, kind=cls.kind, decades=cls.window.decades,
                qexp=cls.qexp, window=cls.window, weak_decades=wdec,
            )
            if wdec > 0.0:
                scored.append((min(cls.window.decades, wdec), z, state))

    # the edge borders the regular zone: of the states confirmed in both
    # regimes, keep the first contiguous band met when walking away from
    # the fixed point (sticky stretches deeper in the sea can mimic the
    # transitory once more, further out)
    gap = max(2.5 * z_step, BAND_GAP)
    band = []
    for item in scored:
        if band and (band[-1][1] - item[1]) > gap:
            break
        band.append(item)

    point_list = [points[float(z)] for z in zs]
    if not band:
        raise EdgeNotFoundError(
            f"no state decays as a power law in both regimes "
            f"(delta={delta}, weak_delta={weak_delta:.3g}) in z range "
            f"({lo:.4f}, {hi:.4f}) at J={J}",
            details=[(p.z, p.kind) for p in point_list],
        )
    # window spans on oscillatory overlap data are not meaningful to a
    # few percent: scores within SCORE_TIE_TOL of the maximum are tied,
    # and ties break toward the fixed point (largest z; the band is
    # already ordered fp-outward)
    top = max(s for s, _, _ in band)
    _, z_edge, state = next(
        item for item in band if item[0] >= (1.0 - SCORE_TIE_TOL) * top
    )
    return EdgeScanResult(
        J=J, alpha=alpha, delta=delta, points=point_list,
        edge_z=z_edge, edge_offset=float(Z_F - z_edge),
        edge_state=state, hold=hold,
    )


# ------------------------------------------------------------- sweeps

@dataclass(frozen=True)
class SweepPoint:
    delta: float
    q_rel: float = None
    tau: float = None
    r2: float = None
    window: tuple = None
    error: str = None


@dataclass(frozen=True)
class DeltaSweepResult:
    J: int
    alpha: float
    edge_z: float
    points: list
    delta_c: float
    q_rel_c: float = None          # plateau below delta_c
    q_rel_s: float = None          # terminal plateau (None: not detected)
    delta_s: float = None
    tau_slope: float = None        # log-log slope of tau vs delta

    @property
    def deltas(self):
        return [p.delta for p in self.points]


def steps_for_delta(delta, floor=1200, cap=20000):
    """Series length long enough to expose the transitory at strength delta."""
    return int(np.clip(2.0 / delta, floor, cap))


FIT_ANCHOR = (0.85, 0.30)


def _anchored_window(values, anchor=FIT_ANCHOR):
    """Window from the first crossing of anchor[0] down to anchor[1]."""
    hi = np.nonzero(values <= anchor[0])[0]
    lo = np.nonzero(values <= anchor[1])[0]
    if len(hi) and len(lo) and lo[0] - hi[0] >= 5:
        return int(hi[0]), int(lo[0])
    return None


def delta_sweep(J, alpha, edge_z, deltas, hold="x", steps=None,
                window=None, anchor=FIT_ANCHOR):
    """q-exponential fits of the edge state's decay across perturbations.

    Per delta the fit window spans the overlap's fall between the anchor
    values (0.85 down to 0.30 by default, the visible power-law stretch),
    falling back to automatic selection when the series never gets that
    far; an explicit ``window`` overrides both for every delta.  Fit
    failures are recorded per point, not raised.
    """
    deltas = sorted(float(d) for d in deltas)
    if not deltas:
        raise ValueError("deltas must be non-empty")
    decomp = parity_basis(J)
    full = coherent_state_at(J, *scan_point(edge_z, hold=hold))
    state, _ = project_oo(full, decomp)

    points = []
    for d in deltas:
        n = steps if steps is not None else steps_for_delta(d)
        u0, u1 = oo_floquet_pair(KickedTopSpec(J, alpha, d))
        series = _series_from_operators(u0, u1, state.amps, n)
        w = window
        if w is None and anchor is not None:
            w = _anchored_window(series.values, anchor)
        try:
            fit = fit_qexp(series, window=w)
            points.append(SweepPoint(delta=d, q_rel=fit.q, tau=fit.tau,
                                     r2=fit.r2, window=fit.window))
        except FitError as exc:
            points.append(SweepPoint(delta=d, error=str(exc)))

    return _summarize_sweep(J, alpha, edge_z, points)


def _summarize_sweep(J, alpha, edge_z, points):
    delta_c = critical_delta(J // 2)
    ok = [p for p in points if p.q_rel is not None]

    below = [p.q_rel for p in ok if p.delta < delta_c]
    q_rel_c = float(np.mean(below)) if below else None

    q_rel_s = delta_s = None
    if len(ok) >= 3:
        last3 = ok[-3:]
        qs = [p.q_rel for p in last3]
        if max(qs) - min(qs) <= 0.3:       # within +-0.15 of each other
            q_rel_s = float(np.mean(qs))
            delta_s = last3[0].delta

    tau_slope = None
    if len(ok) >= 2:
        tau_slope = linear_regression(
            np.log([p.delta for p in ok]), np.log([p.tau for p in ok])
        )[0]

    return DeltaSweepResult(
        J=J, alpha=alpha, edge_z=edge_z, points=points, delta_c=delta_c,
        q_rel_c=q_rel_c, q_rel_s=q_rel_s, delta_s=delta_s, tau_slope=tau_slope,
    )


# ------------------------------------------------------------- summary table

@dataclass(frozen=True)
class SummaryRow:
    J: int
    edge_offset: float = None
    delta_c: float = None
    q_rel_c: float = None
    error: str = None


def scan_delta_for(J):
    """FGR-probe perturbation for an edge scan at angular momentum J.

    Keeps a fixed depth into the FGR regime (delta_c scales as
    (J/2)^(-3/2)), anchored to 0.01 at J = 240 and capped at 0.01: for
    large J a 0.01 kick difference saturates the overlap within a few
    tens of steps, leaving no room for the transitory window.
    """
    return min(DEFAULT_SCAN_DELTA, DEFAULT_SCAN_DELTA * (240.0 / J) ** 1.5)


def summary_table(J_list, alpha=3.0, scan_kw=None, sweep_fractions=(0.15, 0.25, 0.4),
                  hold="x"):
    """Edge offset, critical perturbation and weak-regime q_rel per J.

    Composes scan_edge (at a J-scaled FGR perturbation) with a small
    sweep of perturbations well below delta_c for q_rel_c.  Failures
    are recorded per row; rows that succeed are still returned.
    """
    rows = []
    for J in J_list:
        dc = critical_delta(J // 2)
        try:
            scan = scan_edge(J, alpha=alpha, delta=scan_delta_for(J),
                             hold=hold, **(scan_kw or {}))
            sweep = delta_sweep(J, alpha, scan.edge_z,
                                [f * dc for f in sweep_fractions], hold=hold)
            rows.append(SummaryRow(J=J, edge_offset=scan.edge_offset,
                                   delta_c=dc, q_rel_c=sweep.q_rel_c))
        except Exception as exc:   # per-J failures reported, not raised
            rows.append(SummaryRow(J=J, delta_c=dc, error=str(exc)))
    return rows
