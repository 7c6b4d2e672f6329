"""Nonextensive entropy, q-deformed log/exp, and q-exponential curve fits.

The deformed pair

    ln_q(x) = (x^(1-q) - 1) / (1 - q)        e_q(x) = [1 + (1-q) x]^(1/(1-q))

reduces to ln/exp as q -> 1 and is mutually inverse where defined.  A
series decaying as O(t) = e_q(-(t/tau)^2) is linearized by plotting
ln_q(O) against t^2: the slope is -1/tau^2.  Fitting searches q on a
grid for the most linear such plot, then refines.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FitError, InsufficientDataError

Q_GRID_DEFAULT = (1.05, 8.0, 0.05)
Q_NEAR_ONE = 1e-9


# ---------------------------------------------------------------- entropy

def s_q(probs, q, k=1.0):
    """Nonextensive entropy k (1 - sum p_i^q) / (q - 1) of a distribution.

    Falls back to the Shannon form -k sum p ln p (with 0 ln 0 = 0) in the
    q -> 1 limit.
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or len(p) == 0:
        raise ValueError("probs must be a non-empty 1-d array")
    if p.min() < -1e-12:
        raise ValueError(f"negative probability {p.min()}")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    if k <= 0:
        raise ValueError(f"entropy constant k must be positive, got {k}")
    p = np.clip(p, 0.0, None)
    if abs(q - 1.0) < Q_NEAR_ONE:
        nz = p[p > 0]
        return float(-k * np.sum(nz * np.log(nz)))
    return float(k * (1.0 - np.sum(p**q)) / (q - 1.0))


def ln_q(x, q):
    """Deformed logarithm; natural log at q = 1.  Requires x > 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise ValueError("ln_q needs positive arguments")
    if abs(q - 1.0) < Q_NEAR_ONE:
        out = np.log(arr)
    else:
        out = (arr ** (1.0 - q) - 1.0) / (1.0 - q)
    return float(out) if np.isscalar(x) else out


def e_q(x, q):
    """Deformed exponential with the standard cutoff e_q(x) = 0 when
    1 + (1-q) x < 0; plain exp at q = 1."""
    arr = np.asarray(x, dtype=float)
    if abs(q - 1.0) < Q_NEAR_ONE:
        out = np.exp(arr)
    else:
        base = 1.0 + (1.0 - q) * arr
        out = np.where(base > 0, np.maximum(base, 0.0) ** (1.0 / (1.0 - q)), 0.0)
    return float(out) if np.isscalar(x) else out


# ---------------------------------------------------------------- fits

@dataclass(frozen=True)
class QExpFit:
    q: float
    tau: float
    slope: float
    intercept: float
    r2: float
    window: tuple
    time_power: int


@dataclass(frozen=True)
class GaussianFit:
    width: float      # O ~ exp(-width t^2)
    window: tuple
    r2: float


@dataclass(frozen=True)
class ExponentialFit:
    rate: float       # O ~ exp(-rate t)
    window: tuple
    r2: float


@dataclass(frozen=True)
class PowerLawWindow:
    t_start: int
    t_end: int
    decades: float
    slope: float      # of log10 O vs log10 t
    r2: float


def linear_regression(x, y):
    """Least-squares line fit; returns (slope, intercept, r2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    mx, my = x.mean(), y.mean()
    vx = np.sum((x - mx) ** 2)
    if vx == 0:
        raise FitError("degenerate abscissa in regression")
    slope = np.sum((x - mx) * (y - my)) / vx
    intercept = my - slope * mx
    resid = y - (slope * x + intercept)
    vy = np.sum((y - my) ** 2)
    r2 = 1.0 if vy == 0 else 1.0 - np.sum(resid**2) / vy
    return float(slope), float(intercept), float(r2)


def _series_values(series):
    values = getattr(series, "values", series)
    return np.asarray(values, dtype=float)


def _window_mask(n, window):
    a, b = int(window[0]), int(window[1])
    if not (0 <= a < b <= n - 1):
        raise FitError(f"window {window} outside series of length {n}")
    t = np.arange(a, b + 1)
    return t


def _qexp_r2(q, tvals, yvals, time_power):
    x = tvals.astype(float) ** time_power
    y = ln_q(yvals, q)
    return linear_regression(x, y)


def _linearized_qexp(t, y, time_power, q_grid, refine):
    """Grid-plus-ternary search for the q with the most linear ln_q plot."""
    lo, hi, step = q_grid
    qs = np.arange(lo, hi + step / 2, step)
    best = None
    for q in qs:
        slope, intercept, r2 = _qexp_r2(q, t, y, time_power)
        if best is None or r2 > best[3]:
            best = (q, slope, intercept, r2)
    if refine:
        a, b = max(lo, best[0] - step), min(hi, best[0] + step)
        while b - a > 0.02:
            m1 = a + (b - a) / 3
            m2 = b - (b - a) / 3
            if _qexp_r2(m1, t, y, time_power)[2] < _qexp_r2(m2, t, y, time_power)[2]:
                a = m1
            else:
                b = m2
        qr = (a + b) / 2
        cand = (qr,) + _qexp_r2(qr, t, y, time_power)
        if cand[3] >= best[3]:
            best = cand
    return best


def fit_qexp(series, window=None, time_power=2, q_grid=Q_GRID_DEFAULT,
             refine=True, method="lsq"):
    """Fit O(t) = e_q(-(t/tau)^p), p = time_power, over a window.

    Both methods start from a grid search over q_grid = (lo, hi, step)
    for the q whose ln_q(O)-versus-t^p plot is most linear (refined to
    about +/- 0.01); the slope of that line is -1/tau^2 for p = 2 and
    -1/tau for p = 1.  ``method="linearized"`` stops there.  The default
    ``method="lsq"`` polishes (q, tau) by least squares on O itself,
    which is far less sensitive to oscillations riding on the decay
    (the linearized estimator is dominated by log-residuals of the
    small-O tail).  The reported r2 is always the linearity of the
    ln_q regression at the fitted q, and slope/intercept describe that
    diagnostic line.
    """
    values = _series_values(series)
    if window is None:
        window = default_fit_window(values)
    t = _window_mask(len(values), window)
    y = values[t]
    if len(t) < 5:
        raise FitError(f"window {window} has {len(t)} points; need >= 5")
    if np.any(y <= 0):
        raise FitError("window contains non-positive overlap values")
    if y.min() < 1e-150:
        raise FitError("overlap values too small to linearize")
    if y.max() - y.min() < 1e-12:
        raise FitError(f"no decay inside window {window}")

    q, slope, intercept, r2 = _linearized_qexp(t, y, time_power, q_grid, refine)
    if slope >= 0:
        raise FitError(
            f"no decaying trend in window {window} (slope {slope:.3g} >= 0)"
        )
    tau = float(np.sqrt(-1.0 / slope)) if time_power == 2 else float(-1.0 / slope)

    if method == "lsq":
        from scipy.optimize import least_squares

        tf = t.astype(float)

        def resid(p):
            return e_q(-((tf / p[1]) ** time_power), p[0]) - y

        try:
            sol = least_squares(
                resid, x0=[q, tau],
                bounds=([1.0 + 1e-3, 1e-3], [12.0, 1e7]),
            )
            if sol.success and np.isfinite(sol.x).all():
                q, tau = float(sol.x[0]), float(sol.x[1])
                slope, intercept, r2 = _qexp_r2(q, t, y, time_power)
        except Exception:
            pass    # keep the linearized estimate
    elif method != "linearized":
        raise ValueError(f"unknown fit method {method!r}")

    return QExpFit(
        q=float(q), tau=float(tau), slope=float(slope),
        intercept=float(intercept), r2=float(r2),
        window=(int(window[0]), int(window[1])), time_power=int(time_power),
    )


def fit_gaussian(series, window):
    """ln O regressed on t^2; width is the (non-negative) decay coefficient."""
    values = _series_values(series)
    t = _window_mask(len(values), window)
    y = values[t]
    if len(t) < 5 or np.any(y <= 0):
        raise FitError("gaussian fit needs >= 5 positive points")
    slope, _, r2 = linear_regression(t.astype(float) ** 2, np.log(y))
    if slope > 0:
        raise FitError("gaussian fit found growth, not decay")
    return GaussianFit(width=-slope, window=(int(window[0]), int(window[1])), r2=r2)


def fit_exponential(series, window):
    """ln O regressed on t; rate is the (non-negative) decay rate."""
    values = _series_values(series)
    t = _window_mask(len(values), window)
    y = values[t]
    if len(t) < 5 or np.any(y <= 0):
        raise FitError("exponential fit needs >= 5 positive points")
    slope, _, r2 = linear_regression(t.astype(float), np.log(y))
    if slope > 0:
        raise FitError("exponential fit found growth, not decay")
    return ExponentialFit(rate=-slope, window=(int(window[0]), int(window[1])), r2=r2)


# ------------------------------------------------- window selection

def tail_plateau(values, tail_fraction=0.2):
    k = max(1, int(round(len(values) * tail_fraction)))
    return float(values[-k:].mean())


def _tail_is_flat(values, flat_slope=0.15):
    """True when the second half of the series shows no log-log trend.

    Half the series spans ~0.3 decades of t, enough abscissa range for
    the slope estimate; the last few percent alone would span so little
    that plateau fluctuations masquerade as trends.
    """
    n = len(values) - 1
    t0 = max(1, n // 2)
    t = np.arange(t0, n + 1)
    y = np.maximum(values[t], 1e-300)
    if len(t) < 4:
        return False
    slope, _, _ = linear_regression(np.log10(t.astype(float)), np.log10(y))
    return abs(slope) < flat_slope


def pre_plateau_end(values, plateau_mult=2.0, tail_fraction=0.2):
    """Last index of the decaying stretch.

    The series counts as saturated when its tail is flat on log-log
    axes or when its running minimum stopped falling well before the
    end (saturation dressed with revivals).  Saturated series are cut
    at the first time they drop within plateau_mult of the tail mean;
    still-decaying series keep their whole range.
    """
    values = _series_values(values)
    n = len(values) - 1
    saturated = _tail_is_flat(values) or int(np.argmin(values)) < 0.6 * n
    if not saturated:
        return n
    level = plateau_mult * tail_plateau(values, tail_fraction)
    if level >= values.max():      # never decayed: nothing to cut
        return n
    hits = np.nonzero(values < level)[0]
    hits = hits[hits >= 1]
    return int(hits[0]) if len(hits) else n


def decay_onset(values, shoulder=0.97):
    """First step where the overlap has dropped below the shoulder."""
    values = _series_values(values)
    hits = np.nonzero(values < shoulder)[0]
    return int(hits[0]) if len(hits) else len(values) - 1


def default_fit_window(values):
    """Automatic fit window: detected power-law stretch, else the region
    between decay onset and the plateau."""
    w = powerlaw_window(values)
    if w is not None:
        return (w.t_start, w.t_end)
    a = max(1, decay_onset(values))
    b = pre_plateau_end(values)
    if b - a < 5:
        a, b = 1, len(values) - 1
    return (a, b)


def _log_binned(tvals, yvals, bins_per_decade):
    """Mean log10 t and log10 O in log-spaced t bins."""
    X = np.log10(tvals.astype(float))
    Y = np.log10(yvals)
    nbins = max(2, int(np.ceil((X[-1] - X[0]) * bins_per_decade)))
    edges = np.linspace(X[0], X[-1] + 1e-12, nbins + 1)
    which = np.digitize(X, edges) - 1
    bx, by, bt = [], [], []
    for b in range(nbins):
        sel = which == b
        if not sel.any():
            continue
        bx.append(X[sel].mean())
        by.append(Y[sel].mean())
        bt.append((int(tvals[sel][0]), int(tvals[sel][-1])))
    return np.array(bx), np.array(by), bt


def powerlaw_window(series, r2_min=0.95, min_decades=0.5,
                    slope_band=(-1.6, -0.15), max_end_value=0.5,
                    bins_per_decade=25, restrict=True):
    """Longest log-log-linear stretch of a decaying overlap series.

    The search runs on log-binned data restricted to the decay region
    (past the initial shoulder, before the saturation plateau).  A
    window qualifies when its pooled log-log regression is linear
    (r2 >= r2_min), its slope sits in slope_band, it spans at least
    min_decades in t, and it reaches down to max_end_value; Gaussian or
    exponential decays fail these jointly because their log-log slope
    keeps steepening.  Returns None when nothing qualifies.
    """
    values = _series_values(series)
    n = len(values) - 1
    if n < 10:
        return None
    a = max(1, decay_onset(values)) if restrict else 1
    b = pre_plateau_end(values) if restrict else n
    if b - a < 8:
        return None
    t = np.arange(a, b + 1)
    y = values[t]
    good = y > 1e-14
    t, y = t[good], y[good]
    if len(t) < 8:
        return None

    bx, by, bt = _log_binned(t, y, bins_per_decade)
    if len(bx) < 5:
        return None
    best = None
    log_end_cap = np.log10(max_end_value)
    for i in range(len(bx)):
        for j in range(i + 4, len(bx)):
            dec = bx[j] - bx[i]
            if dec < min_decades:
                continue
            if by[j] > log_end_cap:
                continue
            slope, _, r2 = linear_regression(bx[i:j + 1], by[i:j + 1])
            if not (slope_band[0] <= slope <= slope_band[1]):
                continue
            if r2 < r2_min:
                continue
            key = (round(dec, 6), r2)
            if best is None or key > best[0]:
                best = (key, PowerLawWindow(
                    t_start=bt[i][0], t_end=bt[j][1],
                    decades=float(dec), slope=float(slope), r2=float(r2),
                ))
    return best[1] if best else None


# ------------------------------------------------- classification

POWERLAW_MIN_Q = 2.2             # window fits of exponential decays sit at or below ~2.0
POWERLAW_START_SLACK = (1.4, 10)  # window must start by 1.4x onset or onset+10
CONTEST_MIN_R2 = 0.5             # weaker fits than this mean no decaying trend at all


def powerlaw_candidate(values, powerlaw_kw=None, min_q=POWERLAW_MIN_Q,
                       start_slack=POWERLAW_START_SLACK):
    """Qualifying power-law stretch of a decay, or (None, None).

    Three gates on top of the raw window search: the stretch must begin
    at the decay shoulder (the transitory sits between the quadratic
    start and the tail; detached windows are tail artifacts), its
    q-exponential fit must carry a substantial entropic index
    (exponential decays mimic log-log windows but fit with q below ~1.9),
    and the fit itself must succeed.  Returns (window, fit).
    """
    values = _series_values(values)
    pw = powerlaw_window(values, **(powerlaw_kw or {}))
    if pw is None:
        return None, None
    onset = decay_onset(values)
    lead, pad = start_slack
    if pw.t_start > max(lead * onset, onset + pad):
        return None, None
    try:
        qfit = fit_qexp(values, window=(pw.t_start, pw.t_end),
                        method="linearized")
    except FitError:
        return None, None
    if qfit.q < min_q:
        return None, None
    return pw, qfit


@dataclass(frozen=True)
class DecayClass:
    """Outcome of decay-shape classification for one overlap series.

    ``oscillatory`` marks series that leave the regular band yet sustain
    no decaying trend (collapse/revival beating); it is a fallback, not
    one of the four primary decay shapes.
    """

    kind: str                    # regular | gaussian | exponential | power_law | oscillatory
    qexp: QExpFit = None
    gaussian: GaussianFit = None
    exponential: ExponentialFit = None
    window: PowerLawWindow = None

    @property
    def q_rel(self):
        return self.qexp.q if self.qexp is not None else None


def classify_decay(series, regular_floor=0.9, powerlaw_kw=None):
    """Classify an overlap series as regular, gaussian, exponential or
    power_law.

    Regular: the overlap never leaves (regular_floor, 1].  A qualifying
    power-law stretch (see powerlaw_candidate) marks the transitory
    decay of an edge state and takes precedence: the q-exponential
    family nests the gaussian, so a best-r2 contest against it would be
    ill-posed.  Otherwise the gaussian and exponential linearizations
    over the pre-plateau decay region compete on r2.
    """
    values = _series_values(series)
    if len(values) < 50:
        raise InsufficientDataError(
            f"classification needs >= 50 points, got {len(values)}"
        )
    if values.min() > regular_floor:
        return DecayClass(kind="regular")

    # the gaussian/exponential contest starts once the overlap has left
    # the regular band: including the universal quadratic shoulder would
    # bias every strong decay toward gaussian
    a = max(1, decay_onset(values, shoulder=regular_floor))
    b = pre_plateau_end(values)
    if b - a < 5:
        a, b = 1, len(values) - 1
    region = (a, b)

    fits = {}
    try:
        fits["gaussian"] = fit_gaussian(values, region)
    except FitError:
        pass
    try:
        fits["exponential"] = fit_exponential(values, region)
    except FitError:
        pass

    pw, qfit = powerlaw_candidate(values, powerlaw_kw=powerlaw_kw)
    if pw is not None:
        return DecayClass(kind="power_law", qexp=qfit,
                          gaussian=fits.get("gaussian"),
                          exponential=fits.get("exponential"), window=pw)
    if not fits or max(f.r2 for f in fits.values()) < CONTEST_MIN_R2:
        # left the regular band but sustains no decaying trend at all
        # (beating/revival pattern of a perturbed torus state)
        return DecayClass(kind="oscillatory")
    kind = max(fits, key=lambda k: fits[k].r2)
    return DecayClass(
        kind=kind,
        gaussian=fits.get("gaussian"),
        exponential=fits.get("exponential"),
    )
