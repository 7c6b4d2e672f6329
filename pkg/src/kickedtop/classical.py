"""Classical kicked top: sphere map, orbits, projection, and sensitivity.

One step twists the sphere about z by an angle alpha*z and then rotates
it a quarter turn about y:

    x' = z
    y' = x sin(alpha z) + y cos(alpha z)
    z' = -x cos(alpha z) + y sin(alpha z)

For alpha = 3 the dynamics is mixed; the two order-one fixed points at
the centers of the regular islands are FIXED_POINT_PLUS/MINUS below.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPointError
from .tsallis import fit_qexp, linear_regression, FitError

FIXED_POINT_PLUS = (0.6294126, 0.4557187, 0.6294126)
FIXED_POINT_MINUS = (-0.6294126, 0.4557187, -0.6294126)

# a deep chaotic-sea seed: (0.1, 0.95, +z) normalized onto the sphere
CHAOTIC_SEED = (0.1, 0.95, float(np.sqrt(1.0 - 0.1**2 - 0.95**2)))


def check_point(p, tol=1e-7):
    """Validate a sphere point; tol admits coordinates rounded to 7 digits."""
    p = np.asarray(p, dtype=float)
    if p.shape != (3,):
        raise InvalidPointError(f"point must have 3 components, got shape {p.shape}")
    r2 = float(p @ p)
    if abs(r2 - 1.0) > tol:
        raise InvalidPointError(f"point off the unit sphere: |r|^2 = {r2}")
    return p


def step(p, alpha):
    """One map iteration."""
    x, y, z = p
    g = alpha * z
    sg, cg = np.sin(g), np.cos(g)
    return np.array([z, x * sg + y * cg, -x * cg + y * sg])


def orbit(p0, alpha, n):
    """Trajectory [p0, p1, ..., pn] (n+1 points)."""
    if n < 1:
        raise ValueError(f"orbit length must be >= 1, got {n}")
    p = check_point(p0)
    out = np.empty((n + 1, 3))
    out[0] = p
    for i in range(1, n + 1):
        p = step(p, alpha)
        out[i] = p
    return out


def project(p):
    """Area-style projection of a sphere point onto the x-z plane.

    Scales x and z by R/r with R = sqrt(2(1-|y|)), r = sqrt(1-y^2).
    The poles y = +-1 map to (0, 0); the R/r limit there is finite, so
    this is the continuous extension, not a special case.
    """
    x, y, z = np.asarray(p, dtype=float)
    ay = abs(y)
    if ay >= 1.0 - 1e-12:
        return 0.0, 0.0
    s = np.sqrt(2.0 * (1.0 - ay)) / np.sqrt(1.0 - y * y)
    return float(x * s), float(z * s)


def project_orbit(points):
    return np.array([project(p) for p in np.asarray(points)])


def _tangent_displacement(p, d0, direction=None):
    """A point at geodesic distance ~d0 from p, displaced within the sphere."""
    if direction is None:
        direction = np.array([0.3, -0.5, 0.81])
    v = np.asarray(direction, dtype=float)
    v = v - (v @ p) * p
    nv = np.linalg.norm(v)
    if nv < 1e-8:
        v = np.array([0.9, 0.1, 0.1])
        v -= (v @ p) * p
        nv = np.linalg.norm(v)
    q = p + (d0 / nv) * v
    return q / np.linalg.norm(q)


def great_circle_distance(a, b):
    # arcsin of the half-chord stays accurate for separations down to
    # machine precision, where arccos of the dot product loses all digits
    chord = np.linalg.norm(np.asarray(a) - np.asarray(b))
    return float(2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0)))


@dataclass(frozen=True)
class SensitivitySeries:
    """Two-trajectory separation growth xi(t) and its fits."""

    xi: np.ndarray = field(repr=False)
    lyapunov: float              # per-step exponent from renormalized growth
    q_sen: float = None          # entropic index of the power-law growth fit
    lambda_q: float = None       # generalized growth coefficient
    truncated: bool = False      # separation left the linear regime
    meta: dict = field(default_factory=dict)

    @property
    def steps(self):
        return np.arange(len(self.xi))


def sensitivity(p0, alpha, n, d0=1e-9, direction=None, fit_growth=True):
    """Separation ratio xi(t) of two trajectories started d0 apart.

    xi is the raw great-circle separation over d0 (no renormalization),
    truncated once it leaves the linear regime (separation ~ O(1)).  The
    per-step Lyapunov estimate comes from a parallel renormalized pair.
    The growth fit uses the reciprocal series: 1/e_q(L t) equals
    e_{2-q}(-L t) exactly, so fitting the decay of 1/xi with time power
    1 yields q_sen = 2 - q_fit and lambda_q = 1/tau_fit.
    """
    p = check_point(p0)
    q = _tangent_displacement(p, d0, direction)
    d_init = great_circle_distance(p, q)

    # raw pair for xi(t)
    xi = [1.0]
    truncated = False
    pr, qr = p.copy(), q.copy()
    # renormalized pair for the Lyapunov estimate
    pb, qb = p.copy(), q.copy()
    log_growth = 0.0
    for t in range(1, n + 1):
        if not truncated:
            pr, qr = step(pr, alpha), step(qr, alpha)
            pr /= np.linalg.norm(pr)
            qr /= np.linalg.norm(qr)
            d = great_circle_distance(pr, qr)
            if d > 1.0:
                truncated = True
            else:
                xi.append(d / d_init)
        pb, qb = step(pb, alpha), step(qb, alpha)
        pb /= np.linalg.norm(pb)
        qb /= np.linalg.norm(qb)
        db = great_circle_distance(pb, qb)
        log_growth += np.log(db / d_init)
        qb = pb + (qb - pb) * (d_init / db)
        qb /= np.linalg.norm(qb)
    lyapunov = log_growth / n

    xi = np.array(xi)
    q_sen = lam = None
    if fit_growth and len(xi) >= 10 and xi.max() > 1.0:
        try:
            fit = fit_qexp(1.0 / xi, window=(1, len(xi) - 1), time_power=1)
            q_sen = 2.0 - fit.q
            lam = 1.0 / fit.tau
        except FitError:
            pass
    return SensitivitySeries(
        xi=xi, lyapunov=float(lyapunov), q_sen=q_sen, lambda_q=lam,
        truncated=truncated,
        meta={"alpha": alpha, "d0": d0, "p0": tuple(np.asarray(p0, float))},
    )


def lyapunov_estimate(p0, alpha, n=4000, d0=1e-9):
    """Long-run per-step Lyapunov exponent (renormalized two-trajectory)."""
    return sensitivity(p0, alpha, n, d0=d0, fit_growth=False).lyapunov
