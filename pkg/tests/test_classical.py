import numpy as np
import pytest

from kickedtop import classical
from kickedtop.errors import InvalidPointError


def test_both_fixed_points_are_fixed():
    for fp in (classical.FIXED_POINT_PLUS, classical.FIXED_POINT_MINUS):
        p = np.asarray(fp)
        assert np.abs(classical.step(p, 3.0) - p).max() < 1e-6


def test_equator_point_is_fixed():
    # z = 0 gives sin(alpha z) = 0: (0, 1, 0) maps to itself exactly
    p = np.array([0.0, 1.0, 0.0])
    assert np.abs(classical.step(p, 3.0) - p).max() == 0.0


def test_step_preserves_norm():
    rng = np.random.default_rng(0)
    p = rng.normal(size=3)
    p /= np.linalg.norm(p)
    q = classical.step(p, 3.0)
    assert abs(q @ q - 1.0) < 1e-12


def test_orbit_shape_and_drift():
    pts = classical.orbit(np.asarray(classical.CHAOTIC_SEED), 3.0, 10000)
    assert pts.shape == (10001, 3)
    assert np.abs((pts**2).sum(axis=1) - 1.0).max() < 1e-8


def test_orbit_first_step_matches_step():
    p0 = np.asarray(classical.CHAOTIC_SEED)
    pts = classical.orbit(p0, 3.0, 1)
    assert np.abs(pts[0] - p0).max() == 0.0
    assert np.abs(pts[1] - classical.step(p0, 3.0)).max() == 0.0


def test_orbit_from_fixed_point_is_constant():
    pts = classical.orbit(np.asarray(classical.FIXED_POINT_PLUS), 3.0, 200)
    assert np.abs(pts - pts[0]).max() < 1e-4


def test_chaotic_orbit_fills_sea():
    pts = classical.orbit(np.asarray(classical.CHAOTIC_SEED), 3.0, 10000)
    assert pts[:, 2].std() > 0.3


def test_orbit_validates_input():
    with pytest.raises(InvalidPointError):
        classical.orbit(np.array([1.0, 1.0, 1.0]), 3.0, 10)
    with pytest.raises(ValueError):
        classical.orbit(np.array([0.0, 0.0, 1.0]), 3.0, 0)


def test_projection_equator():
    px, pz = classical.project((0.6, 0.0, 0.8))
    assert px == pytest.approx(0.6 * np.sqrt(2))
    assert pz == pytest.approx(0.8 * np.sqrt(2))


def test_projection_fixed_point():
    x, y, z = classical.FIXED_POINT_PLUS
    s = np.sqrt(2 * (1 - y)) / np.sqrt(1 - y * y)
    px, pz = classical.project((x, y, z))
    assert px == pytest.approx(x * s, abs=1e-12)
    assert pz == pytest.approx(z * s, abs=1e-12)


def test_projection_poles():
    assert classical.project((0.0, 1.0, 0.0)) == (0.0, 0.0)
    assert classical.project((0.0, -1.0, 0.0)) == (0.0, 0.0)


def test_sensitivity_fixed_point_bounded():
    sens = classical.sensitivity(np.asarray(classical.FIXED_POINT_PLUS), 3.0, 400)
    assert abs(sens.lyapunov) < 0.05
    assert not sens.truncated
    assert sens.xi.max() < 50.0


def test_sensitivity_chaotic_positive_lyapunov():
    sens = classical.sensitivity(np.asarray(classical.CHAOTIC_SEED), 3.0, 2000)
    assert sens.lyapunov > 0.1
    assert sens.truncated          # separation left the linear regime


def test_sensitivity_xi_independent_of_d0():
    # linear-regime definition: halving d0 leaves xi unchanged while the
    # separation stays far from saturation
    p0 = np.asarray(classical.CHAOTIC_SEED)
    a = classical.sensitivity(p0, 3.0, 40, d0=1e-9)
    b = classical.sensitivity(p0, 3.0, 40, d0=5e-10)
    n = min(len(a.xi), len(b.xi), 21)
    assert np.abs(a.xi[1:n] / b.xi[1:n] - 1.0).max() < 0.01


def test_sensitivity_growth_fit_via_reciprocal():
    # 1/e_q(L t) equals e_{2-q}(-L t) exactly, so a synthetic power-law
    # growth comes back with the right q_sen and lambda
    from kickedtop.tsallis import e_q, fit_qexp

    q_sen, lam = 0.4, 0.05
    t = np.arange(200.0)
    xi = np.array([1.0 / e_q(-lam * tt, 2.0 - q_sen) for tt in t])
    fit = fit_qexp(1.0 / xi, window=(1, 199), time_power=1)
    assert 2.0 - fit.q == pytest.approx(q_sen, abs=0.05)
    assert 1.0 / fit.tau == pytest.approx(lam, rel=0.05)


def test_lyapunov_estimate_matches_sensitivity():
    lam = classical.lyapunov_estimate(np.asarray(classical.CHAOTIC_SEED), 3.0, n=3000)
    assert 0.2 < lam < 0.5
