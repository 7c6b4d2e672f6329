import numpy as np
import pytest

from kickedtop import coherent, top
from kickedtop import evolution as evolve
from kickedtop.errors import DimensionMismatchError, InsufficientDataError


def random_oo_state(J, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=J // 2) + 1j * rng.normal(size=J // 2)
    return coherent.QuantumState(v / np.linalg.norm(v), f"oo:{J}")


def test_zero_steps_identity():
    st = random_oo_state(8, 0)
    u, _ = top.oo_floquet_pair(top.KickedTopSpec(8, 3.0))
    out = evolve.evolve(u, st, 0)
    assert np.abs(out.amps - st.amps).max() == 0.0


def test_norm_preserved_long_run():
    st = random_oo_state(16, 1)
    u, _ = top.oo_floquet_pair(top.KickedTopSpec(16, 3.0))
    out = evolve.evolve(u, st, 1000)
    assert abs(out.norm() - 1.0) < 1e-10


def test_semigroup_property():
    st = random_oo_state(12, 2)
    u, _ = top.oo_floquet_pair(top.KickedTopSpec(12, 3.0))
    whole = evolve.evolve(u, st, 37)
    parts = evolve.evolve(u, evolve.evolve(u, st, 21), 16)
    assert np.abs(whole.amps - parts.amps).max() < 1e-10


def test_dimension_mismatch():
    st = random_oo_state(8, 3)
    u, _ = top.oo_floquet_pair(top.KickedTopSpec(12, 3.0))
    with pytest.raises(DimensionMismatchError):
        evolve.evolve(u, st, 1)


def test_overlap_self_and_orthogonal():
    a = coherent.QuantumState(np.array([1.0, 0, 0, 0], dtype=complex), "oo:8")
    b = coherent.QuantumState(np.array([0, 1.0, 0, 0], dtype=complex), "oo:8")
    assert evolve.overlap(a, a) == pytest.approx(1.0, abs=1e-14)
    assert evolve.overlap(a, b) == 0.0


def test_overlap_requires_same_basis():
    a = coherent.QuantumState(np.ones(4, dtype=complex) / 2, "oo:8")
    b = coherent.QuantumState(np.ones(4, dtype=complex) / 2, "full:3")
    with pytest.raises(DimensionMismatchError):
        evolve.overlap(a, b)


def test_overlap_invariant_under_joint_evolution():
    # unitary evolution preserves inner products
    u, _ = top.oo_floquet_pair(top.KickedTopSpec(16, 3.0))
    a, b = random_oo_state(16, 4), random_oo_state(16, 5)
    before = evolve.overlap(a, b)
    after = evolve.overlap(evolve.evolve(u, a, 100), evolve.evolve(u, b, 100))
    assert abs(after - before) < 1e-12


def test_fidelity_zero_delta_all_ones():
    spec = top.KickedTopSpec(16, 3.0, 0.0)
    st = random_oo_state(16, 6)
    series = evolve.fidelity_series(spec, st, 200)
    assert np.abs(series.values - 1.0).max() < 1e-12


def test_fidelity_symmetric_under_role_swap():
    # |<psi_u|psi_p>| is unchanged when perturbed and unperturbed swap
    J, alpha, delta = 16, 3.0, 0.02
    st = random_oo_state(J, 7)
    u0, u1 = top.oo_floquet_pair(top.KickedTopSpec(J, alpha, delta))
    fwd = evolve._series_from_operators(u0, u1, st.amps, 150)
    rev = evolve._series_from_operators(u1, u0, st.amps, 150)
    assert np.abs(fwd.values - rev.values).max() < 1e-12


def test_fidelity_requires_matching_basis():
    spec = top.KickedTopSpec(16, 3.0, 0.01)
    with pytest.raises(DimensionMismatchError):
        evolve.fidelity_series(spec, random_oo_state(8, 8), 10)


def test_plateau_of_constant_series():
    assert evolve.plateau(np.full(100, 0.37)) == pytest.approx(0.37)


def test_plateau_rejects_short_series():
    with pytest.raises(InsufficientDataError):
        evolve.plateau(np.ones(5))


def test_short_time_exponent_quadratic():
    t = np.arange(300.0)
    series = np.clip(1 - 2e-5 * t**2, 0, 1)
    assert evolve.short_time_exponent(series) == pytest.approx(2.0, abs=0.01)


def test_short_time_exponent_needs_decay():
    with pytest.raises(InsufficientDataError):
        evolve.short_time_exponent(np.ones(100))
