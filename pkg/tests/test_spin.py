import numpy as np
import pytest

from kickedtop import spin
from kickedtop.errors import InvalidSpinError

SQ2 = np.sqrt(2.0)


def test_jz_spin_one():
    assert np.allclose(spin.jz_matrix(1), np.diag([1.0, 0.0, -1.0]))


def test_jz_dimension():
    assert spin.jz_matrix(240).shape == (481, 481)


@pytest.mark.parametrize("J", [1, 2, 7, 40])
def test_jz_traceless(J):
    assert abs(np.trace(spin.jz_matrix(J))) == 0.0


@pytest.mark.parametrize("J", [1, 3, 12])
def test_jy_hermitian(J):
    assert spin.hermiticity_residual(spin.jy_matrix(J)) < 1e-12


def test_jy_spin_one_ladder_values():
    # hand evaluation of <m'|Jy|m> from the ladder formula at J=1:
    # sqrt(2) off-diagonals of J+-, divided by 2i
    expected = np.array([
        [0, -1j / SQ2, 0],
        [1j / SQ2, 0, -1j / SQ2],
        [0, 1j / SQ2, 0],
    ])
    assert np.abs(spin.jy_matrix(1) - expected).max() < 1e-15


def test_commutator_jz_jy():
    # [Jz, Jy] = -i Jx by direct matrix arithmetic at J=2
    jz, jy, jx = spin.jz_matrix(2), spin.jy_matrix(2), spin.jx_matrix(2)
    comm = jz @ jy - jy @ jz
    assert np.abs(comm - (-1j) * jx).max() < 1e-13


def test_rotation_zero_angle_is_identity():
    assert np.abs(spin.rotation_y(5, 0.0) - np.eye(11)).max() < 1e-12


def test_rotation_group_property():
    a, b = 0.7, -1.9
    lhs = spin.rotation_y(6, a) @ spin.rotation_y(6, b)
    rhs = spin.rotation_y(6, a + b)
    assert np.abs(lhs - rhs).max() < 1e-10


def test_rotation_matches_wigner_d1():
    # closed-form Wigner small-d matrix for j=1 at beta = pi/2
    d1 = np.array([
        [0.5, -1 / SQ2, 0.5],
        [1 / SQ2, 0.0, -1 / SQ2],
        [0.5, 1 / SQ2, 0.5],
    ])
    assert np.abs(spin.rotation_y(1, np.pi / 2) - d1).max() < 1e-12


def test_rotation_full_turn():
    # integer J: a 2*pi rotation is the identity
    assert np.abs(spin.rotation_y(4, 2 * np.pi) - np.eye(9)).max() < 1e-10


@pytest.mark.parametrize("J", [2, 24, 240, 480])
def test_rotation_unitarity(J):
    u = spin.rotation_y(J, np.pi / 2)
    assert spin.unitarity_residual(u) < 1e-10


def test_torsion_zero_strength():
    assert np.abs(spin.torsion(3, 0.0) - np.eye(7)).max() == 0.0


def test_torsion_unimodular_diagonal():
    d = np.diag(spin.torsion(10, 2.7))
    assert np.abs(np.abs(d) - 1.0).max() < 1e-14


def test_torsion_entries_J240():
    # direct substitution exp(-i 3 m^2 / 480)
    tor = spin.torsion(240, 3.0)
    for m in (240, 119, 0, -77, -240):
        idx = 240 - m
        assert abs(tor[idx, idx] - np.exp(-1j * 3.0 * m**2 / 480.0)) < 1e-14


def test_torsion_commutes_with_jz():
    tor, jz = spin.torsion(6, 1.3), spin.jz_matrix(6)
    assert np.abs(tor @ jz - jz @ tor).max() == 0.0


@pytest.mark.parametrize("bad", [0, -3, 2.5, "x"])
def test_invalid_spin_rejected(bad):
    with pytest.raises(InvalidSpinError):
        spin.jz_matrix(bad)


def test_nonfinite_angle_rejected():
    with pytest.raises(InvalidSpinError):
        spin.rotation_y(2, np.inf)
    with pytest.raises(InvalidSpinError):
        spin.torsion(2, np.nan)
