"""Angular momentum operators and the elementary unitaries of the kicked top.

All matrices act on the spin-J multiplet in the basis of Jz eigenstates
|m> ordered m = J, J-1, ..., -J (descending).  hbar = 1 throughout.
"""

import numpy as np
from scipy.linalg import eigh

from .errors import InvalidSpinError, NumericalError

UNITARITY_TOL = 1e-10

# eigendecompositions of Jy keyed by J (dense, ~15 MB at J=480)
_JY_EIG_CACHE = {}


def _check_spin(J):
    if not (isinstance(J, (int, np.integer)) and J >= 1):
        raise InvalidSpinError(f"spin J must be a positive integer, got {J!r}")
    return int(J)


def m_values(J):
    """Eigenvalues of Jz in basis order: J, J-1, ..., -J."""
    J = _check_spin(J)
    return np.arange(J, -J - 1, -1, dtype=float)


def jz_matrix(J):
    """Diagonal Jz in its own eigenbasis."""
    return np.diag(m_values(J)).astype(complex)


def jplus_matrix(J):
    """Raising operator, <m+1|J+|m> = sqrt(J(J+1) - m(m+1))."""
    J = _check_spin(J)
    m = m_values(J)
    mat = np.zeros((2 * J + 1, 2 * J + 1), dtype=complex)
    for col in range(1, 2 * J + 1):
        mc = m[col]
        mat[col - 1, col] = np.sqrt(J * (J + 1) - mc * (mc + 1))
    return mat

def jx_matrix(J):
    jp = jplus_matrix(J)
    return (jp + jp.conj().T) / 2


def jy_matrix(J):
    jp = jplus_matrix(J)
    return (jp - jp.conj().T) / 2j


def _jy_eig(J):
    J = _check_spin(J)
    if J not in _JY_EIG_CACHE:
        try:
            w, v = eigh(jy_matrix(J))
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise NumericalError(f"Jy eigendecomposition failed at J={J}: {exc}")
        _JY_EIG_CACHE[J] = (w, v)
    return _JY_EIG_CACHE[J]


def rotation_y(J, angle):
    """exp(-i * angle * Jy) via Hermitian eigendecomposition of Jy.

    Raises NumericalError if the result fails the unitarity check, with
    the residual in the message.
    """
    if not np.isfinite(angle):
        raise InvalidSpinError(f"rotation angle must be finite, got {angle!r}")
    w, v = _jy_eig(J)
    u = (v * np.exp(-1j * angle * w)) @ v.conj().T
    res = unitarity_residual(u)
    if res > UNITARITY_TOL:
        raise NumericalError(
            f"rotation_y(J={J}, angle={angle}) unitarity residual {res:.2e}"
        )
    return u


def torsion(J, strength):
    """Diagonal twist exp(-i * strength * m^2 / (2J)) over m = J..-J."""
    if not np.isfinite(strength):
        raise InvalidSpinError(f"torsion strength must be finite, got {strength!r}")
    m = m_values(J)
    return np.diag(np.exp(-1j * strength * m**2 / (2 * J)))


def unitarity_residual(u):
    """max |U^dag U - I| entry."""
    n = u.shape[0]
    return float(np.abs(u.conj().T @ u - np.eye(n)).max())


def hermiticity_residual(a):
    """max |A - A^dag| entry."""
    return float(np.abs(a - a.conj().T).max())
