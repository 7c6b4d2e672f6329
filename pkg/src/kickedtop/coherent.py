"""Spin coherent states and their projection into the oo parity subspace.

A coherent state centered at the sphere point with polar angle theta and
azimuth phi is the highest-weight state |J, J> rotated by theta about
the axis (-sin phi, cos phi, 0).  Its Jz amplitudes are

    <J, m| = binom(2J, J+m)^(1/2) cos(theta/2)^(J+m) sin(theta/2)^(J-m)
             * exp(+i (J-m) phi)

with the m = J amplitude real and non-negative.  The phase sign makes
the expectation vector <J>/J equal (sin t cos p, sin t sin p, cos t),
i.e. the state sits exactly where the classical map coordinates say.
Amplitudes are assembled in log space so large J does not overflow the
binomial factor.
"""

from dataclasses import dataclass, field
from math import lgamma

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyProjectionError,
    InvalidPointError,
    InvalidSpinError,
)

EMPTY_PROJECTION_TOL = 1e-10


@dataclass(frozen=True)
class QuantumState:
    """Normalized amplitude vector tagged with its basis."""

    amps: np.ndarray = field(repr=False)
    basis: str        # "full:J" or "oo:J"

    @property
    def dim(self):
        return len(self.amps)

    def norm(self):
        return float(np.linalg.norm(self.amps))


def cartesian_to_angles(x, y, z):
    """(theta, phi) of a unit-sphere point; phi = 0 at the poles.

    The sphere gate admits 1e-7 so coordinates rounded to 7 digits
    (such as the published fixed point) pass.
    """
    r2 = x * x + y * y + z * z
    if abs(r2 - 1.0) > 1e-7:
        raise InvalidPointError(f"({x}, {y}, {z}) is off the unit sphere: |r|^2 = {r2}")
    theta = float(np.arccos(np.clip(z, -1.0, 1.0)))
    phi = 0.0 if abs(z) >= 1.0 - 1e-15 else float(np.arctan2(y, x))
    return theta, phi


def angles_to_cartesian(theta, phi):
    st = np.sin(theta)
    return float(st * np.cos(phi)), float(st * np.sin(phi)), float(np.cos(theta))


def coherent_state(J, theta, phi):
    """Coherent state in the full (2J+1)-dim basis, m descending."""
    if not (isinstance(J, (int, np.integer)) and J >= 1):
        raise InvalidSpinError(f"spin J must be a positive integer, got {J!r}")
    if not (0.0 <= theta <= np.pi + 1e-12):
        raise InvalidPointError(f"polar angle must lie in [0, pi], got {theta}")
    J = int(J)
    dim = 2 * J + 1
    c, s = np.cos(theta / 2), np.sin(theta / 2)

    amps = np.zeros(dim, dtype=complex)
    if s <= 0.0:                      # north pole: |J, J>
        amps[0] = 1.0
        return QuantumState(amps, f"full:{J}")
    if c <= 0.0:                      # south pole: |J, -J> up to phase
        amps[-1] = 1.0
        return QuantumState(amps, f"full:{J}")

    m = np.arange(J, -J - 1, -1, dtype=float)
    k = J + m                         # 2J .. 0
    ln_binom = np.array(
        [lgamma(2 * J + 1) - lgamma(ki + 1) - lgamma(2 * J - ki + 1) for ki in k]
    )
    ln_mag = 0.5 * ln_binom + k * np.log(c) + (2 * J - k) * np.log(s)
    amps = np.exp(ln_mag) * np.exp(1j * (J - m) * phi)
    amps /= np.linalg.norm(amps)
    return QuantumState(amps, f"full:{J}")


def coherent_state_at(J, x, y, z):
    """Coherent state centered at a cartesian unit-sphere point."""
    theta, phi = cartesian_to_angles(x, y, z)
    return coherent_state(J, theta, phi)


def bloch_vector(state, jx, jy, jz):
    """(<Jx>, <Jy>, <Jz>) of a full-basis state, given the operator matrices."""
    v = state.amps
    return tuple(float(np.vdot(v, op @ v).real) for op in (jx, jy, jz))


def project_oo(state, decomp, renormalize=True):
    """Project a full-basis state onto the oo subspace.

    Returns (QuantumState in the oo basis, weight) where weight is the
    squared norm of the projection before any renormalization.
    """
    if state.basis != f"full:{decomp.J}":
        raise DimensionMismatchError(
            f"project_oo needs a full:{decomp.J} state, got {state.basis}"
        )
    comp = decomp.columns("oo").conj().T @ state.amps
    weight = float(np.linalg.norm(comp) ** 2)
    if weight < EMPTY_PROJECTION_TOL:
        raise EmptyProjectionError(
            f"state has no oo component (weight {weight:.2e})"
        )
    if renormalize:
        comp = comp / np.sqrt(weight)
    return QuantumState(comp, f"oo:{decomp.J}"), weight
