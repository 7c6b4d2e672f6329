"""Kicked top Floquet operator, parity subspaces, and perturbation regimes.

One period of the top is a pi/2 rotation about y composed with a z^2
torsion of strength alpha.  The perturbed top is the same map with kick
strength alpha + delta; the diagonal torsion factors commute, so this
equals appending a torsion of strength delta.

For even J the top commutes with 180-degree rotations about x and y,
splitting the Hilbert space into three invariant subspaces labelled by
those parities (ee, oo, oe).  All experiments run in the oo block, of
dimension J/2.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur

from . import spin
from .errors import (
    InvalidSpinError,
    NotBlockDiagonalError,
    NumericalError,
)

OFF_BLOCK_TOL = 1e-8     # runtime gate; the test suite checks 1e-10

_PARITY_CACHE = {}


@dataclass(frozen=True)
class KickedTopSpec:
    """Parameters of one unperturbed/perturbed top pair."""

    J: int
    alpha: float = 3.0
    delta: float = 0.0

    def __post_init__(self):
        if not (isinstance(self.J, (int, np.integer)) and self.J >= 2 and self.J % 2 == 0):
            raise InvalidSpinError(
                f"kicked top experiments need even integer J >= 2, got {self.J!r}"
            )
        if not np.isfinite(self.alpha):
            raise InvalidSpinError(f"alpha must be finite, got {self.alpha!r}")
        if not (np.isfinite(self.delta) and self.delta >= 0):
            raise InvalidSpinError(f"delta must be finite and >= 0, got {self.delta!r}")


@dataclass(frozen=True)
class SubspaceDecomposition:
    """Orthogonal transform T whose column groups span the parity subspaces."""

    J: int
    T: np.ndarray = field(repr=False)
    block_dims: tuple  # (n_ee, n_oo, n_oe)

    @property
    def slices(self):
        n_ee, n_oo, n_oe = self.block_dims
        return {
            "ee": slice(0, n_ee),
            "oo": slice(n_ee, n_ee + n_oo),
            "oe": slice(n_ee + n_oo, n_ee + n_oo + n_oe),
        }

    def columns(self, label):
        return self.T[:, self.slices[label]]


@dataclass(frozen=True)
class PerturbationRegime:
    """Level-spacing diagnostics for a perturbed top in the oo subspace."""

    N: int
    delta: float
    level_spacing: float        # 2*pi/N
    sigma: float                # typical off-diagonal perturbation element
    delta_c: float              # sqrt(2*pi/N^3)
    regime: str                 # "weak" or "FGR"


def build_qkt(spec):
    """Floquet operator of the (unperturbed) top described by spec.

    Call with ``KickedTopSpec(J, alpha + delta)`` for the perturbed map.
    """
    if not isinstance(spec, KickedTopSpec):
        spec = KickedTopSpec(*spec)
    return spin.rotation_y(spec.J, np.pi / 2) @ spin.torsion(spec.J, spec.alpha)


def parity_basis(J):
    """Subspace decomposition of the even-J top.

    Columns of T, grouped ee then oo then oe, with m = 1..J/2 per family:

      ee: |0>, (|2m> + |-2m>)/sqrt2
      oo: (|2m-1> - |1-2m>)/sqrt2
      oe: (|2m> - |-2m>)/sqrt2, then (|2m-1> + |1-2m>)/sqrt2
    """
    if not (isinstance(J, (int, np.integer)) and J >= 2 and J % 2 == 0):
        raise InvalidSpinError(f"parity decomposition needs even J >= 2, got {J!r}")
    J = int(J)
    if J in _PARITY_CACHE:
        return _PARITY_CACHE[J]

    dim = 2 * J + 1
    idx = lambda m: J - m          # basis order m = J..-J
    T = np.zeros((dim, dim))
    s = 1 / np.sqrt(2)
    col = 0
    T[idx(0), col] = 1.0
    col += 1
    for m in range(1, J // 2 + 1):
        T[idx(2 * m), col] = s
        T[idx(-2 * m), col] = s
        col += 1
    for m in range(1, J // 2 + 1):
        T[idx(2 * m - 1), col] = s
        T[idx(1 - 2 * m), col] = -s
        col += 1
    for m in range(1, J // 2 + 1):
        T[idx(2 * m), col] = s
        T[idx(-2 * m), col] = -s
        col += 1
    for m in range(1, J // 2 + 1):
        T[idx(2 * m - 1), col] = s
        T[idx(1 - 2 * m), col] = s
        col += 1

    decomp = SubspaceDecomposition(
        J=J, T=T, block_dims=(J // 2 + 1, J // 2, J)
    )
    _PARITY_CACHE[J] = decomp
    return decomp


def off_block_residual(U, decomp):
    """Largest |entry| of T^dag U T outside the three diagonal blocks."""
    B = decomp.T.conj().T @ U @ decomp.T
    mask = np.ones(B.shape, dtype=bool)
    for sl in decomp.slices.values():
        mask[sl, sl] = False
    return float(np.abs(B[mask]).max())


def oo_block(U, decomp):
    """The oo sub-block of T^dag U T.

    Raises NotBlockDiagonalError when off-block leakage exceeds the
    runtime gate (wrong basis, or an operator that does not share the
    top's parity structure).
    """
    B = decomp.T.conj().T @ U @ decomp.T
    mask = np.ones(B.shape, dtype=bool)
    for sl in decomp.slices.values():
        mask[sl, sl] = False
    leak = float(np.abs(B[mask]).max())
    if leak >= OFF_BLOCK_TOL:
        raise NotBlockDiagonalError(
            f"off-block residual {leak:.2e} >= {OFF_BLOCK_TOL:.0e}"
        )
    sl = decomp.slices["oo"]
    return np.ascontiguousarray(B[sl, sl])


def oo_floquet_pair(spec):
    """(U_oo, U'_oo) for the unperturbed and perturbed tops of spec."""
    decomp = parity_basis(spec.J)
    u0 = oo_block(build_qkt(KickedTopSpec(spec.J, spec.alpha)), decomp)
    if spec.delta == 0.0:
        return u0, u0
    u1 = oo_block(build_qkt(KickedTopSpec(spec.J, spec.alpha + spec.delta)), decomp)
    return u0, u1


def critical_delta(N):
    """Critical perturbation strength sqrt(2*pi/N^3) for an N-dim block."""
    return float(np.sqrt(2 * np.pi / N**3))


def perturbation_stats(spec):
    """Perturbation-regime diagnostics in the oo subspace.

    The unperturbed oo Floquet block is diagonalized, its eigenvectors
    ordered by eigenphase ascending in (-pi, pi], and the torsion
    generator Jz^2/(2J) (restricted to oo) is transformed into that
    basis.  sigma is the rms of the strictly off-diagonal elements,
    scaled by delta.
    """
    decomp = parity_basis(spec.J)
    u0 = oo_block(build_qkt(KickedTopSpec(spec.J, spec.alpha)), decomp)
    N = u0.shape[0]

    # Schur of a normal matrix: unitary Q, (numerically) diagonal T
    try:
        tmat, q = schur(u0, output="complex")
    except Exception as exc:  # pragma: no cover
        raise NumericalError(f"oo-block eigendecomposition failed: {exc}")
    phases = np.angle(np.diag(tmat))      # in (-pi, pi]
    order = np.argsort(phases, kind="stable")
    q = q[:, order]

    v_full = spin.jz_matrix(spec.J) ** 2 / (2 * spec.J)
    sl = decomp.slices["oo"]
    v_oo = (decomp.T.conj().T @ v_full @ decomp.T)[sl, sl]
    v_eig = q.conj().T @ v_oo @ q
    off = ~np.eye(N, dtype=bool)
    sigma = float(np.sqrt(spec.delta**2 * np.mean(np.abs(v_eig[off]) ** 2)))

    spacing = 2 * np.pi / N
    return PerturbationRegime(
        N=N,
        delta=spec.delta,
        level_spacing=spacing,
        sigma=sigma,
        delta_c=critical_delta(N),
        regime="FGR" if sigma > spacing else "weak",
    )
