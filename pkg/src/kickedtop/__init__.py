"""Quantum kicked top: overlap decay, nonextensive fits, edge of chaos."""

from . import classical, coherent, edge, errors, evolution, spin, top, tsallis
from .classical import (
    CHAOTIC_SEED,
    FIXED_POINT_MINUS,
    FIXED_POINT_PLUS,
    SensitivitySeries,
    lyapunov_estimate,
    orbit,
    project,
    sensitivity,
)
from .coherent import (
    QuantumState,
    angles_to_cartesian,
    cartesian_to_angles,
    coherent_state,
    coherent_state_at,
    project_oo,
)
from .edge import (
    DeltaSweepResult,
    EdgeScanResult,
    delta_sweep,
    scan_edge,
    scan_point,
    scan_state,
    summary_table,
)
from .evolution import OverlapSeries, evolve, fidelity_series, overlap, plateau
from .spin import jy_matrix, jz_matrix, rotation_y, torsion
from .top import (
    KickedTopSpec,
    PerturbationRegime,
    SubspaceDecomposition,
    build_qkt,
    critical_delta,
    oo_block,
    parity_basis,
    perturbation_stats,
)
from .tsallis import (
    DecayClass,
    QExpFit,
    classify_decay,
    e_q,
    fit_qexp,
    ln_q,
    powerlaw_window,
    s_q,
)

__version__ = "0.1.0"
