"""Minimum two-qutrit state tomography with local one-qutrit SIC-POVMs."""

from tomolab._core import (
    PAIR_STATE_PHASE,
    SLIT_PATH_PHASE,
    FOURIER_POINT_PHASES,
    EntanglementReport,
    ExperimentGeometry,
    FidelityScanResult,
    MeasurementRecord,
    PovmSet,
    ReconstructionResult,
    RobustnessResult,
    born_probabilities,
    conjugate_povm,
    detection_operator,
    effective_element,
    entanglement_curve,
    entanglement_report,
    fidelity_scan,
    fourier_point_projector,
    fringe_shift,
    generalized_robustness_ppt,
    interference_pattern,
    linear_inversion,
    load_paper_rho,
    nearest_density_operator,
    negativity,
    paper_rho_raw,
    partial_transpose,
    path_phase_unitary,
    product_povm,
    pure_fidelity,
    pure_state_robustness,
    sample_counts,
    schmidt_coefficients,
    sic_povm,
    sic_states,
    synthesize_mask_for_element,
    theoretical_state,
    trace_norm,
    variational_reconstruct,
    verify_sic,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
