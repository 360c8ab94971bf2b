"""Few-body spin couplings for quantum-dot arrays and encoded exchange gates."""

from ._fewspin import (
    NoRootError,
    assemble_cp,
    check_gate_constraints,
    closed_form_gate,
    compute_couplings,
    enumerate_paths,
    exchange_matrix,
    gate,
    l_to_k,
    path_basis,
    path_count,
    sweep_csv,
    tune_chi_plus_zero,
    tune_eta_zero,
    tune_lambda_even,
    tuned_couplings,
)

__all__ = [
    "NoRootError",
    "assemble_cp",
    "check_gate_constraints",
    "closed_form_gate",
    "compute_couplings",
    "enumerate_paths",
    "exchange_matrix",
    "gate",
    "l_to_k",
    "path_basis",
    "path_count",
    "sweep_csv",
    "tune_chi_plus_zero",
    "tune_eta_zero",
    "tune_lambda_even",
    "tuned_couplings",
]
