"""Exact dynamics, entanglement geometry, and geometric phases of two
XXZ-coupled spins under intrinsic decoherence."""

from .backend import backend_name
from .brachistochrone import (
    BrachistochroneResult,
    l_hs_at_c1,
    milburn_residual,
    optimal_state,
    t_min,
    v_hs_max,
)
from .brachistochrone import solve as solve_brachistochrone
from .config import ConfigError, SweepSpec, build_spec, load_config
from .dynamics import (
    DensityMatrix,
    Method,
    Trajectory,
    block_eigensystem,
    closed_form_elements,
    decoherence_rate,
    evolved_state_closed_form,
    initial_state,
    make_trajectory,
    propagate_analytic,
    propagate_rk4,
    purity,
)
from .entanglement import (
    ConcurrenceBreakdown,
    concurrence_closed_form,
    concurrence_many,
    concurrence_wootters,
)
from .figures import write_figures
from .geometry import (
    BURES_NORM,
    GeometryTable,
    bures_distance_raw,
    bures_length_vs_concurrence,
    bures_speed_vs_concurrence,
    fidelity_of_separability,
    fidelity_uhlmann,
    hs_distance,
    hs_rate_closed_form,
    hs_rate_numeric,
    hs_rate_vs_concurrence,
    hs_speed_closed_form,
    hs_speed_vs_concurrence,
    sample_geometry,
    separable_fidelity_search,
)
from .geomphase import (
    GeomPhaseResult,
    chain_phase,
    eigen_branches,
    phase_trajectory,
    pure_state_phase_oracle,
    tong_phase,
    tong_phase_profile,
    wrap_angle,
)
from .model import (
    Convention,
    ModelParams,
    Spectrum,
    build_hamiltonian,
    eta_of_t,
    spectrum,
    t_of_eta,
)
from .verify import DEFAULT_TOLS, VerificationReport, run_verify

__version__ = "0.1.0"

__all__ = [
    "BURES_NORM",
    "BrachistochroneResult",
    "ConcurrenceBreakdown",
    "ConfigError",
    "Convention",
    "DEFAULT_TOLS",
    "DensityMatrix",
    "GeomPhaseResult",
    "GeometryTable",
    "Method",
    "ModelParams",
    "Spectrum",
    "SweepSpec",
    "Trajectory",
    "VerificationReport",
    "backend_name",
    "block_eigensystem",
    "build_hamiltonian",
    "build_spec",
    "bures_distance_raw",
    "bures_length_vs_concurrence",
    "bures_speed_vs_concurrence",
    "chain_phase",
    "closed_form_elements",
    "concurrence_closed_form",
    "concurrence_many",
    "concurrence_wootters",
    "decoherence_rate",
    "eigen_branches",
    "eta_of_t",
    "evolved_state_closed_form",
    "fidelity_of_separability",
    "fidelity_uhlmann",
    "hs_distance",
    "hs_rate_closed_form",
    "hs_rate_numeric",
    "hs_rate_vs_concurrence",
    "hs_speed_closed_form",
    "hs_speed_vs_concurrence",
    "initial_state",
    "l_hs_at_c1",
    "load_config",
    "make_trajectory",
    "milburn_residual",
    "optimal_state",
    "phase_trajectory",
    "propagate_analytic",
    "propagate_rk4",
    "pure_state_phase_oracle",
    "purity",
    "run_verify",
    "sample_geometry",
    "separable_fidelity_search",
    "solve_brachistochrone",
    "spectrum",
    "t_min",
    "t_of_eta",
    "tong_phase",
    "tong_phase_profile",
    "v_hs_max",
    "wrap_angle",
    "write_figures",
]
