"""Conserved-electorate dynamics of political polarisation.

Two coupled compartment models on probability simplices: a three-group
baseline (left radicals, right radicals, centrists) and a four-group
extension adding a disengaged pool fed by impulse shocks.  The package
provides closed-form thresholds and equilibria, an adaptive embedded
Runge-Kutta integrator, shock sequencing, numerical verification of the
qualitative theory, and a scenario-driven CLI.
"""

from .errors import (
    CENTRIST_ONLY,
    MONOTONE_DECAY,
    NONHYPERBOLIC,
    NOT_CONVERGED,
    SHOCK_PROOF,
    BaselineSupercritical,
    BelowThreshold,
    BoundaryPoint,
    ConfigError,
    FormulaInapplicable,
    NonPositiveParameter,
    OutOfRange,
    PolidynError,
    RegimeError,
    RegimeMismatch,
    SimplexViolation,
    StepSizeUnderflow,
)
from .model_core import (
    BaselineParams,
    ElectorateRow,
    FourGroupParams,
    SimplexState3,
    SimplexState4,
    SymmetricParams,
    project_to_simplex,
    proxy_decompose,
    shift_gamma,
    validate_baseline,
)
from .spectral import (
    Matrix2,
    PerronData,
    delta_c_asym,
    delta_c_sym,
    growth_matrix,
    k_matrix,
    m_matrix,
    d_matrix,
    metzler_left_vector,
    pf_root,
    phi,
    r_rad,
    spectral_bound,
)
from .dynamics import (
    IntegratorConfig,
    Trajectory,
    detect_convergence,
    integrate,
    jacobian_4group,
    jacobian_baseline,
    rhs_4group,
    rhs_baseline,
)
from .equilibria import (
    EquilibriumReport,
    classify,
    e0_stability,
    equilibrium_reports,
    interior_equilibrium,
    symmetric_equilibrium,
    transcritical_certificate,
)
from .shock_engine import (
    ShockEvent,
    ShockRecord,
    ShockSequenceReport,
    apply_impulse,
    apply_structural,
    kstar,
    longrun_floor,
    run_shock_sequence,
    surge_end_time,
    surge_threshold_exact,
    window_bound_asym,
    window_bound_sym,
)
from .diagnostics import (
    DiagnosticReport,
    a_decay_check,
    boundary_inflow_check,
    dulac_check,
    dulac_divergence,
    invariance_check,
    lyapunov_trace,
    single_attractor_check,
)
from .scenario import (
    ScenarioConfig,
    compute_thresholds,
    load_config,
    run_scenario,
    run_verify,
)

__version__ = "1.0.0"
