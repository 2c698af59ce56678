"""Steady-state entanglement of Coulomb-coupled oscillators in a pumped cavity.

The pipeline runs params -> steady_state -> dynamics -> entanglement;
sweep drives grids of such points and cli fronts everything from the
command line. All frequencies and rates are angular (rad/s); vacuum
variance is 1/2.
"""

from .config import load_config, parse_config
from .dynamics import (
    StabilityReport,
    build_diffusion,
    build_drift,
    evolve_covariance,
    stability,
    steady_covariance,
)
from .entanglement import (
    EntanglementResult,
    ReducedCovariance,
    log_negativity,
    reduce_mechanical,
)
from .errors import (
    ConfigError,
    DegenerateNormalMode,
    EigenFailure,
    NoDeathBelowCeiling,
    NoEntanglementAtFloor,
    NonPhysicalState,
    OmnegError,
    PointFailure,
    SingularSolve,
    StepTooLarge,
    ThresholdSingularity,
    UnstableSystem,
)
from .params import (
    CONSTANTS,
    DerivedQuantities,
    SystemParams,
    coulomb_strength,
    derive,
    drive_amplitude,
    reference_params,
    single_photon_coupling,
    thermal_occupation,
)
from .steady_state import (
    SteadyState,
    cavity_amplitude,
    displacements,
    effective_coupling,
    solve_steady_state,
)
from .sweep import (
    CSV_COLUMNS,
    ErrorCode,
    FIGURE_NAMES,
    PointResult,
    SweepRow,
    SweepSpec,
    critical_temperature,
    evaluate_point,
    figure_dataset,
    figure_spec,
    run_sweep,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CONSTANTS",
    "SystemParams",
    "DerivedQuantities",
    "reference_params",
    "derive",
    "thermal_occupation",
    "drive_amplitude",
    "single_photon_coupling",
    "coulomb_strength",
    "SteadyState",
    "cavity_amplitude",
    "displacements",
    "effective_coupling",
    "solve_steady_state",
    "build_drift",
    "build_diffusion",
    "StabilityReport",
    "stability",
    "steady_covariance",
    "evolve_covariance",
    "ReducedCovariance",
    "EntanglementResult",
    "reduce_mechanical",
    "log_negativity",
    "parse_config",
    "load_config",
    "ErrorCode",
    "PointResult",
    "SweepRow",
    "SweepSpec",
    "CSV_COLUMNS",
    "FIGURE_NAMES",
    "evaluate_point",
    "run_sweep",
    "write_csv",
    "figure_spec",
    "figure_dataset",
    "critical_temperature",
    "OmnegError",
    "ConfigError",
    "PointFailure",
    "ThresholdSingularity",
    "DegenerateNormalMode",
    "UnstableSystem",
    "SingularSolve",
    "EigenFailure",
    "NonPhysicalState",
    "StepTooLarge",
    "NoEntanglementAtFloor",
    "NoDeathBelowCeiling",
]
