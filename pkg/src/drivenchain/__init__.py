"""drivenchain: non-equilibrium asymptotic states of boundary-driven
static and periodically kicked XY spin chains.

Two independent computation paths are provided and cross-certified:
a covariance (Majorana correlation matrix) path based on Lyapunov/Stein
equations, and a brute-force master-equation path on the full Hilbert
space.  On top of them sit residual-correlation sweeps, quasi-energy
band-structure maps, and a batch CLI with CSV/JSON dataset output.
"""

__version__ = "0.1.0"

from .bands import band_count_map, count_stationary_points, epsilon, quasienergy
from .errors import (
    ConfigError,
    ConvergenceError,
    DrivenChainError,
    FloquetResonanceError,
    NoUniqueSteadyStateError,
    SingularDispersionError,
    UnresolvedBandStructureError,
)
from .liouville import (
    NEAREST,
    CouplingMatrices,
    DensityMatrix,
    RangeSpec,
    Superoperator,
    build_hamiltonian_full,
    coupling_matrices,
    floquet_steady_full,
    lindblad_apply,
    liouvillian_from_operators,
    liouvillian_matrix,
    local_correlators,
    local_residual,
    majorana_correlations_full,
    one_period_map,
    steady_state_from_operators,
    steady_state_static,
)
from .lyap import (
    PeriodPropagator,
    matrix_exp,
    propagate_period,
    solve_continuous_lyapunov,
    solve_discrete_lyapunov,
)
from .models import (
    DEFAULT_BATH,
    BathRates,
    BathVectors,
    ChainParams,
    CorrelationMatrix,
    KickParams,
    QuadraticForm,
    StructureMatrices,
    assemble_structure,
    build_bath_vectors,
    build_kick_form,
    build_xy_form,
    residual_correlation,
)
from .pipelines import KickMap, kick_map, kicked_floquet, static_ness
from .sweep import SweepConfig, SweepDataset, load_config, run_cut, run_sweep, validate_config

__all__ = [
    "__version__",
    "BathRates",
    "BathVectors",
    "ChainParams",
    "ConfigError",
    "ConvergenceError",
    "CorrelationMatrix",
    "CouplingMatrices",
    "DEFAULT_BATH",
    "DensityMatrix",
    "DrivenChainError",
    "FloquetResonanceError",
    "KickMap",
    "KickParams",
    "NEAREST",
    "NoUniqueSteadyStateError",
    "PeriodPropagator",
    "QuadraticForm",
    "RangeSpec",
    "SingularDispersionError",
    "StructureMatrices",
    "Superoperator",
    "SweepConfig",
    "SweepDataset",
    "UnresolvedBandStructureError",
    "assemble_structure",
    "band_count_map",
    "build_bath_vectors",
    "build_hamiltonian_full",
    "build_kick_form",
    "build_xy_form",
    "count_stationary_points",
    "coupling_matrices",
    "epsilon",
    "floquet_steady_full",
    "kick_map",
    "kicked_floquet",
    "lindblad_apply",
    "liouvillian_from_operators",
    "liouvillian_matrix",
    "load_config",
    "local_correlators",
    "local_residual",
    "majorana_correlations_full",
    "matrix_exp",
    "one_period_map",
    "propagate_period",
    "quasienergy",
    "residual_correlation",
    "run_cut",
    "run_sweep",
    "solve_continuous_lyapunov",
    "solve_discrete_lyapunov",
    "static_ness",
    "steady_state_from_operators",
    "steady_state_static",
    "validate_config",
]
