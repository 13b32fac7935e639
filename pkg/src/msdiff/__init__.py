"""Explicit solvers for ternary Maxwell-Stefan diffusion on a 1D interval.

The package integrates the reduced two-species system (third species
eliminated through the simplex and zero-net-flux constraints) with two
explicit schemes, ships the classic uphill-diffusion and asymptotic
scenarios, and provides conservation, L1-error and uphill-region
diagnostics plus CSV/figure output behind a small CLI.
"""

from .config import RunConfig, parse_config, resolve_config
from .diagnostics import (
    ConvergenceReport,
    ConvergenceRow,
    convergence_study,
    l1_error,
    reconstruct_third,
    total_moles,
    uphill_mask,
)
from .errors import (
    GridMismatchError,
    MsdiffError,
    SingularFluxSystemError,
    SnapshotMismatchError,
    UnknownScenarioError,
    ValidationError,
)
from .grid import Grid1D, build_grid, diff_backward, diff_forward
from .mixture import (
    FluxMatrix2,
    MixtureCoefficients,
    MixtureSpec,
    NodeComposition,
    derive_coefficients,
    flux_system_inverse,
    flux_system_matrix,
    solve_node_fluxes,
)
from .scenarios import (
    SCENARIO_NAMES,
    Scenario,
    custom_scenario,
    initial_step,
    initial_uphill,
    scenario_catalog,
)
from .schemes import (
    FluxField,
    MixtureState,
    SchemeConfig,
    Snapshot,
    TimeSeries,
    cfl_time_step,
    compute_fluxes,
    run_simulation,
    step_global,
    step_richardson,
)

__version__ = "0.1.0"
