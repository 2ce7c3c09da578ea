"""Cavity-mediated entanglement of two atoms in a standing-wave mode.

Dense-matrix toolkit for the dispersive two-atom/cavity system: the
full Lindblad master equation, the adiabatically reduced two-atom
model, closed-form Bloch and concurrence solutions, and the
entanglement diffraction pattern across the standing wave.
"""

from .analytic import (
    CASE_A,
    CASE_B,
    CASE_C,
    InitialBloch,
    bloch_solution,
    concurrence_case_a,
    concurrence_case_b,
    concurrence_case_c,
    concurrence_single_excitation,
    populations_solution,
    zero_times,
)
from .concurrence import concurrence, spin_flip, wootters, xstate_concurrence
from .diffraction import (
    DiffractionScan,
    concurrence_vs_position,
    discrepancy_report,
    gamma_scaled,
    optimum_positions,
    pq_curves,
    scan,
    tau_from_time,
    time_from_tau,
    zero_positions,
)
from .full_model import (
    FullModelConfig,
    atomic_state,
    embed_atomic_state,
    evolve_full,
    hamiltonian,
    lindblad_rhs,
)
from .geometry import (
    AtomPlacement,
    EffectiveParams,
    ModeGeometry,
    SystemParams,
    coupling_at,
    coupling_pair,
    effective_params,
)
from .linalg import (
    NonFiniteStateError,
    RootConvergenceError,
    eigvals4,
    integrate,
    kron,
    partial_trace_second,
    step_halving_error,
    trace_distance,
)
from .reduced_model import (
    bloch_from_density,
    bloch_rhs,
    density_from_bloch,
    effective_hamiltonian,
    evolve_reduced,
    reduced_rhs,
    state_case_a,
    state_case_b,
    state_case_c,
    state_from_bloch_init,
)
from .trajectory import (
    Trajectory,
    read_scan_csv,
    read_trajectory_csv,
    write_scan_csv,
    write_trajectory_csv,
)

__version__ = "0.1.0"
