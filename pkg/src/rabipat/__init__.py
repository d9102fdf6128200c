"""rabipat: pattern decomposition of the quantum Rabi model.

Builds the 3x3 operator-space coupling matrix of H = a†a + (Δ/2)σx +
g(a+a†)σz, diagonalizes it into three patterns, reconstructs H both
directly and as the pattern sum on a truncated |σz, m⟩ basis, and runs
coupling sweeps with per-pattern observables and derivative analysis.
"""

__version__ = "0.1.0"

from .errors import (
    ContinuityError,
    DegenerateSpectrumError,
    EigensolverError,
    NumericalError,
    RabipatError,
    TransitionWindowError,
    UsageError,
)
from .observables import (
    StateObservables,
    WavefunctionSlice,
    compute_observables,
    pattern_energies,
    photon_decomposition,
    sigma_x_decomposition,
    wavefunction_slice,
)
from .operators import (
    DOWN,
    UP,
    OperatorMatrix,
    Primitives,
    build_hamiltonian_direct,
    build_hamiltonian_patterns,
    build_pattern_operator,
    build_pattern_operators,
    build_primitives,
    dump_operator_csv,
    flat_index,
    split_index,
)
from .patterns import (
    CouplingMatrix,
    ModelParams,
    PatternBasis,
    PatternDerivatives,
    align_signs,
    coupling_matrix,
    critical_coupling,
    diagonalize_pattern,
    pattern_derivatives,
)
from .spectral import (
    EigenSolution,
    ParityBlocks,
    eigensolve,
    eigensolve_parity,
    parity_blocks,
    parity_operator,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    gap_series,
    ground_energy,
    hellmann_feynman_pair,
    locate_transition,
    run_sweep,
    second_derivative_series,
)

__all__ = [
    "__version__",
    "ContinuityError",
    "DegenerateSpectrumError",
    "EigensolverError",
    "NumericalError",
    "RabipatError",
    "TransitionWindowError",
    "UsageError",
    "StateObservables",
    "WavefunctionSlice",
    "compute_observables",
    "pattern_energies",
    "photon_decomposition",
    "sigma_x_decomposition",
    "wavefunction_slice",
    "DOWN",
    "UP",
    "OperatorMatrix",
    "Primitives",
    "build_hamiltonian_direct",
    "build_hamiltonian_patterns",
    "build_pattern_operator",
    "build_pattern_operators",
    "build_primitives",
    "dump_operator_csv",
    "flat_index",
    "split_index",
    "CouplingMatrix",
    "ModelParams",
    "PatternBasis",
    "PatternDerivatives",
    "align_signs",
    "coupling_matrix",
    "critical_coupling",
    "diagonalize_pattern",
    "pattern_derivatives",
    "EigenSolution",
    "ParityBlocks",
    "eigensolve",
    "eigensolve_parity",
    "parity_blocks",
    "parity_operator",
    "SweepConfig",
    "SweepRecord",
    "gap_series",
    "ground_energy",
    "hellmann_feynman_pair",
    "locate_transition",
    "run_sweep",
    "second_derivative_series",
]
