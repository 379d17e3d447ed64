"""Thermal local quantum uncertainty of two coupled superconducting qubits.

The library computes the LQU of the two-qubit thermal state from its
closed form, from the eigenvalues of the associated 3x3 correlation
matrix, and from direct minimization of the skew information over the
Bloch sphere, plus its evolution under amplitude-damping, phase-flip and
phase-damping channels.  See README.md for an overview and demos/ for
worked examples.
"""

__version__ = "0.1.0"

from .linalg import (
    HADAMARD,
    ID2,
    ID4,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    EigenDecomposition,
    NonHermitianInput,
    NotADensityMatrix,
    NotPSD,
    check_density_matrix,
    commutator,
    dagger,
    eig_hermitian,
    is_hermitian,
    kron,
    mat_exp_hermitian,
    mat_sqrt_psd,
)
from .model import (
    TEMPERATURE_FLOOR,
    InvalidXState,
    TemperatureOutOfRange,
    UnequalJosephsonEnergies,
    XStateParams,
    build_hamiltonian_tqs,
    build_hamiltonian_x,
    check_temperature,
    gibbs_state_numeric,
    thermal_xstate,
    xstate_from_matrix,
)
from .lqu import (
    ClosedFormDiagnostics,
    NonUnitDirection,
    crossover_temperature,
    lqu_bruteforce,
    lqu_closed_xstate,
    lqu_numeric,
    skew_information,
    w_matrix,
)
from .channels import (
    AD,
    PD,
    PF,
    CHANNEL_KINDS,
    ChannelSpec,
    KrausPair,
    apply_channel,
    kraus_ops,
    lqu_closed_channel,
    xstate_after_channel,
)
from .sweep import (
    InvalidSweepSpec,
    SweepAxis,
    SweepSpec,
    SweepResult,
    evaluate_point,
    run_sweep,
)
from .figures import FIGURE_IDS, UnknownFigureId, figure_csvs, run_figure
from .selftest import run_selftest

__all__ = [
    "__version__",
    # linalg
    "HADAMARD", "ID2", "ID4", "PAULI_X", "PAULI_Y", "PAULI_Z",
    "EigenDecomposition", "NonHermitianInput", "NotADensityMatrix", "NotPSD",
    "check_density_matrix", "commutator", "dagger", "eig_hermitian",
    "is_hermitian", "kron", "mat_exp_hermitian", "mat_sqrt_psd",
    # model
    "TEMPERATURE_FLOOR", "InvalidXState", "TemperatureOutOfRange",
    "UnequalJosephsonEnergies", "XStateParams", "build_hamiltonian_tqs",
    "build_hamiltonian_x", "check_temperature", "gibbs_state_numeric",
    "thermal_xstate", "xstate_from_matrix",
    # lqu
    "ClosedFormDiagnostics", "NonUnitDirection", "crossover_temperature",
    "lqu_bruteforce", "lqu_closed_xstate", "lqu_numeric", "skew_information",
    "w_matrix",
    # channels
    "AD", "PD", "PF", "CHANNEL_KINDS", "ChannelSpec", "KrausPair",
    "apply_channel", "kraus_ops", "lqu_closed_channel", "xstate_after_channel",
    # sweep / figures / selftest
    "InvalidSweepSpec", "SweepAxis", "SweepSpec", "SweepResult",
    "evaluate_point", "run_sweep", "FIGURE_IDS", "UnknownFigureId",
    "figure_csvs", "run_figure", "run_selftest",
]
