"""Exact simulation and verification of probabilistic entanglement swapping.

Two partially entangled pairs share a hub; measuring the hub qubits leaves
the outer qubits entangled with some probability. This package enumerates
every measurement branch of four swapping strategies exactly and checks the
totals against their closed-form success probabilities.
"""

from .bases import (
    BadParameterError,
    MeasuringBasis,
    SQRT_HALF,
    bell_basis,
    parametrized_basis,
    x_from_concurrence,
)
from .entanglement import (
    PairState,
    SchmidtDecomposition,
    bell_state,
    concurrence_pure,
    epr_fidelity,
    schmidt,
    special_concurrences,
)
from .extraction import (
    BadAmplitudesError,
    ExtractionResult,
    WrongOrientationError,
    build_use_unitary,
    canonicalize_phi,
    extract_epr,
)
from .qstate import (
    BadTargetError,
    MeasurementBranch,
    NonOrthonormalBasisError,
    NonUnitaryError,
    StateVector,
    apply_unitary,
    ket,
    measure_subsystem,
    partial_inner,
    tensor,
)
from .strategies import (
    BranchRecord,
    InequalityCheck,
    InequalityViolatedError,
    NotMaximalError,
    ReportInvariantError,
    StrategyReport,
    SwapInputs,
    basic_deterministic_swap,
    closed_form_s1,
    closed_form_s2,
    closed_form_s3,
    closed_form_s4,
    special_x_values,
    strategy1,
    strategy2,
    strategy3,
    strategy4,
    verify_inequalities,
)

__version__ = "0.1.0"

__all__ = [
    "BadAmplitudesError",
    "BadParameterError",
    "BadTargetError",
    "BranchRecord",
    "ExtractionResult",
    "InequalityCheck",
    "InequalityViolatedError",
    "MeasurementBranch",
    "MeasuringBasis",
    "NonOrthonormalBasisError",
    "NonUnitaryError",
    "NotMaximalError",
    "SQRT_HALF",
    "PairState",
    "ReportInvariantError",
    "SchmidtDecomposition",
    "StateVector",
    "StrategyReport",
    "SwapInputs",
    "WrongOrientationError",
    "apply_unitary",
    "basic_deterministic_swap",
    "bell_basis",
    "bell_state",
    "build_use_unitary",
    "canonicalize_phi",
    "closed_form_s1",
    "closed_form_s2",
    "closed_form_s3",
    "closed_form_s4",
    "concurrence_pure",
    "epr_fidelity",
    "extract_epr",
    "ket",
    "measure_subsystem",
    "parametrized_basis",
    "partial_inner",
    "schmidt",
    "special_concurrences",
    "special_x_values",
    "strategy1",
    "strategy2",
    "strategy3",
    "strategy4",
    "tensor",
    "verify_inequalities",
    "x_from_concurrence",
]
