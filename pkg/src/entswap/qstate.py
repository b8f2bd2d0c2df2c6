"""Exact statevector simulation for small qubit registers.

Amplitudes are indexed by basis bitstring with qubit 0 as the most
significant bit, so for two qubits the order is |00>, |01>, |10>, |11>.
States are immutable; every operation returns a new StateVector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Centralized tolerances. Structural checks (norms, unitarity, orthonormality)
# use NORM_TOL; simulation-vs-closed-form comparisons use ORACLE_TOL.
NORM_TOL = 1e-12
ORACLE_TOL = 1e-10
# Measurement branches below this probability are never renormalized.
DEGENERATE_PROB = 1e-14

QubitIndex = int


class NonUnitaryError(ValueError):
    """Matrix handed to apply_unitary is not unitary within NORM_TOL."""


class BadTargetError(ValueError):
    """Target qubits are repeated, out of range, or inconsistent in count."""


class NonOrthonormalBasisError(ValueError):
    """Measurement basis is not a complete orthonormal set within NORM_TOL."""


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of an ordered qubit register."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1).copy()
        n = int(amps.size).bit_length() - 1
        if amps.size < 2 or amps.size != 2 ** n:
            raise ValueError(f"amplitude count {amps.size} is not a power of two >= 2")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    @property
    def norm(self) -> float:
        return math.sqrt(float(np.vdot(self.amplitudes, self.amplitudes).real))

    @classmethod
    def from_bits(cls, bits: str) -> "StateVector":
        """Computational basis state from a bitstring, qubit 0 first."""
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bitstring: {bits!r}")
        amps = np.zeros(2 ** len(bits), dtype=np.complex128)
        amps[int(bits, 2)] = 1.0
        return cls(amps)


def ket(bits: str) -> StateVector:
    """Shorthand for StateVector.from_bits."""
    return StateVector.from_bits(bits)


KET0 = ket("0")
KET1 = ket("1")


@dataclass(frozen=True)
class MeasurementBranch:
    """One outcome of a projective measurement.

    post_state is the full-register state with the measured qubits collapsed
    onto the basis element; it is None when the branch is degenerate
    (probability below DEGENERATE_PROB, no renormalization attempted).
    """

    outcome: int
    probability: float
    post_state: StateVector | None
    degenerate: bool


def _check_targets(state: StateVector, targets: Sequence[QubitIndex]) -> tuple[int, ...]:
    tgts = tuple(int(t) for t in targets)
    if len(set(tgts)) != len(tgts):
        raise BadTargetError(f"repeated target qubits: {tgts}")
    for t in tgts:
        if not 0 <= t < state.n_qubits:
            raise BadTargetError(f"qubit {t} out of range for {state.n_qubits}-qubit register")
    return tgts


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; a's qubits occupy the leading (most significant) slots."""
    for s in (a, b):
        if abs(s.norm - 1.0) > NORM_TOL:
            raise ValueError(f"tensor factor not normalized: |norm-1| = {abs(s.norm - 1.0):.3e}")
    return StateVector(np.multiply.outer(a.amplitudes, b.amplitudes).reshape(-1))


def apply_unitary(state: StateVector, u: np.ndarray, targets: Sequence[QubitIndex]) -> StateVector:
    """Apply a dense unitary on the given target qubits.

    u is a 2^k x 2^k matrix over the k target qubits, first target most
    significant. Unitarity is checked within NORM_TOL.
    """
    tgts = _check_targets(state, targets)
    k = len(tgts)
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2 ** k, 2 ** k):
        raise BadTargetError(f"matrix shape {u.shape} does not match {k} target qubit(s)")
    if np.abs(u.conj().T @ u - np.eye(2 ** k)).max() > NORM_TOL:
        raise NonUnitaryError("matrix is not unitary within tolerance")

    n = state.n_qubits
    rest = tuple(q for q in range(n) if q not in tgts)
    perm = tgts + rest
    m = state.amplitudes.reshape([2] * n).transpose(perm).reshape(2 ** k, -1)
    out = (u @ m).reshape([2] * n).transpose(np.argsort(perm))
    result = StateVector(out.reshape(-1))
    if abs(result.norm - state.norm) > NORM_TOL:
        raise NonUnitaryError("norm drifted during unitary application")
    return result


def partial_inner(state: StateVector, bra: StateVector, targets: Sequence[QubitIndex]) -> StateVector:
    """Contract <bra| against the target qubits, leaving the rest.

    Returns the (possibly unnormalized) residual state on the remaining
    qubits, in their original order.
    """
    tgts = _check_targets(state, targets)
    k = len(tgts)
    if bra.n_qubits != k:
        raise BadTargetError(f"bra has {bra.n_qubits} qubit(s), expected {k}")
    n = state.n_qubits
    if k >= n:
        raise BadTargetError("cannot contract away the whole register")
    rest = tuple(q for q in range(n) if q not in tgts)
    m = state.amplitudes.reshape([2] * n).transpose(tgts + rest).reshape(2 ** k, -1)
    return StateVector(bra.amplitudes.conj() @ m)


def measure_subsystem(
    state: StateVector,
    basis: Sequence[StateVector],
    targets: Sequence[QubitIndex],
) -> list[MeasurementBranch]:
    """Projective measurement of the target qubits in the given basis.

    basis must be a complete orthonormal set of k-qubit states, one per
    outcome. Probabilities sum to 1 within NORM_TOL. Branches with
    probability below DEGENERATE_PROB get post_state None and are flagged.
    """
    tgts = _check_targets(state, targets)
    k = len(tgts)
    if k >= state.n_qubits:
        raise BadTargetError("measurement must leave at least one qubit")
    if len(basis) != 2 ** k:
        raise NonOrthonormalBasisError(f"need {2 ** k} basis elements for {k} qubit(s), got {len(basis)}")
    for el in basis:
        if el.n_qubits != k:
            raise NonOrthonormalBasisError(f"basis element spans {el.n_qubits} qubit(s), expected {k}")
    mat = np.stack([el.amplitudes for el in basis])
    gram = mat @ mat.conj().T
    if np.abs(gram - np.eye(len(basis))).max() > NORM_TOL:
        raise NonOrthonormalBasisError("basis is not orthonormal within tolerance")

    rest = [q for q in range(state.n_qubits) if q not in tgts]
    inv_perm = np.argsort(list(tgts) + rest)
    branches: list[MeasurementBranch] = []
    total = 0.0
    for outcome, el in enumerate(basis):
        residual = partial_inner(state, el, tgts)
        p = float(np.vdot(residual.amplitudes, residual.amplitudes).real)
        total += p
        if p < DEGENERATE_PROB:
            branches.append(MeasurementBranch(outcome, p, None, True))
            continue
        res_t = (residual.amplitudes / np.sqrt(p)).reshape([2] * len(rest))
        full = np.multiply.outer(el.amplitudes.reshape([2] * k), res_t)
        post = StateVector(np.transpose(full, axes=inv_perm).reshape(-1))
        branches.append(MeasurementBranch(outcome, p, post, False))
    if abs(total - 1.0) > NORM_TOL:
        raise NonOrthonormalBasisError(f"branch probabilities sum to {total}, not 1")
    return branches


# Single-qubit constants used across the package.
IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
