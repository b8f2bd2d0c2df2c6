"""Two-qubit pure-state entanglement measures and the canonical pair form.

A "pair state" here is a two-qubit pure state supported on exactly one of
the two antidiagonal/diagonal slices of the computational basis:
psi-oriented states live on {|01>, |10>}, phi-oriented on {|00>, |11>}.
Every measurement outcome in the swapping pipelines is of this shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .qstate import NORM_TOL, StateVector

Orientation = Literal["psi", "phi"]

_BELL_AMPLITUDES = {
    "phi+": (1, 0, 0, 1),
    "phi-": (1, 0, 0, -1),
    "psi+": (0, 1, 1, 0),
    "psi-": (0, 1, -1, 0),
}


def bell_state(label: str) -> StateVector:
    """One of the four maximally entangled two-qubit states."""
    try:
        amps = _BELL_AMPLITUDES[label]
    except KeyError:
        raise ValueError(f"unknown Bell label {label!r}") from None
    return StateVector(np.array(amps, dtype=np.complex128) / math.sqrt(2))


def _require_two_qubits(state: StateVector, name: str) -> np.ndarray:
    if state.n_qubits != 2:
        raise ValueError(f"{name} must be a 2-qubit state, got {state.n_qubits} qubit(s)")
    if abs(state.norm - 1.0) > NORM_TOL:
        raise ValueError(f"{name} is not normalized: |norm-1| = {abs(state.norm - 1.0):.3e}")
    return state.amplitudes


def concurrence_pure(state: StateVector) -> float:
    """Concurrence of a normalized two-qubit pure state.

    For amplitudes (a, b, c, d) this is 2|ad - bc|, twice the product of
    the Schmidt coefficients. Result clamped into [0, 1].

    Parameters
    ----------
    state : StateVector
        Normalized two-qubit state.

    Returns
    -------
    float
        Concurrence in [0, 1]; 0 for product states, 1 for maximally
        entangled ones.
    """
    a, b, c, d = _require_two_qubits(state, "state")
    return min(1.0, 2.0 * abs(a * d - b * c))


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Schmidt form of a two-qubit state.

    Reconstruction: sum_k coefficients[k] * kron(left[:, k], right[:, k]).
    Coefficients are nonnegative and sorted descending; columns of left and
    right are orthonormal single-qubit states.
    """

    coefficients: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @property
    def major(self) -> float:
        return float(self.coefficients[0])

    @property
    def minor(self) -> float:
        return float(self.coefficients[1])

    def reconstruct(self) -> np.ndarray:
        out = np.zeros(4, dtype=np.complex128)
        for k in range(2):
            out += self.coefficients[k] * np.kron(self.left[:, k], self.right[:, k])
        return out


def schmidt(state: StateVector) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the 2x2 amplitude matrix."""
    amps = _require_two_qubits(state, "state")
    m = amps.reshape(2, 2)
    u, s, vh = np.linalg.svd(m)
    return SchmidtDecomposition(coefficients=s, left=u, right=vh.T)


def epr_fidelity(state: StateVector, target: StateVector) -> float:
    """Squared overlap |<target|state>|^2, invariant under global phase."""
    a = _require_two_qubits(state, "state")
    t = _require_two_qubits(target, "target")
    return float(abs(np.vdot(t, a)) ** 2)


def special_concurrences(c1: float, c2: float) -> tuple[float, float]:
    """Concurrence thresholds (c_minus, c_plus) for a pair of input concurrences.

    c_minus = c1*c2 / (1 - sqrt((1-c1^2)(1-c2^2))) marks the plateau onset of
    the optimized swapping strategy; c_plus uses the + sign and marks the
    first slope break. Both are in [0, 1], c_minus >= c_plus, and both are
    defined as 0 when either input concurrence is 0.
    """
    for name, c in (("c1", c1), ("c2", c2)):
        if not -NORM_TOL <= c <= 1.0 + NORM_TOL:
            raise ValueError(f"{name} = {c} outside [0, 1]")
    c1 = min(max(c1, 0.0), 1.0)
    c2 = min(max(c2, 0.0), 1.0)
    if c1 == 0.0 or c2 == 0.0:
        return (0.0, 0.0)
    root = math.sqrt((1.0 - c1 * c1) * (1.0 - c2 * c2))
    # 1 - root rewritten as (1 - root^2)/(1 + root) to avoid cancellation
    # when both concurrences are small.
    one_minus_root = (c1 * c1 + c2 * c2 - c1 * c1 * c2 * c2) / (1.0 + root)
    c_minus = min(1.0, c1 * c2 / one_minus_root)
    c_plus = c1 * c2 / (1.0 + root)
    return (c_minus, c_plus)


@dataclass(frozen=True)
class PairState:
    """Canonical two-amplitude form of a pair: u|01> + sign*v|10> (psi) or
    u|00> + sign*v|11> (phi), with u, v >= 0 and u^2 + v^2 = 1."""

    u: float
    v: float
    orientation: Orientation = "psi"
    sign: int = 1

    def __post_init__(self):
        if self.orientation not in ("psi", "phi"):
            raise ValueError(f"orientation must be 'psi' or 'phi', got {self.orientation!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        u, v = float(self.u), float(self.v)
        if u < -NORM_TOL or v < -NORM_TOL:
            raise ValueError(f"amplitudes must be nonnegative, got ({u}, {v})")
        u, v = max(u, 0.0), max(v, 0.0)
        if abs(u * u + v * v - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized: u^2+v^2 = {u * u + v * v}")
        sign = self.sign if min(u, v) > NORM_TOL else 1
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "sign", sign)

    @property
    def concurrence(self) -> float:
        return min(1.0, 2.0 * self.u * self.v)

    def to_statevector(self) -> StateVector:
        """Embed into the full two-qubit register."""
        amps = np.zeros(4, dtype=np.complex128)
        first, second = ((1, 2) if self.orientation == "psi" else (0, 3))
        amps[first] = self.u
        amps[second] = self.sign * self.v
        return StateVector(amps)

    @classmethod
    def from_statevector(cls, state: StateVector, tol: float = 1e-10) -> "PairState":
        """Read a pair state off a two-qubit register, fixing the global phase.

        The state must be supported on {|01>, |10>} or {|00>, |11>} and be
        real up to a global phase; anything else is rejected.
        """
        amps = _require_two_qubits(state, "state")
        on_psi = abs(amps[1]) + abs(amps[2])
        on_phi = abs(amps[0]) + abs(amps[3])
        if on_phi <= tol:
            orientation, first, second = "psi", amps[1], amps[2]
        elif on_psi <= tol:
            orientation, first, second = "phi", amps[0], amps[3]
        else:
            raise ValueError("state is not supported on a single pair slice")
        anchor = first if abs(first) > tol else second
        phase = anchor.conjugate() / abs(anchor)
        first, second = first * phase, second * phase
        if abs(first.imag) > tol or abs(second.imag) > tol:
            raise ValueError("pair amplitudes are not real up to a global phase")
        u = first.real
        sv = second.real
        if u < 0:
            u, sv = -u, -sv
        return cls(u=u, v=abs(sv), orientation=orientation, sign=1 if sv >= 0 else -1)
