"""Probabilistic extraction of a maximally entangled pair from a partial one.

The scheme couples one qubit of the pair to a fresh ancilla through a
controlled rotation that equalizes the two branch amplitudes, then measures
the ancilla. Outcome |0> heralds a perfect EPR pair; outcome |1> leaves a
product state. The success probability is 2*min(u^2, v^2), equivalently
1 - sqrt(1 - C^2) for pair concurrence C = 2uv, which is the optimum for a
single-copy filtering operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .entanglement import PairState, bell_state, epr_fidelity
from .qstate import (
    DEGENERATE_PROB,
    KET0,
    KET1,
    NORM_TOL,
    ORACLE_TOL,
    SIGMA_X,
    StateVector,
    apply_unitary,
    partial_inner,
    tensor,
)


class BadAmplitudesError(ValueError):
    """Amplitude pair is not normalized or not nonnegative."""


class WrongOrientationError(ValueError):
    """Pair state has the wrong support slice for this operation."""


@dataclass(frozen=True)
class ExtractionResult:
    """Outcome summary of one extraction attempt.

    success_state is present iff success_probability > 0 and always has
    fidelity 1 with |psi+>; failure_state is the leftover product state, or
    None when the extraction is deterministic and the failure branch is empty.
    """

    success_probability: float
    closed_form: float
    success_state: StateVector | None
    failure_state: StateVector | None
    acted_on: str


def build_use_unitary(u: float, v: float) -> np.ndarray:
    """Controlled ancilla rotation for the pair amplitudes (u, v).

    Returns a 4x4 unitary over (pair qubit, ancilla), pair qubit most
    significant. The branch carrying the larger amplitude gets its ancilla
    rotated so that |0_ancilla> keeps exactly the smaller amplitude's weight;
    the other branch leaves the ancilla alone.
    """
    u, v = float(u), float(v)
    if u < -NORM_TOL or v < -NORM_TOL:
        raise BadAmplitudesError(f"amplitudes must be nonnegative, got ({u}, {v})")
    u, v = max(u, 0.0), max(v, 0.0)
    if abs(u * u + v * v - 1.0) > ORACLE_TOL:
        raise BadAmplitudesError(f"amplitudes not normalized: u^2+v^2 = {u * u + v * v}")
    ratio = u / v if u <= v else v / u
    s = math.sqrt(max(0.0, 1.0 - ratio * ratio))
    rot = np.array([[ratio, -s], [s, ratio]], dtype=np.complex128)
    out = np.eye(4, dtype=np.complex128)
    if u <= v:
        out[2:, 2:] = rot
    else:
        out[:2, :2] = rot
    return out


def extract_epr(pair: PairState, act_on: str = "first") -> ExtractionResult:
    """Run the extraction on a psi-oriented, sign-corrected pair.

    act_on selects which pair qubit the ancilla couples to; the success
    probability is identical either way. Simulated via an explicit
    three-qubit register (pair plus ancilla) and checked against the
    closed form 1 - sqrt(1 - C^2).
    """
    if pair.orientation != "psi":
        raise WrongOrientationError("extraction needs a psi-oriented pair, canonicalize first")
    if pair.sign != 1:
        raise ValueError("extraction needs a sign-corrected pair (relative sign +1)")
    if act_on not in ("first", "second"):
        raise ValueError(f"act_on must be 'first' or 'second', got {act_on!r}")

    u, v = pair.u, pair.v
    # Same value as 1 - sqrt(1 - C^2): for u^2 + v^2 = 1 the root collapses
    # to |u^2 - v^2|. The sqrt form cancels catastrophically when u ~ v.
    closed = 2.0 * min(u, v) ** 2

    full = tensor(pair.to_statevector(), KET0)
    if act_on == "first":
        unitary, target = build_use_unitary(u, v), 0
    else:
        # Seen from the second qubit the branch amplitudes swap roles.
        unitary, target = build_use_unitary(v, u), 1
    full = apply_unitary(full, unitary, (target, 2))
    # Ancilla measurement, enumerated by direct projection of each outcome.
    herald = partial_inner(full, KET0, (2,))
    leftover = partial_inner(full, KET1, (2,))
    p = herald.norm ** 2
    p_fail = leftover.norm ** 2
    if abs(p + p_fail - 1.0) > NORM_TOL:
        raise RuntimeError(f"ancilla outcome probabilities sum to {p + p_fail}")

    success_state = None
    if p >= DEGENERATE_PROB:
        success_state = StateVector(herald.amplitudes / math.sqrt(p))
        if epr_fidelity(success_state, bell_state("psi+")) < 1.0 - ORACLE_TOL:
            raise RuntimeError("extraction succeeded but did not yield |psi+>")
    failure_state = None
    if p_fail >= DEGENERATE_PROB:
        failure_state = StateVector(leftover.amplitudes / math.sqrt(p_fail))

    if abs(p - closed) > 1e-12:
        raise RuntimeError(f"simulated success {p} disagrees with closed form {closed}")
    return ExtractionResult(
        success_probability=p,
        closed_form=closed,
        success_state=success_state,
        failure_state=failure_state,
        acted_on=act_on,
    )


@lru_cache(maxsize=1)
def _phi_to_psi_rotation() -> np.ndarray:
    """Local rotation exp(-i (I - sigma_x) pi/2), validated once.

    Evaluates to sigma_x up to a global phase; the check below flags any
    failure to map the phi slice onto the psi slice.
    """
    rot = expm(-1j * (np.eye(2) - SIGMA_X) * (math.pi / 2.0))
    probe = PairState(u=0.6, v=0.8, orientation="phi")
    rotated = apply_unitary(probe.to_statevector(), rot, (1,))
    expected = PairState(u=0.6, v=0.8, orientation="psi").to_statevector()
    if epr_fidelity(rotated, expected) < 1.0 - ORACLE_TOL:
        raise RuntimeError("phi-to-psi rotation failed validation")
    rot.flags.writeable = False
    return rot


def canonicalize_phi(pair: PairState) -> PairState:
    """Rotate a phi-oriented pair onto the psi slice, amplitudes unchanged.

    Applies the validated local rotation to the second qubit; concurrence
    and relative sign are preserved.
    """
    if pair.orientation != "phi":
        raise WrongOrientationError("canonicalize_phi expects a phi-oriented pair")
    _phi_to_psi_rotation()
    return PairState(u=pair.u, v=pair.v, orientation="psi", sign=pair.sign)


def phi_to_psi_rotation() -> np.ndarray:
    """The validated rotation matrix itself (read-only view)."""
    return _phi_to_psi_rotation()
