"""Two-qubit measuring bases for the hub qubits.

The one-parameter family interpolates between the computational basis
(x = 0) and the Bell basis (x = 1/sqrt2). Each element carries the same
concurrence 2*x*sqrt(1-x^2), which is what lets the measurement strength
be matched to the entanglement of the incoming pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import NORM_TOL, StateVector

SQRT_HALF = 1.0 / math.sqrt(2.0)

# Element order is fixed: the two x-weighted elements first, then their
# orthogonal partners, grouped by support slice.
BASIS_LABELS = ("mu+", "nu+", "nu-", "mu-")


class BadParameterError(ValueError):
    """Basis parameter outside [0, 1/sqrt2] or concurrence outside [0, 1]."""


@dataclass(frozen=True)
class MeasuringBasis:
    """Orthonormal two-qubit basis parametrized by x in [0, 1/sqrt2].

    Elements, in order (mu+, nu+, nu-, mu-) with y = sqrt(1-x^2):
        mu+ = x|00> + y|11>      nu+ = x|01> + y|10>
        nu- = y|01> - x|10>      mu- = y|00> - x|11>
    """

    x: float
    elements: tuple[StateVector, StateVector, StateVector, StateVector]

    @property
    def y(self) -> float:
        return math.sqrt(1.0 - self.x * self.x)

    @property
    def labels(self) -> tuple[str, ...]:
        return BASIS_LABELS

    @property
    def concurrence(self) -> float:
        """Concurrence shared by all four elements."""
        return min(1.0, 2.0 * self.x * self.y)


def parametrized_basis(x: float) -> MeasuringBasis:
    """Build the measuring basis for a given parameter x."""
    if not -NORM_TOL <= x <= SQRT_HALF + NORM_TOL:
        raise BadParameterError(f"x = {x} outside [0, 1/sqrt2]")
    x = min(max(float(x), 0.0), SQRT_HALF)
    y = math.sqrt(1.0 - x * x)
    mu_plus = StateVector(np.array([x, 0.0, 0.0, y], dtype=np.complex128))
    nu_plus = StateVector(np.array([0.0, x, y, 0.0], dtype=np.complex128))
    nu_minus = StateVector(np.array([0.0, y, -x, 0.0], dtype=np.complex128))
    mu_minus = StateVector(np.array([y, 0.0, 0.0, -x], dtype=np.complex128))
    return MeasuringBasis(x=x, elements=(mu_plus, nu_plus, nu_minus, mu_minus))


def bell_basis() -> MeasuringBasis:
    """Measuring basis at x = 1/sqrt2: (phi+, psi+, psi-, phi-)."""
    return parametrized_basis(SQRT_HALF)


def x_from_concurrence(c: float) -> float:
    """Basis parameter whose elements have the given concurrence.

    Inverts 2*x*sqrt(1-x^2) = c on the branch x <= 1/sqrt2:
    x = sqrt((1 - sqrt(1-c^2)) / 2).
    """
    if not -NORM_TOL <= c <= 1.0 + NORM_TOL:
        raise BadParameterError(f"concurrence {c} outside [0, 1]")
    c = min(max(float(c), 0.0), 1.0)
    # 1 - sqrt(1-c^2) rewritten to avoid cancellation as c -> 1.
    return math.sqrt(c * c / (2.0 * (1.0 + math.sqrt(1.0 - c * c))))
