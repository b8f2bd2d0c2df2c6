"""The x-parametrized hub measuring basis and its concurrence mapping."""

import math

import numpy as np
import pytest

from entswap.bases import (
    BASIS_LABELS,
    BadParameterError,
    SQRT_HALF,
    bell_basis,
    parametrized_basis,
    x_from_concurrence,
)
from entswap.entanglement import bell_state, concurrence_pure, epr_fidelity


def test_labels_and_order():
    basis = parametrized_basis(0.3)
    assert basis.labels == BASIS_LABELS == ("mu+", "nu+", "nu-", "mu-")


def test_bell_basis_elements():
    basis = bell_basis()
    assert abs(basis.x - SQRT_HALF) < 1e-15
    for element, label in zip(basis.elements, ("phi+", "psi+", "psi-", "phi-")):
        # nu- at x=1/sqrt2 is psi- up to overall sign, mu- matches phi-
        assert epr_fidelity(element, bell_state(label)) > 1.0 - 1e-14


def test_x_zero_is_computational():
    basis = parametrized_basis(0.0)
    expected = {0: 0b11, 1: 0b10, 2: 0b01, 3: 0b00}
    for idx, element in enumerate(basis.elements):
        amps = np.abs(element.amplitudes)
        assert amps[expected[idx]] == 1.0
        assert basis.concurrence == 0.0


def test_element_structure_and_signs():
    x = 0.3
    y = math.sqrt(1 - x * x)
    mu_p, nu_p, nu_m, mu_m = parametrized_basis(x).elements
    np.testing.assert_allclose(mu_p.amplitudes, [x, 0, 0, y], atol=1e-15)
    np.testing.assert_allclose(nu_p.amplitudes, [0, x, y, 0], atol=1e-15)
    # the minus elements carry -x exactly, on |10> and |11> respectively
    assert nu_m.amplitudes[2] == -x
    assert mu_m.amplitudes[3] == -x
    np.testing.assert_allclose(nu_m.amplitudes, [0, y, -x, 0], atol=1e-15)
    np.testing.assert_allclose(mu_m.amplitudes, [y, 0, 0, -x], atol=1e-15)


def test_elements_share_concurrence():
    for x in np.linspace(0.0, SQRT_HALF, 15):
        basis = parametrized_basis(x)
        target = 2 * x * math.sqrt(1 - x * x)
        assert abs(basis.concurrence - target) < 1e-15
        for element in basis.elements:
            assert abs(concurrence_pure(element) - target) < 1e-14


def test_completeness_all_x():
    for x in np.linspace(0.0, SQRT_HALF, 15):
        mat = np.stack([e.amplitudes for e in parametrized_basis(x).elements])
        np.testing.assert_allclose(mat @ mat.conj().T, np.eye(4), atol=1e-14)
        resolution = sum(np.outer(e.amplitudes, e.amplitudes.conj())
                         for e in parametrized_basis(x).elements)
        np.testing.assert_allclose(resolution, np.eye(4), atol=1e-14)


def test_x_from_concurrence_round_trip():
    for c in np.linspace(0.0, 1.0, 11):
        x = x_from_concurrence(c)
        assert 0.0 <= x <= SQRT_HALF + 1e-15
        assert abs(parametrized_basis(x).concurrence - c) < 1e-12
    assert abs(x_from_concurrence(1.0) - SQRT_HALF) < 1e-15
    assert x_from_concurrence(0.0) == 0.0
    assert abs(x_from_concurrence(0.6) - math.sqrt(0.1)) < 1e-15


def test_parameter_range_checks():
    with pytest.raises(BadParameterError):
        parametrized_basis(0.8)
    with pytest.raises(BadParameterError):
        parametrized_basis(-0.01)
    with pytest.raises(BadParameterError):
        x_from_concurrence(1.2)
    # values inside the tolerance band clamp instead of raising
    assert parametrized_basis(SQRT_HALF + 1e-13).x == SQRT_HALF
