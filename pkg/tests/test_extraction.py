"""Ancilla-assisted extraction of an EPR pair and the slice-change rotation."""

import math

import numpy as np
import pytest

from entswap.entanglement import PairState, bell_state, concurrence_pure, epr_fidelity
from entswap.extraction import (
    BadAmplitudesError,
    WrongOrientationError,
    build_use_unitary,
    canonicalize_phi,
    extract_epr,
    phi_to_psi_rotation,
)
from entswap.qstate import SIGMA_X, apply_unitary

RNG = np.random.default_rng(20240819)


def random_pair(rng=RNG):
    u = rng.uniform(0.0, 1.0)
    return PairState(u=u, v=math.sqrt(1.0 - u * u))


# -------------------------------------------------------- build_use_unitary

def test_unitary_identity_at_equal_amplitudes():
    np.testing.assert_allclose(build_use_unitary(1 / math.sqrt(2), 1 / math.sqrt(2)),
                               np.eye(4), atol=1e-15)


def test_unitary_limiting_column():
    # u = 0: the rotated block maps the ancilla |0> straight to |1>
    m = build_use_unitary(0.0, 1.0)
    np.testing.assert_allclose(m[:, 2], [0, 0, 0, 1], atol=1e-15)


def test_unitary_frozen_entries():
    m = build_use_unitary(0.6, 0.8)
    assert abs(m[2, 2] - 0.75) < 1e-15
    assert abs(m[3, 2] - math.sqrt(0.4375)) < 1e-15
    assert abs(m[3, 2] - 0.6614378277661477) < 1e-15
    np.testing.assert_allclose(m[:2, :2], np.eye(2), atol=1e-15)
    # u > v puts the rotation in the other control block
    m = build_use_unitary(0.8, 0.6)
    np.testing.assert_allclose(m[2:, 2:], np.eye(2), atol=1e-15)
    assert abs(m[0, 0] - 0.75) < 1e-15


def test_unitary_is_unitary():
    for _ in range(100):
        pair = random_pair()
        m = build_use_unitary(pair.u, pair.v)
        np.testing.assert_allclose(m.conj().T @ m, np.eye(4), atol=1e-12)


def test_unitary_bad_amplitudes():
    with pytest.raises(BadAmplitudesError):
        build_use_unitary(0.6, 0.7)
    with pytest.raises(BadAmplitudesError):
        build_use_unitary(-0.6, 0.8)


# -------------------------------------------------------------- extract_epr

def test_extract_deterministic_on_epr():
    res = extract_epr(PairState(u=1 / math.sqrt(2), v=1 / math.sqrt(2)))
    assert abs(res.success_probability - 1.0) < 1e-12
    assert res.failure_state is None
    assert epr_fidelity(res.success_state, bell_state("psi+")) > 1.0 - 1e-10


def test_extract_impossible_on_product():
    res = extract_epr(PairState(u=0.0, v=1.0))
    assert res.success_probability == 0.0
    assert res.success_state is None
    assert concurrence_pure(res.failure_state) < 1e-12


def test_extract_frozen_example():
    res = extract_epr(PairState(u=0.6, v=0.8))
    assert abs(res.success_probability - 0.72) < 1e-13
    assert abs(res.closed_form - 0.72) < 1e-13
    assert concurrence_pure(res.failure_state) < 1e-10


def test_extract_side_independent():
    for _ in range(60):
        pair = random_pair()
        first = extract_epr(pair, act_on="first")
        second = extract_epr(pair, act_on="second")
        assert abs(first.success_probability - second.success_probability) < 1e-12
        assert first.acted_on == "first" and second.acted_on == "second"


def test_extract_matches_closed_form():
    for _ in range(300):
        pair = random_pair()
        res = extract_epr(pair)
        c = pair.concurrence
        assert abs(res.success_probability - (1 - math.sqrt(1 - c * c))) < 1e-12
        if res.success_state is not None:
            assert epr_fidelity(res.success_state, bell_state("psi+")) > 1.0 - 1e-10
        if res.failure_state is not None:
            assert concurrence_pure(res.failure_state) < 1e-10


def test_extract_monotone_in_concurrence():
    probs = [extract_epr(PairState(u=u, v=math.sqrt(1 - u * u))).success_probability
             for u in np.linspace(0.0, 1 / math.sqrt(2), 30)]
    assert all(b >= a - 1e-15 for a, b in zip(probs, probs[1:]))
    assert probs[0] == 0.0 and abs(probs[-1] - 1.0) < 1e-12


def test_extract_input_validation():
    with pytest.raises(WrongOrientationError):
        extract_epr(PairState(u=0.6, v=0.8, orientation="phi"))
    with pytest.raises(ValueError):
        extract_epr(PairState(u=0.6, v=0.8, sign=-1))
    with pytest.raises(ValueError):
        extract_epr(PairState(u=0.6, v=0.8), act_on="third")


# --------------------------------------------------------- canonicalize_phi

def test_rotation_is_sigma_x_up_to_phase():
    rot = phi_to_psi_rotation()
    ratios = rot[SIGMA_X != 0] / SIGMA_X[SIGMA_X != 0]
    assert np.allclose(ratios, ratios[0], atol=1e-12)
    assert abs(abs(ratios[0]) - 1.0) < 1e-12
    assert np.abs(rot[SIGMA_X == 0]).max() < 1e-12


def test_canonicalize_phi_full_matrix_check():
    rot = phi_to_psi_rotation()
    for _ in range(100):
        u = RNG.uniform(0.0, 1.0)
        sign = 1 if RNG.random() < 0.5 else -1
        pair = PairState(u=u, v=math.sqrt(1 - u * u), orientation="phi", sign=sign)
        out = canonicalize_phi(pair)
        assert out.orientation == "psi"
        assert (out.u, out.v) == (pair.u, pair.v)
        assert abs(out.concurrence - pair.concurrence) < 1e-15
        rotated = apply_unitary(pair.to_statevector(), rot, (1,))
        assert epr_fidelity(rotated, out.to_statevector()) > 1.0 - 1e-10


def test_canonicalize_phi_orientation_guard():
    with pytest.raises(WrongOrientationError):
        canonicalize_phi(PairState(u=0.6, v=0.8, orientation="psi"))


def test_rotation_read_only():
    with pytest.raises(ValueError):
        phi_to_psi_rotation()[0, 0] = 5.0
