"""Four swapping strategies for a pair of partially entangled input pairs.

The register holds qubits [A, C1, B, C2]: A and B are the end qubits to be
entangled, C1 and C2 sit at the hub and get measured. Each strategy is run
two ways at once, by exact enumeration of every measurement branch and by
its closed-form success probability, and the report construction fails if
the two disagree.

Strategies:
  1.  extract an EPR pair from each input first, then swap deterministically
  2.  Bell measurement at the hub, then extraction on the leftover AB pair
  3.  hub measurement in a basis matched to the inputs; one branch is
      exactly EPR and only that branch counts
  4.  hub measurement at an arbitrary basis parameter, extraction on every
      branch
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bases import (
    BASIS_LABELS,
    SQRT_HALF,
    MeasuringBasis,
    bell_basis,
    parametrized_basis,
    x_from_concurrence,
)
from .entanglement import (
    PairState,
    bell_state,
    epr_fidelity,
    special_concurrences,
)
from .extraction import (
    ExtractionResult,
    build_use_unitary,
    canonicalize_phi,
    extract_epr,
)
from .qstate import (
    DEGENERATE_PROB,
    KET0,
    KET1,
    NORM_TOL,
    ORACLE_TOL,
    SIGMA_Z,
    StateVector,
    apply_unitary,
    measure_subsystem,
    partial_inner,
    tensor,
)

_HUB = (1, 3)
_BELL_LABELS = ("phi+", "psi+", "psi-", "phi-")
_MINUS_LABELS = frozenset({"nu-", "mu-", "psi-", "phi-"})


class NotMaximalError(ValueError):
    """Deterministic swapping requires both inputs maximally entangled."""


class ReportInvariantError(RuntimeError):
    """A strategy report failed one of its self-consistency checks."""


class InequalityViolatedError(Exception):
    """The closed-form success probabilities break the expected ordering."""

    def __init__(self, message: str, values: tuple, failed: tuple[str, ...]):
        super().__init__(message)
        self.values = values
        self.failed = failed


@dataclass(frozen=True)
class SwapInputs:
    """Minor amplitudes of the two input pairs.

    Pair A-C1 is alpha|01> + beta|10>, pair B-C2 is gamma|01> + delta|10>,
    with alpha <= beta and gamma <= delta enforced at construction (use
    SwapInputs.canonical to fold arbitrary amplitudes into this form).
    """

    alpha: float
    gamma: float

    def __post_init__(self):
        for name, val in (("alpha", self.alpha), ("gamma", self.gamma)):
            val = float(val)
            if val < -NORM_TOL:
                raise ValueError(f"{name} must be nonnegative, got {val}")
            other = "beta" if name == "alpha" else "delta"
            if val > SQRT_HALF + NORM_TOL:
                raise ValueError(f"{name} <= {other} required, got {name} = {val}")
            object.__setattr__(self, name, min(max(val, 0.0), SQRT_HALF))

    @property
    def beta(self) -> float:
        return math.sqrt(1.0 - self.alpha * self.alpha)

    @property
    def delta(self) -> float:
        return math.sqrt(1.0 - self.gamma * self.gamma)

    @property
    def c_ac1(self) -> float:
        return min(1.0, 2.0 * self.alpha * self.beta)

    @property
    def c_bc2(self) -> float:
        return min(1.0, 2.0 * self.gamma * self.delta)

    @classmethod
    def canonical(cls, alpha: float, gamma: float) -> "SwapInputs":
        """Fold arbitrary amplitudes in [0, 1] into the minor-amplitude form."""
        vals = []
        for name, val in (("alpha", alpha), ("gamma", gamma)):
            val = float(val)
            if not -NORM_TOL <= val <= 1.0 + NORM_TOL:
                raise ValueError(f"{name} = {val} outside [0, 1]")
            val = min(max(val, 0.0), 1.0)
            vals.append(min(val, math.sqrt(1.0 - val * val)))
        return cls(alpha=vals[0], gamma=vals[1])

    @classmethod
    def from_concurrences(cls, c_ac1: float, c_bc2: float) -> "SwapInputs":
        """Inputs whose pairs carry the given concurrences."""
        return cls(alpha=x_from_concurrence(c_ac1), gamma=x_from_concurrence(c_bc2))


@dataclass(frozen=True)
class BranchRecord:
    """One terminal branch of a strategy's enumeration tree."""

    label: str
    probability: float
    post_state: StateVector | None
    corrections: tuple[str, ...]
    extraction: ExtractionResult | None
    success_probability: float


@dataclass(frozen=True)
class StrategyReport:
    """Full accounting of one strategy run.

    basis_x is the hub measuring-basis parameter for strategies 3 and 4 and
    None where the measurement is the plain Bell basis. Construction checks
    that the branch successes sum to simulated_success (1e-12) and that the
    simulation matches the closed form (1e-10).
    """

    strategy_id: int
    inputs: SwapInputs
    basis_x: float | None
    simulated_success: float
    closed_form: float
    branches: tuple[BranchRecord, ...]
    special_values: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        total = sum(b.success_probability for b in self.branches)
        if abs(total - self.simulated_success) > 1e-12:
            raise ReportInvariantError(
                f"strategy {self.strategy_id}: branch successes sum to {total}, "
                f"reported {self.simulated_success}"
            )
        if abs(self.simulated_success - self.closed_form) > ORACLE_TOL:
            raise ReportInvariantError(
                f"strategy {self.strategy_id}: simulated {self.simulated_success} "
                f"vs closed form {self.closed_form} at alpha={self.inputs.alpha}, "
                f"gamma={self.inputs.gamma}, x={self.basis_x}"
            )


def closed_form_s1(inputs: SwapInputs) -> float:
    """Product of the two single-pair extraction probabilities."""
    return 4.0 * inputs.alpha ** 2 * inputs.gamma ** 2


def closed_form_s2(inputs: SwapInputs) -> float:
    """Extraction probability of the weaker input pair."""
    return 2.0 * min(inputs.alpha ** 2, inputs.gamma ** 2)


def closed_form_s3(inputs: SwapInputs) -> float:
    """Probability of the single exactly-EPR branch of the matched basis.

    Evaluated two ways, as 2 a^2 b^2 g^2 d^2 / (a^2 d^2 + b^2 g^2) and as
    c_ac1 * c_bc2 * c_minus / 4; both must agree to 1e-12.
    """
    a, b = inputs.alpha, inputs.beta
    g, d = inputs.gamma, inputs.delta
    denom = a * a * d * d + b * b * g * g
    if denom < DEGENERATE_PROB:
        return 0.0
    primary = 2.0 * a * a * b * b * g * g * d * d / denom
    c_minus, _ = special_concurrences(inputs.c_ac1, inputs.c_bc2)
    alt = inputs.c_ac1 * inputs.c_bc2 * c_minus / 4.0
    if abs(primary - alt) > 1e-12:
        raise ReportInvariantError(f"P_s3 algebraic forms disagree: {primary} vs {alt}")
    return primary


def special_x_values(inputs: SwapInputs) -> tuple[float, float, float, float]:
    """Basis parameters (x1, x2, x3, x4) at which one outcome branch is EPR.

    Verifies the expected ordering: x1 <= x2 <= 1/sqrt2 <= x3 <= x4 when
    alpha <= gamma, with x2 and x3 swapped otherwise. Only x values up to
    1/sqrt2 are admissible basis parameters.
    """
    a, b = inputs.alpha, inputs.beta
    g, d = inputs.gamma, inputs.delta
    den_outer = a * a * g * g + b * b * d * d
    den_inner = a * a * d * d + b * b * g * g
    x1 = a * g / math.sqrt(den_outer)
    x4 = b * d / math.sqrt(den_outer)
    if den_inner < DEGENERATE_PROB:
        # Only at alpha = gamma = 0; both values tend to 1/sqrt2 there.
        x2 = x3 = SQRT_HALF
    else:
        x2 = a * d / math.sqrt(den_inner)
        x3 = b * g / math.sqrt(den_inner)
    lo, hi = (x2, x3) if a <= g else (x3, x2)
    ordered = (x1 <= lo + NORM_TOL and lo <= SQRT_HALF + NORM_TOL
               and SQRT_HALF <= hi + NORM_TOL and hi <= x4 + NORM_TOL)
    if not ordered:
        raise ReportInvariantError(f"special x values out of order: {(x1, x2, x3, x4)}")
    return (x1, x2, x3, x4)


def closed_form_s4(inputs: SwapInputs, basis_x: float) -> float:
    """Piecewise success probability of extraction on every branch.

    Rises as 2x^2 up to x1, then as 2 a^2 g^2 + 2(a^2 d^2 + b^2 g^2) x^2 up
    to min(x2, x3), and plateaus at the strategy-2 value from there on.
    """
    x = float(basis_x)
    if not -NORM_TOL <= x <= SQRT_HALF + NORM_TOL:
        raise ValueError(f"basis_x = {x} outside [0, 1/sqrt2]")
    x = min(max(x, 0.0), SQRT_HALF)
    a, b = inputs.alpha, inputs.beta
    g, d = inputs.gamma, inputs.delta
    x1, x2, x3, _ = special_x_values(inputs)
    if x <= x1:
        return 2.0 * x * x
    if x <= min(x2, x3):
        return 2.0 * a * a * g * g + 2.0 * (a * a * d * d + b * b * g * g) * x * x
    return closed_form_s2(inputs)


def _special_values(inputs: SwapInputs) -> dict[str, float]:
    x1, x2, x3, x4 = special_x_values(inputs)
    c_minus, c_plus = special_concurrences(inputs.c_ac1, inputs.c_bc2)
    return {"x1": x1, "x2": x2, "x3": x3, "x4": x4,
            "c_minus": c_minus, "c_plus": c_plus}


def _initial_state(inputs: SwapInputs) -> StateVector:
    pair_ac1 = PairState(u=inputs.alpha, v=inputs.beta)
    pair_bc2 = PairState(u=inputs.gamma, v=inputs.delta)
    return tensor(pair_ac1.to_statevector(), pair_bc2.to_statevector())


def _measure_hub(state: StateVector, basis: MeasuringBasis, labels: tuple[str, ...]):
    """Hub measurement plus sign correction, one row per outcome.

    Each outcome is enumerated by projecting the hub qubits onto the basis
    element directly; the probability is the squared residual norm. Returns
    (label, probability, corrected AB PairState or None, corrections) per
    branch. Minus-labelled outcomes get sigma_z on qubit A, which removes
    the internal relative sign of the leftover AB state.
    """
    rows = []
    total = 0.0
    for element, label in zip(basis.elements, labels):
        residual = partial_inner(state, element, _HUB)
        p = residual.norm ** 2
        total += p
        if p < DEGENERATE_PROB:
            rows.append((label, p, None, ()))
            continue
        ab = StateVector(residual.amplitudes / math.sqrt(p))
        corrections: tuple[str, ...] = ()
        if label in _MINUS_LABELS:
            ab = apply_unitary(ab, SIGMA_Z, (0,))
            corrections = ("sigma_z:A",)
        rows.append((label, p, PairState.from_statevector(ab), corrections))
    if abs(total - 1.0) > NORM_TOL:
        raise ReportInvariantError(f"hub outcome probabilities sum to {total}")
    return rows


def _bell_swap_records(state: StateVector, joint: float, prefix: str = "") -> list[BranchRecord]:
    """Deterministic-swap stage: Bell measurement, sign corrections, success
    iff the corrected AB state has fidelity 1 with its plus-sign Bell target."""
    records = []
    for label, p, pair, corr in _measure_hub(state, bell_basis(), _BELL_LABELS):
        if pair is None:
            records.append(BranchRecord(prefix + label, joint * p, None, corr, None, 0.0))
            continue
        post = pair.to_statevector()
        target = bell_state("phi+" if pair.orientation == "phi" else "psi+")
        success = joint * p if epr_fidelity(post, target) >= 1.0 - ORACLE_TOL else 0.0
        records.append(BranchRecord(prefix + label, joint * p, post, corr, None, success))
    return records


def basic_deterministic_swap(inputs: SwapInputs) -> StrategyReport:
    """Bell measurement at the hub for two maximally entangled inputs.

    Every outcome leaves AB in a Bell state, so all four branches succeed
    and the total success probability is 1.
    """
    if inputs.c_ac1 < 1.0 - ORACLE_TOL or inputs.c_bc2 < 1.0 - ORACLE_TOL:
        raise NotMaximalError(
            f"both inputs must be maximally entangled, got concurrences "
            f"({inputs.c_ac1}, {inputs.c_bc2})"
        )
    branches = _bell_swap_records(_initial_state(inputs), 1.0)
    simulated = sum(b.success_probability for b in branches)
    return StrategyReport(0, inputs, None, simulated, 1.0, tuple(branches))


def strategy1(inputs: SwapInputs) -> StrategyReport:
    """Extract an EPR pair from each input, then swap deterministically.

    Both extractions run as explicit five-qubit simulations (register plus
    ancilla); the doubly heralded branch then takes the deterministic swap.
    """
    branches: list[BranchRecord] = []
    state = _initial_state(inputs)

    staged = tensor(state, KET0)
    staged = apply_unitary(staged, build_use_unitary(inputs.alpha, inputs.beta), (0, 4))
    herald1, fail1 = measure_subsystem(staged, (KET0, KET1), (4,))
    branches.append(BranchRecord("use:AC1:fail", fail1.probability, None, (), None, 0.0))

    if not herald1.degenerate:
        state = partial_inner(herald1.post_state, KET0, (4,))
        staged = tensor(state, KET0)
        staged = apply_unitary(staged, build_use_unitary(inputs.gamma, inputs.delta), (2, 4))
        herald2, fail2 = measure_subsystem(staged, (KET0, KET1), (4,))
        branches.append(BranchRecord("use:BC2:fail", herald1.probability * fail2.probability,
                                     None, (), None, 0.0))
        if not herald2.degenerate:
            state = partial_inner(herald2.post_state, KET0, (4,))
            joint = herald1.probability * herald2.probability
            branches.extend(_bell_swap_records(state, joint, prefix="swap:"))

    simulated = sum(b.success_probability for b in branches)
    return StrategyReport(1, inputs, None, simulated, closed_form_s1(inputs), tuple(branches))


def strategy2(inputs: SwapInputs) -> StrategyReport:
    """Bell measurement at the hub, then extraction on the leftover pair.

    The even-parity outcome probability p = a^2 g^2 + b^2 d^2 is recorded in
    special_values["p"] and cross-checked against the two phi branches.
    """
    a, b = inputs.alpha, inputs.beta
    g, d = inputs.gamma, inputs.delta
    branches = []
    for label, p, pair, corr in _measure_hub(_initial_state(inputs), bell_basis(), _BELL_LABELS):
        if pair is None:
            branches.append(BranchRecord(label, p, None, corr, None, 0.0))
            continue
        post = pair.to_statevector()
        work = pair
        if pair.orientation == "phi":
            work = canonicalize_phi(pair)
            corr = corr + ("sigma_x:B",)
        ext = extract_epr(work, act_on="first")
        branches.append(BranchRecord(label, p, post, corr, ext, p * ext.success_probability))
    simulated = sum(br.success_probability for br in branches)
    p_even = sum(br.probability for br in branches if br.label in ("phi+", "phi-"))
    expected_even = a * a * g * g + b * b * d * d
    if abs(p_even - expected_even) > 1e-12:
        raise ReportInvariantError(f"phi-branch probability {p_even} != {expected_even}")
    return StrategyReport(2, inputs, None, simulated, closed_form_s2(inputs), tuple(branches),
                          special_values={"p": p_even})


def strategy3(inputs: SwapInputs) -> StrategyReport:
    """Measure the hub in the basis matched to the inputs, keep one branch.

    The basis parameter is x2 for alpha <= gamma (nu+ branch) and x3
    otherwise (nu- branch); the selected branch's outcome is exactly EPR
    and only it counts as success, other branches are discarded whatever
    their entanglement.
    """
    x1, x2, x3, x4 = special_x_values(inputs)
    nu_plus_selected = inputs.alpha <= inputs.gamma
    basis_x = min(x2 if nu_plus_selected else x3, SQRT_HALF)
    selected = "nu+" if nu_plus_selected else "nu-"
    branches = []
    for label, p, pair, corr in _measure_hub(_initial_state(inputs), parametrized_basis(basis_x), BASIS_LABELS):
        if pair is None:
            branches.append(BranchRecord(label, p, None, corr, None, 0.0))
            continue
        post = pair.to_statevector()
        success = 0.0
        if label == selected and epr_fidelity(post, bell_state("psi+")) >= 1.0 - ORACLE_TOL:
            success = p
        branches.append(BranchRecord(label, p, post, corr, None, success))
    simulated = sum(br.success_probability for br in branches)
    return StrategyReport(3, inputs, basis_x, simulated, closed_form_s3(inputs),
                          tuple(branches), special_values=_special_values(inputs))


def strategy4(inputs: SwapInputs, basis_x: float) -> StrategyReport:
    """Measure the hub at an arbitrary basis parameter, extract on every branch."""
    basis = parametrized_basis(basis_x)
    branches = []
    for label, p, pair, corr in _measure_hub(_initial_state(inputs), basis, BASIS_LABELS):
        if pair is None:
            branches.append(BranchRecord(label, p, None, corr, None, 0.0))
            continue
        post = pair.to_statevector()
        work = pair
        if pair.orientation == "phi":
            work = canonicalize_phi(pair)
            corr = corr + ("sigma_x:B",)
        ext = extract_epr(work, act_on="first")
        branches.append(BranchRecord(label, p, post, corr, ext, p * ext.success_probability))
    simulated = sum(br.success_probability for br in branches)
    return StrategyReport(4, inputs, basis.x, simulated, closed_form_s4(inputs, basis.x),
                          tuple(branches), special_values=_special_values(inputs))


@dataclass(frozen=True)
class InequalityCheck:
    """Closed-form values backing a successful ordering check."""

    p_s1: float
    p_s2: float
    p_s3: float


def verify_inequalities(inputs: SwapInputs, slack: float = 1e-12) -> InequalityCheck:
    """Check the ordering p_s3 <= p_s1 <= p_s2 and p_s3 <= 1/4.

    Raises InequalityViolatedError naming the broken links and carrying the
    tuple (alpha, gamma, p_s1, p_s2, p_s3). Note the first link genuinely
    fails for small input concurrences; see the package documentation.
    """
    p1 = closed_form_s1(inputs)
    p2 = closed_form_s2(inputs)
    p3 = closed_form_s3(inputs)
    failed = []
    if p3 > p1 + slack:
        failed.append("p_s3 <= p_s1")
    if p1 > p2 + slack:
        failed.append("p_s1 <= p_s2")
    if p3 > 0.25 + slack:
        failed.append("p_s3 <= 1/4")
    if failed:
        values = (inputs.alpha, inputs.gamma, p1, p2, p3)
        raise InequalityViolatedError(
            f"violated {', '.join(failed)} at (alpha, gamma, p_s1, p_s2, p_s3) = {values}",
            values=values, failed=tuple(failed),
        )
    return InequalityCheck(p_s1=p1, p_s2=p2, p_s3=p3)
