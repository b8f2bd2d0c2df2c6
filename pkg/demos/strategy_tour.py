"""
Four swapping strategies on the same pair of inputs
===================================================

One worked example, amplitudes (0.5, 0.6), comparing how the four
strategies trade success probability for protocol complexity:

1. extract EPR pairs from both inputs first, then swap deterministically
2. Bell-measure the hub first, then extract from the leftover pair
3. measure the hub in the basis matched to the inputs, keep one branch
4. measure the hub at a tunable basis parameter x, extract on every branch

The last section sweeps x for strategy 4 and shows the piecewise shape:
two slope breaks and a plateau where the curve sits exactly on the
strategy-2 value.
"""

import numpy as np

from entswap import (
    SQRT_HALF,
    SwapInputs,
    closed_form_s2,
    parametrized_basis,
    special_concurrences,
    special_x_values,
    strategy1,
    strategy2,
    strategy3,
    strategy4,
)

inputs = SwapInputs(0.5, 0.6)
print(f"inputs: alpha = {inputs.alpha}, gamma = {inputs.gamma} "
      f"(concurrences {inputs.c_ac1:.4f}, {inputs.c_bc2:.4f})")
print()


def show(title, report):
    print(title)
    for b in report.branches:
        ext = ""
        if b.extraction is not None:
            ext = f"  p_ext {b.extraction.success_probability:.6f}"
        print(f"  {b.label:<14} p {b.probability:.6f}  "
              f"success {b.success_probability:.6f}{ext}")
    print(f"  total: simulated {report.simulated_success:.12f}, "
          f"closed form {report.closed_form:.12f}")
    print()


show("strategy 1: extract both, then swap", strategy1(inputs))
show("strategy 2: swap, then extract", strategy2(inputs))
rep3 = strategy3(inputs)
show(f"strategy 3: matched basis (x = {rep3.basis_x:.6f}), single branch", rep3)

# Strategy 4 at a generic x sits between the others; at x = 1/sqrt(2) it
# reproduces strategy 2 exactly.
show("strategy 4 at x = 0.30", strategy4(inputs, 0.30))

# The x-dependence is piecewise with two visible slope breaks.
x1, x2, x3, x4 = special_x_values(inputs)
onset = min(x2, x3)
print(f"special x values: x1 = {x1:.6f}, onset min(x2, x3) = {onset:.6f}")

print(f"{'x':>8} {'p_s4':>12}")
for x in np.linspace(0.0, SQRT_HALF, 15):
    rep = strategy4(inputs, float(x))
    print(f"{x:>8.4f} {rep.simulated_success:>12.8f}")

plateau = strategy4(inputs, float(onset)).simulated_success
print()
print(f"plateau value   {plateau:.12f}")
print(f"strategy 2 form {closed_form_s2(inputs):.12f}")

# The plateau begins exactly where the measuring basis becomes as
# entangled as the worse of the two inputs allows: its concurrence at the
# onset equals the matching threshold c_minus.
c_minus, _ = special_concurrences(inputs.c_ac1, inputs.c_bc2)
print(f"basis concurrence at onset {parametrized_basis(float(onset)).concurrence:.12f}")
print(f"matching threshold c_minus {c_minus:.12f}")
