"""Three-qubit GHZ, W and W1 states with no horizon in play."""

# %%
import numpy as np

from horizonqi import (
    concurrence,
    make_family,
    partial_trace,
    residual_tangle,
    teleportation_fidelity,
    to_density,
)

# %% the states themselves, amplitudes indexed by the bit string ABC
for name in ("ghz", "w", "w1"):
    psi = make_family(name)
    support = {format(i, "03b"): round(float(a.real), 4) for i, a in enumerate(psi.amplitudes) if abs(a) > 0}
    print(f"{name:4s} {support}")

# %% tangles: GHZ carries only three-way entanglement, W none
for name in ("ghz", "w", "w1"):
    br = residual_tangle(to_density(make_family(name)))
    print(f"{name:4s} one-tangle {br.one_tangle:.4f}  C^2(AB) {float(br.c2_ab):.4f}  "
          f"C^2(AC) {float(br.c2_ac):.4f}  residual {br.residual:.4f}")

# %% pairs left after discarding one qubit
for name in ("ghz", "w", "w1"):
    rho = to_density(make_family(name))
    for pair in (("A", "B"), ("A", "C"), ("B", "C")):
        r = partial_trace(rho, pair)
        tf = teleportation_fidelity(r)
        print(f"{name:4s} {''.join(pair)}  C = {concurrence(r):.4f}  N = {tf.n_value:.4f}  f = {tf.fidelity:.4f}")

# %% the W pair beats the classical 2/3 bound: f = 7/9
r = partial_trace(to_density(make_family("w")), ("A", "C"))
print(np.isclose(teleportation_fidelity(r).fidelity, 7 / 9))
