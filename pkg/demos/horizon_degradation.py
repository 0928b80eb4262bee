"""How Hawking modes degrade the GHZ and W families near two kinds of black hole."""

# %%
import numpy as np

from horizonqi import (
    BlackHoleModel,
    Scenario,
    build_reduced,
    concurrence,
    mode_amplitudes,
    residual_tangle,
    teleportation_fidelity,
)

# %% mode amplitudes: mu^2 = 1 / (1 + exp(-omega / T)) for Schwarzschild
for t in (0.1, 1.0, 10.0):
    amps = mode_amplitudes(BlackHoleModel.schwarzschild(temperature=t), 1.0)
    print(f"T = {t:5.1f}  mu = {amps.mu:.5f}  nu = {amps.nu:.5f}")

# %% W pair (B traced out) at omega = 1 as the temperature rises
for t in np.linspace(1, 10, 7):
    rho = build_reduced(Scenario("w", BlackHoleModel.schwarzschild(temperature=t), 1.0, traced_party="B"))
    tf = teleportation_fidelity(rho)
    print(f"T = {t:5.2f}  C = {concurrence(rho):.4f}  f = {tf.fidelity:.4f}  useful = {tf.useful}")

# %% GHZ keeps residual tangle 1 at any temperature
for t in (0.5, 2.0, 8.0):
    rho3 = build_reduced(Scenario("ghz", BlackHoleModel.schwarzschild(temperature=t), 1.0))
    print(f"T = {t}  residual tangle {residual_tangle(rho3).residual:.12f}")

# %% dilaton black hole, M = 1: beyond D = M the model is flagged unphysical
for d in (0.0, 0.5, 0.99, 1.0, 1.5, 3.0):
    model = BlackHoleModel.ghs_dilaton(mass=1.0, dilaton=d)
    rho = build_reduced(Scenario("w", model, 1.0, traced_party="B"))
    f = teleportation_fidelity(rho).fidelity
    print(f"D = {d:4.2f}  f = {f:.4f}  unphysical = {model.unphysical}")
