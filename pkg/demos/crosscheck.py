"""Diff published matrices and formulas against the numerical pipeline."""

# %%
import numpy as np

from horizonqi import BlackHoleModel, Scenario, build_reduced, mode_amplitudes, teleportation_fidelity
from horizonqi.analysis import (
    check_claims,
    closed_form_fidelity_w,
    compare_with_printed_matrix,
    targets_for,
)

amps = mode_amplitudes(BlackHoleModel.schwarzschild(temperature=1.0), 1.0)
mu, nu = amps.mu, amps.nu

# %% printed density matrices, entry by entry
for family in ("ghz", "w", "w1"):
    for target in targets_for(family):
        rep = compare_with_printed_matrix(target, mu, nu)
        print(f"{target:8s} max diff {rep.max_abs_entry_diff:.2e}  trace {rep.trace_of_printed_matrix:.6f}  "
              f"symmetric {rep.symmetric}")

# %% full notes for one report
print(compare_with_printed_matrix("w_ac", mu, nu).notes)

# %% the printed W fidelity formula misses a mu^2 nu^2 / 18 term
for t in (1.0, 3.0, 10.0):
    a = mode_amplitudes(BlackHoleModel.schwarzschild(temperature=t), 1.0)
    rho = build_reduced(Scenario("w", BlackHoleModel.schwarzschild(temperature=t), 1.0, traced_party="B"))
    gap = teleportation_fidelity(rho).fidelity - closed_form_fidelity_w(a.mu, a.nu)
    print(f"T = {t:4.1f}  gap {gap:.6f}  mu^2 nu^2 / 18 = {a.mu ** 2 * a.nu ** 2 / 18:.6f}")

# %% published scalar values
for c in check_claims():
    mark = "ok " if c.agrees else "BAD"
    print(f"{mark} {c.name:45s} quoted {c.quoted:<8} computed {c.computed:.4f}")
