"""Grid sweeps, CSV output and the figure reproductions."""

# %%
import tempfile
from pathlib import Path

import numpy as np

from horizonqi import BlackHoleModel, Scenario
from horizonqi.analysis import Axis, SweepGrid, reproduce_figure, run_sweep

# %% a small sweep over frequency and temperature
template = Scenario("w", BlackHoleModel.schwarzschild(temperature=1.0), 0.0, traced_party="B")
grid = SweepGrid(Axis("omega", 0, 1, 0.25), Axis("temperature", 1, 10, 4.5))
res = run_sweep(template, grid, ["concurrence", "fidelity"])
print(res.to_csv())

# %% the same values as 2-D arrays, axis1 along rows
print(np.round(res.as_grid("fidelity"), 4))

# %% write every CSV behind a figure
with tempfile.TemporaryDirectory() as tmp:
    for path in reproduce_figure(7, tmp, points=50):
        lines = Path(path).read_text().splitlines()
        print(Path(path).name, len(lines) - 1, "rows")
        print(lines[0])
        print(lines[-1])
