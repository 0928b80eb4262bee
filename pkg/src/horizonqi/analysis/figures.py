"""Sweep definitions behind each published figure, written out as CSV."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..errors import ConfigurationError
from ..horizon import BlackHoleModel, Scenario
from .sweep import Axis, SweepGrid, run_sweep, save_csv

DEFAULT_POINTS = 200


@dataclass(frozen=True)
class FigurePanel:
    stem: str          # output file prefix, e.g. "fig5" or "fig2a"
    family: str
    model: BlackHoleModel
    axis1: tuple       # (name, start, stop)
    axis2: tuple
    measure: str


def _schw():
    return BlackHoleModel.schwarzschild(temperature=1.0)


def _dil(**kw):
    return BlackHoleModel.ghs_dilaton(mass=1.0, **kw)


_OMEGA_UNIT = ("omega", 0.0, 1.0)

FIGURES = {
    # T = 0 is outside the model, so the temperature axis starts just above it
    2: (
        FigurePanel("fig2a", "ghz", _schw(), ("temperature", 0.05, 10.0), ("omega", 0.0, 900.0), "residual_tangle"),
        FigurePanel("fig2b", "ghz", _dil(charge=0.0), ("charge", 0.0, 20.0), ("omega", 0.0, 50.0), "residual_tangle"),
    ),
    3: (FigurePanel("fig3", "w", _schw(), _OMEGA_UNIT, ("temperature", 1.0, 10.0), "concurrence"),),
    4: (FigurePanel("fig4", "w", _dil(dilaton=1.0), ("dilaton", 1.0, 10.0), _OMEGA_UNIT, "concurrence"),),
    5: (FigurePanel("fig5", "w", _schw(), _OMEGA_UNIT, ("temperature", 1.0, 10.0), "fidelity"),),
    6: (FigurePanel("fig6", "w", _dil(dilaton=1.0), ("dilaton", 1.0, 10.0), _OMEGA_UNIT, "fidelity"),),
    7: (FigurePanel("fig7", "w1", _schw(), _OMEGA_UNIT, ("temperature", 1.0, 5.0), "concurrence"),),
    8: (FigurePanel("fig8", "w1", _dil(dilaton=1.0), ("dilaton", 0.1, 10.0), _OMEGA_UNIT, "concurrence"),),
    9: (FigurePanel("fig9", "w1", _schw(), _OMEGA_UNIT, ("temperature", 1.0, 5.0), "fidelity"),),
    10: (FigurePanel("fig10", "w1", _dil(dilaton=1.0), ("dilaton", 0.1, 10.0), _OMEGA_UNIT, "fidelity"),),
}


def figure_panels(fig_id: int) -> tuple[FigurePanel, ...]:
    try:
        return FIGURES[int(fig_id)]
    except (KeyError, ValueError):
        raise ConfigurationError(f"no figure {fig_id!r}; choose from {sorted(FIGURES)}") from None


def panel_sweep(panel: FigurePanel, points: int = DEFAULT_POINTS, trace_qubit: str = "B"):
    grid = SweepGrid(Axis.spanning(*panel.axis1, points), Axis.spanning(*panel.axis2, points))
    traced = None if panel.measure == "residual_tangle" else trace_qubit
    template = Scenario(panel.family, panel.model, 0.0, traced_party=traced)
    return run_sweep(template, grid, [panel.measure])


def reproduce_figure(fig_id: int, outdir, points: int = DEFAULT_POINTS, trace_qubit: str = "B") -> list[Path]:
    """Write ``<stem>_<measure>.csv`` for every panel of the figure into ``outdir``."""
    panels = figure_panels(fig_id)
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory: {exc.strerror}", str(outdir)) from exc
    paths = []
    for panel in panels:
        result = panel_sweep(panel, points, trace_qubit)
        paths.append(save_csv(result, outdir / f"{panel.stem}_{panel.measure}.csv"))
    return paths
