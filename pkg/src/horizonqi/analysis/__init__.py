"""Sweeps, figure reproduction and cross-checks against published results."""

from .claims import CLAIMS, ClaimCheck, check_claims
from .closed_forms import closed_form_concurrence_w, closed_form_fidelity_w, closed_form_tangle_ghz
from .figures import FIGURES, reproduce_figure
from .printed import TARGETS, DiscrepancyReport, compare_with_printed_matrix, printed_matrix, targets_for
from .sweep import MEASURES, Axis, MeasureRecord, SweepGrid, SweepResult, run_sweep, save_csv, write_csv
