"""Printed reduced density matrices as (mu, nu) templates, and a differ.

Each template reproduces a published matrix entry by entry, typos
included.  Three-qubit templates are written in the order the matrices
were printed, which lines up with the Hamming-weight basis order
000, 001, 010, 100, 011, 101, 110, 111.  :func:`compare_with_printed_matrix`
builds the same operator from first principles and reports where the
two disagree.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import ConfigurationError, ContractError
from ..horizon import reduced_matrices
from ..qstate import partial_trace_matrix, permute_to_weight_order, weight_order

SQ2 = np.sqrt(2.0)
ENTRY_TOL = 1e-12


def _ghz_abc(mu, nu):
    m = np.zeros((8, 8))
    m[0, 0] = mu ** 4
    m[1, 1] = m[2, 2] = mu ** 2 * nu ** 2
    m[4, 4] = nu ** 4
    m[0, 7] = m[7, 0] = mu ** 2
    m[7, 7] = 1
    return m / 2


def _ghz_bc(mu, nu):
    return np.diag([mu ** 4, mu ** 2 * nu ** 2, mu ** 2 * nu ** 2, nu ** 4]) / 2


def _ghz_ac(mu, nu):
    return np.diag([mu ** 4 + mu ** 2 * nu ** 2, mu ** 2 * nu ** 2, nu ** 4, 1.0]) / 2


def _w_abc(mu, nu):
    m = np.zeros((8, 8))
    m[1:4, 1:4] = [
        [mu ** 2, mu ** 2, mu ** 3],
        [mu ** 2, mu ** 2, mu ** 3],
        [mu ** 3, mu ** 3, mu ** 4],
    ]
    m[4:7, 4:7] = [
        [2 * nu ** 2, mu * nu ** 2, mu * nu ** 2],
        [mu * nu ** 2, mu ** 2 * nu ** 2, 0],
        [mu * nu ** 2, 0, mu ** 2 * nu ** 2],
    ]
    m[7, 7] = nu ** 4
    return m / 3


def _w_ac(mu, nu):
    off = mu ** 3 + mu * nu ** 2
    return np.array(
        [
            [mu ** 2, 0, 0, 0],
            [0, mu ** 2 + nu ** 2 + nu ** 4, off, 0],
            [0, off, mu ** 4 + mu ** 2 * nu ** 2, 0],
            [0, 0, 0, mu ** 2 * nu ** 2 + nu ** 4],
        ]
    ) / 3


def _w1_abc(mu, nu):
    m = np.zeros((8, 8))
    m[1:4, 1:4] = [
        [2 * mu ** 2, SQ2 * mu ** 2, SQ2 * mu ** 3],
        [SQ2 * mu ** 2, mu ** 2, 0],
        [SQ2 * mu ** 3, mu ** 3, mu ** 4],
    ]
    m[4:7, 4:7] = [
        [3 * nu ** 2, mu * nu ** 2, SQ2 * mu * nu ** 2],
        [2 * mu * nu ** 2, mu ** 2 * nu ** 2, 0],
        [SQ2 * mu * nu ** 2, 0, mu ** 2 * nu ** 2],
    ]
    m[7, 7] = nu ** 4
    return m / 4


def _w1_ac(mu, nu):
    off = SQ2 * mu ** 3 + SQ2 * mu * nu ** 2
    return np.array(
        [
            [mu ** 2, 0, 0, 0],
            [0, 2 * mu ** 2 + 3 * nu ** 2, off, 0],
            [0, off, mu ** 4 + mu ** 2 * nu ** 2, 0],
            [0, 0, 0, mu ** 2 * nu ** 2 + nu ** 4],
        ]
    ) / 4


@dataclass(frozen=True)
class _Target:
    family: str
    traced: str | None
    template: object
    parent: str | None = None  # printed three-qubit matrix this one was reduced from


TARGETS = {
    "ghz_abc": _Target("ghz", None, _ghz_abc),
    "ghz_bc": _Target("ghz", "A", _ghz_bc, "ghz_abc"),
    "ghz_ac": _Target("ghz", "B", _ghz_ac, "ghz_abc"),
    "ghz_ab": _Target("ghz", "C", _ghz_ac, "ghz_abc"),
    "w_abc": _Target("w", None, _w_abc),
    "w_ac": _Target("w", "B", _w_ac, "w_abc"),
    "w_ab": _Target("w", "C", _w_ac, "w_abc"),
    "w1_abc": _Target("w1", None, _w1_abc),
    "w1_ac": _Target("w1", "B", _w1_ac, "w1_abc"),
}


def targets_for(family: str) -> list[str]:
    return [k for k, t in TARGETS.items() if t.family == family.lower()]


def _target(name: str) -> _Target:
    try:
        return TARGETS[name]
    except KeyError:
        raise ConfigurationError(f"unknown printed matrix {name!r}; choose from {', '.join(TARGETS)}") from None


def printed_matrix(target: str, mu: float, nu: float) -> np.ndarray:
    """The printed matrix with (mu, nu) substituted, in printed basis order."""
    return np.asarray(_target(target).template(float(mu), float(nu)), dtype=float)


def pipeline_matrix(target: str, mu: float, nu: float) -> np.ndarray:
    """First-principles counterpart of ``target`` in the printed basis order."""
    t = _target(target)
    _, rho = reduced_matrices(t.family, float(mu), float(nu), traced=t.traced)
    return permute_to_weight_order(rho) if rho.shape[-1] == 8 else rho


def basis_labels(dim: int) -> list[str]:
    if dim == 8:
        return [format(i, "03b") for i in weight_order(3)]
    return [format(i, "02b") for i in range(dim)]


@dataclass(frozen=True)
class DiscrepancyReport:
    target: str
    max_abs_entry_diff: float
    trace_of_printed_matrix: float
    symmetric: bool
    notes: str

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _entry(labels, i, j) -> str:
    return f"({i + 1},{j + 1}) |{labels[i]}><{labels[j]}|"


def compare_with_printed_matrix(target: str, mu: float, nu: float) -> DiscrepancyReport:
    """Diff a printed matrix against the pipeline at (mu, nu).

    ``notes`` lists the entries that disagree, the printed trace deviation,
    asymmetric entries, and (for reduced matrices) which reading of the
    printed three-qubit parent reproduces the printed reduction.
    """
    if abs(mu ** 2 + nu ** 2 - 1) > 1e-9:
        raise ContractError("compare_with_printed_matrix needs mu^2 + nu^2 = 1")
    tgt = _target(target)
    printed = printed_matrix(target, mu, nu)
    pipeline = pipeline_matrix(target, mu, nu)
    diff = np.abs(pipeline - printed)
    labels = basis_labels(printed.shape[0])
    trace = float(np.trace(printed))
    asym = np.argwhere(np.triu(np.abs(printed - printed.T) > ENTRY_TOL, 1))
    notes = []

    bad = np.argwhere(diff > ENTRY_TOL)
    if bad.size:
        where = ", ".join(
            f"{_entry(labels, i, j)} printed {printed[i, j]:.12g} vs {pipeline[i, j].real:.12g}" for i, j in bad
        )
        notes.append(f"entries differ at {where}")
    else:
        notes.append("all entries agree with the pipeline")
    if abs(trace - 1) > ENTRY_TOL:
        notes.append(f"printed trace is {trace:.12g} (deviation {trace - 1:+.3e})")
    for i, j in asym:
        notes.append(f"printed matrix is asymmetric at {_entry(labels, i, j)}: {printed[i, j]:.12g} vs {printed[j, i]:.12g}")

    if printed.shape[0] == 8:
        # read the printed rows as plain binary order, then compare in weight order
        lex = float(np.abs(pipeline - permute_to_weight_order(printed)).max())
        notes.append(f"max diff if the printed rows are read in plain binary order: {lex:.3e}")
    if tgt.parent is not None:
        parent = printed_matrix(tgt.parent, mu, nu)
        kept = [k for k, lab in enumerate("ABC") if lab != tgt.traced]
        # the printed parent is in weight order; undo that to trace it
        order = weight_order(3)
        as_binary = np.empty_like(parent)
        as_binary[np.ix_(order, order)] = parent
        readings = {
            "weight-order": partial_trace_matrix(as_binary, 3, kept),
            "plain binary": partial_trace_matrix(parent, 3, kept),
        }
        for name, red in readings.items():
            if np.abs(red - printed).max() <= ENTRY_TOL:
                notes.append(f"equals the partial trace of printed {tgt.parent} under its {name} reading")

    return DiscrepancyReport(
        target=target,
        max_abs_entry_diff=float(diff.max()),
        trace_of_printed_matrix=trace,
        symmetric=not asym.size,
        notes="; ".join(notes),
    )
