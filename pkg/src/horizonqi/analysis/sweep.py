"""Two-axis parameter sweeps over a scenario template, with CSV output.

A sweep evaluates every grid point in one batched pass (optionally split
into fixed-size chunks run on a thread pool).  Chunks are reassembled in
grid order, and the eigensolver treats each matrix independently, so the
output does not depend on the thread count.
"""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..entanglement import concurrence, one_tangle, residual_tangle
from ..errors import ConfigurationError, ContractError, DomainError
from ..horizon import Scenario, amplitudes_from_exponent, hawking_temperature, reduced_matrices
from ..teleport import teleportation_fidelity

AXIS_NAMES = ("omega", "temperature", "dilaton", "charge", "mass")
PAIR_MEASURES = ("concurrence", "n_value", "fidelity", "useful")
TANGLE_MEASURES = ("one_tangle", "residual_tangle")
MEASURES = ("concurrence", "one_tangle", "residual_tangle", "n_value", "fidelity", "useful")

MAX_POINTS = 10 ** 6
CHUNK = 2048
THREADS_ENV = "HORIZONQI_THREADS"
CSV_HEADER = "axis1,axis2,mu,nu,measure,value,unphysical"

# admissible ranges, with room for rounding
_RANGES = {
    "concurrence": (0.0, 1.0),
    "one_tangle": (0.0, 1.0),
    "residual_tangle": (-1.0, 1.0),
    "n_value": (0.0, 3.0),
    "fidelity": (0.5, 1.0),
}
_RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigurationError(f"unknown axis {self.name!r}; choose from {', '.join(AXIS_NAMES)}")
        for v in (self.start, self.stop, self.step):
            if not math.isfinite(v):
                raise ConfigurationError(f"axis {self.name}: bounds and step must be finite")
        if self.step <= 0:
            raise ConfigurationError(f"axis {self.name}: step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise ConfigurationError(f"axis {self.name}: start {self.start} exceeds stop {self.stop}")
        if self.count > MAX_POINTS:
            raise ConfigurationError(f"axis {self.name}: {self.count} points exceeds {MAX_POINTS}")

    @classmethod
    def spanning(cls, name: str, start: float, stop: float, points: int) -> "Axis":
        """Axis with ``points`` evenly spaced values from start to stop inclusive."""
        if points < 2:
            raise ConfigurationError("an axis needs at least two points to span a range")
        return cls(name, float(start), float(stop), (stop - start) / (points - 1))

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """From ``name:start:stop:step``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigurationError(f"axis must look like name:start:stop:step, got {text!r}")
        try:
            start, stop, step = (float(p) for p in parts[1:])
        except ValueError:
            raise ConfigurationError(f"axis bounds must be numbers, got {text!r}") from None
        return cls(parts[0], start, stop, step)

    @property
    def count(self) -> int:
        return int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1

    def values(self) -> np.ndarray:
        v = self.start + self.step * np.arange(self.count)
        # land exactly on stop when the step divides the range
        if abs(v[-1] - self.stop) <= 1e-9 * self.step:
            v[-1] = self.stop
        return v


@dataclass(frozen=True)
class SweepGrid:
    axis1: Axis
    axis2: Axis

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise ConfigurationError(f"both axes sweep {self.axis1.name}")
        if self.size > MAX_POINTS:
            raise ConfigurationError(f"grid has {self.size} points, limit is {MAX_POINTS}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.axis1.count, self.axis2.count

    @property
    def size(self) -> int:
        return self.axis1.count * self.axis2.count

    def mesh(self):
        """Flattened (axis1, axis2) values, axis1 outer."""
        a1, a2 = np.meshgrid(self.axis1.values(), self.axis2.values(), indexing="ij")
        return a1.ravel(), a2.ravel()


@dataclass(frozen=True)
class MeasureRecord:
    axis1: float
    axis2: float
    mu: float
    nu: float
    measures: dict
    unphysical: bool


def _exponents(template: Scenario, grid: SweepGrid):
    """Per-point exponent x and unphysical flag for the grid."""
    model = template.model
    a1, a2 = grid.mesh()
    vals = {grid.axis1.name: a1, grid.axis2.name: a2}
    names = set(vals)
    shape = a1.shape

    omega = np.broadcast_to(np.asarray(vals.get("omega", template.omega), dtype=float), shape)
    if np.any(omega < 0):
        raise DomainError("frequency axis must stay >= 0")

    if model.kind == "schwarzschild":
        wrong = names & {"dilaton", "charge"}
        if wrong:
            raise ConfigurationError(f"axis {sorted(wrong)[0]} does not apply to a Schwarzschild model")
        if {"temperature", "mass"} <= names:
            raise ConfigurationError("temperature and mass cannot both be swept; one fixes the other")
        if "temperature" in vals:
            temp = vals["temperature"]
        elif "mass" in vals:
            if np.any(vals["mass"] <= 0):
                raise DomainError("mass axis must stay > 0")
            temp = 1.0 / (8 * np.pi * vals["mass"])
        else:
            temp = np.full(shape, hawking_temperature(model))
        if np.any(temp <= 0):
            raise DomainError("temperature axis must stay > 0")
        return omega / temp, np.zeros(shape, dtype=bool)

    if "temperature" in names:
        raise ConfigurationError("axis temperature does not apply to a dilaton model")
    if {"dilaton", "charge"} <= names:
        raise ConfigurationError("dilaton and charge cannot both be swept; one fixes the other")
    mass = np.broadcast_to(np.asarray(vals.get("mass", model.mass), dtype=float), shape)
    if np.any(mass <= 0):
        raise DomainError("mass axis must stay > 0")
    if "dilaton" in vals:
        d = vals["dilaton"]
    elif "charge" in vals:
        d = vals["charge"] ** 2 / (2 * mass)
    elif model.dilaton is not None:
        d = np.full(shape, model.dilaton)
    else:
        d = model.charge ** 2 / (2 * mass)
    if np.any(d < 0):
        raise DomainError("dilaton axis must stay >= 0")
    return 8 * np.pi * (mass - d) * omega, d >= mass


def _check_range(name: str, values: np.ndarray):
    lo, hi = _RANGES[name]
    if values.size and (values.min() < lo - _RANGE_SLACK or values.max() > hi + _RANGE_SLACK):
        raise ContractError(f"{name} left its range [{lo}, {hi}]: [{values.min()}, {values.max()}]")


def evaluate_measures(template: Scenario, mu: np.ndarray, nu: np.ndarray, measures: Sequence[str]) -> dict:
    """Measure arrays for a flat batch of (mu, nu) under the template's family and dressing."""
    out = {}
    fam, dressed = template.family, template.dressed_parties
    if any(m in PAIR_MEASURES for m in measures):
        _, rho2 = reduced_matrices(fam, mu, nu, dressed, template.traced_party)
        if "concurrence" in measures:
            out["concurrence"] = np.atleast_1d(concurrence(rho2))
        if {"n_value", "fidelity", "useful"} & set(measures):
            rec = teleportation_fidelity(rho2)
            out["n_value"] = np.atleast_1d(rec.n_value)
            out["fidelity"] = np.atleast_1d(rec.fidelity)
            out["useful"] = np.atleast_1d(rec.useful)
    if any(m in TANGLE_MEASURES for m in measures):
        _, rho3 = reduced_matrices(fam, mu, nu, dressed, None)
        if "residual_tangle" in measures:
            br = residual_tangle(rho3, "A")
            out["one_tangle"] = np.atleast_1d(br.one_tangle)
            out["residual_tangle"] = np.atleast_1d(br.residual)
        else:
            out["one_tangle"] = np.atleast_1d(one_tangle(rho3, "A"))
    for name, values in out.items():
        if name in _RANGES:
            _check_range(name, values)
    return {m: out[m] for m in measures}


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be >= 1, got {n}")
    return n


def _normalize_measures(measures: Iterable[str], template: Scenario) -> tuple[str, ...]:
    requested = set(measures)
    unknown = requested - set(MEASURES)
    if unknown:
        raise ConfigurationError(f"unknown measures {sorted(unknown)}; choose from {', '.join(MEASURES)}")
    if not requested:
        raise ConfigurationError("no measures requested")
    if requested & set(PAIR_MEASURES) and template.traced_party is None:
        raise ConfigurationError("pair measures need a traced party in the scenario template")
    return tuple(m for m in MEASURES if m in requested)


class SweepResult:
    """Column-oriented sweep output; iterate for :class:`MeasureRecord` rows."""

    def __init__(self, grid, axis1, axis2, mu, nu, values, unphysical):
        self.grid = grid
        self.axis1 = axis1
        self.axis2 = axis2
        self.mu = mu
        self.nu = nu
        self.values = values  # measure name -> (points,) array
        self.unphysical = unphysical

    @property
    def measures(self) -> tuple[str, ...]:
        return tuple(self.values)

    def __len__(self) -> int:
        return self.mu.size

    def __iter__(self) -> Iterator[MeasureRecord]:
        for i in range(len(self)):
            yield self.record(i)

    def record(self, i: int) -> MeasureRecord:
        ms = {}
        for name, v in self.values.items():
            ms[name] = bool(v[i]) if name == "useful" else float(v[i])
        return MeasureRecord(
            float(self.axis1[i]), float(self.axis2[i]), float(self.mu[i]), float(self.nu[i]), ms, bool(self.unphysical[i])
        )

    def as_grid(self, measure: str) -> np.ndarray:
        """Measure values reshaped to (axis1 count, axis2 count)."""
        return np.asarray(self.values[measure]).reshape(self.grid.shape)

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_csv(self, buf)
        return buf.getvalue()


def run_sweep(template: Scenario, grid: SweepGrid, measures: Iterable[str], threads: int | None = None) -> SweepResult:
    """Evaluate ``measures`` at every grid point; rows come out axis1-major."""
    names = _normalize_measures(measures, template)
    x, unphysical = _exponents(template, grid)
    mu, nu = amplitudes_from_exponent(x)
    a1, a2 = grid.mesh()

    starts = range(0, mu.size, CHUNK)
    threads = _thread_count() if threads is None else threads

    def work(s):
        return evaluate_measures(template, mu[s:s + CHUNK], nu[s:s + CHUNK], names)

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    values = {m: np.concatenate([p[m] for p in parts]) for m in names}
    return SweepResult(grid, a1, a2, mu, nu, values, unphysical)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def write_csv(result: SweepResult, fh) -> None:
    """One row per (grid point, measure); LF line endings; 9 significant digits."""
    fh.write(CSV_HEADER + "\n")
    cols = {m: [_fmt(float(v)) for v in result.values[m]] for m in result.measures}
    a1 = [_fmt(v) for v in result.axis1]
    a2 = [_fmt(v) for v in result.axis2]
    mu = [_fmt(v) for v in result.mu]
    nu = [_fmt(v) for v in result.nu]
    flags = ["true" if f else "false" for f in result.unphysical]
    lines = []
    for i in range(len(result)):
        prefix = f"{a1[i]},{a2[i]},{mu[i]},{nu[i]},"
        for m in result.measures:
            lines.append(f"{prefix}{m},{cols[m][i]},{flags[i]}\n")
    fh.write("".join(lines))


def save_csv(result: SweepResult, path) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            write_csv(result, fh)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write sweep CSV: {exc.strerror}", str(path)) from exc
    return path
