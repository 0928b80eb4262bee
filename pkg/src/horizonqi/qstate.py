"""Labeled multi-qubit pure states and density operators.

Basis convention: the first label is the most significant bit, so the
amplitude of ``|b_0 b_1 ... b_{n-1}>`` lives at index ``int("b_0...b_{n-1}", 2)``.
This is the ordering produced by ``numpy.kron`` of single-qubit factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractError, LabelError, ShapeError
from .numkernel import as_matrix, hermitian_eig

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

STANDARD_LABELS = ("A", "B", "Bbar", "C", "Cbar")


def _check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise ShapeError("a register needs at least one qubit")
    if len(set(labels)) != len(labels):
        raise LabelError(f"duplicate qubit labels in {labels}")
    return labels


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PureState:
    labels: tuple[str, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        labels = _check_labels(self.labels)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2 ** len(labels),):
            raise ShapeError(f"{len(labels)} qubits need {2 ** len(labels)} amplitudes, got {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ContractError("amplitudes must be finite")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > NORM_TOL:
            raise ContractError(f"state norm^2 is {norm!r}, expected 1")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def amplitude(self, bits: str) -> complex:
        """Amplitude of a computational basis ket given as a bit string, e.g. ``"010"``."""
        if len(bits) != self.n_qubits or set(bits) - {"0", "1"}:
            raise ShapeError(f"bit string {bits!r} does not fit {self.labels}")
        return complex(self.amplitudes[int(bits, 2)])


@dataclass(frozen=True)
class DensityOp:
    labels: tuple[str, ...]
    matrix: np.ndarray

    def __post_init__(self):
        labels = _check_labels(self.labels)
        m = as_matrix(self.matrix, square=True)
        d = 2 ** len(labels)
        if m.shape != (d, d):
            raise ShapeError(f"{len(labels)} qubits need a {d}x{d} matrix, got {m.shape}")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ContractError("density operator is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ContractError(f"density operator has trace {tr!r}")
        lowest = hermitian_eig(m).eigenvalues[-1]
        if lowest < -PSD_TOL:
            raise ContractError(f"density operator has eigenvalue {lowest:.3e}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def _basis_state(labels, terms: dict[str, complex]) -> PureState:
    amps = np.zeros(2 ** len(labels), dtype=np.complex128)
    for bits, amp in terms.items():
        amps[int(bits, 2)] = amp
    return PureState(tuple(labels), amps)


def make_ghz() -> PureState:
    """(|000> + |111>)/sqrt(2) on A, B, C."""
    s = 1 / np.sqrt(2)
    return _basis_state("ABC", {"000": s, "111": s})


def make_w() -> PureState:
    """(|100> + |010> + |001>)/sqrt(3) on A, B, C."""
    s = 1 / np.sqrt(3)
    return _basis_state("ABC", {"100": s, "010": s, "001": s})


def make_w1() -> PureState:
    """Non-symmetric W-class state (|100> + |010> + sqrt(2)|001>)/2."""
    return _basis_state("ABC", {"100": 0.5, "010": 0.5, "001": np.sqrt(2) / 2})


FAMILIES = {"ghz": make_ghz, "w": make_w, "w1": make_w1}


def make_family(name: str) -> PureState:
    try:
        return FAMILIES[name.lower()]()
    except KeyError:
        raise ContractError(f"unknown state family {name!r}; choose from {sorted(FAMILIES)}") from None


def to_density(s: PureState) -> DensityOp:
    return DensityOp(s.labels, np.outer(s.amplitudes, s.amplitudes.conj()))


def _positions(labels: tuple[str, ...], keep: Iterable[str]) -> list[int]:
    keep = set(keep)
    unknown = keep - set(labels)
    if unknown:
        raise LabelError(f"labels {sorted(unknown)} not in register {labels}")
    if not keep:
        raise ShapeError("must keep at least one qubit")
    return [i for i, lab in enumerate(labels) if lab in keep]


def split_index_table(n: int, kept: Sequence[int]) -> np.ndarray:
    """Full-register index for every (kept-index, traced-index) combination.

    ``table[i, t]`` is the basis index whose kept bits spell ``i`` and whose
    traced bits spell ``t``, both read most-significant-first in register
    order.
    """
    kept = list(kept)
    traced = [k for k in range(n) if k not in kept]
    ki = np.arange(2 ** len(kept))
    ti = np.arange(2 ** len(traced))
    full = np.zeros((ki.size, ti.size), dtype=np.int64)
    for j, pos in enumerate(kept):
        bit = (ki >> (len(kept) - 1 - j)) & 1
        full += (bit << (n - 1 - pos))[:, None]
    for j, pos in enumerate(traced):
        bit = (ti >> (len(traced) - 1 - j)) & 1
        full += (bit << (n - 1 - pos))[None, :]
    return full


def partial_trace_matrix(rho: np.ndarray, n: int, kept: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not in ``kept`` from a (stack of) 2^n x 2^n matrices."""
    table = split_index_table(n, kept)
    return rho[..., table[:, None, :], table[None, :, :]].sum(axis=-1)


def reduce_amplitudes(psi: np.ndarray, n: int, kept: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a (stack of) pure amplitude vectors."""
    table = split_index_table(n, kept)
    block = psi[..., table]
    return block @ np.swapaxes(block, -1, -2).conj()


def partial_trace(rho: DensityOp, keep: Iterable[str]) -> DensityOp:
    """Reduced operator on ``keep``, labels kept in their original relative order."""
    kept = _positions(rho.labels, keep)
    reduced = partial_trace_matrix(rho.matrix, rho.n_qubits, kept)
    return DensityOp(tuple(rho.labels[k] for k in kept), reduced)


def weight_order(n: int = 3) -> np.ndarray:
    """Lexicographic indices sorted by Hamming weight, ties lexicographic.

    For three qubits: 000, 001, 010, 100, 011, 101, 110, 111.
    """
    idx = np.arange(2 ** n)
    weights = np.array([bin(i).count("1") for i in idx])
    return np.lexsort((idx, weights))


def permute_to_weight_order(rho: DensityOp | np.ndarray) -> np.ndarray:
    """Re-express a three-qubit operator in the Hamming-weight basis order."""
    m = rho.matrix if isinstance(rho, DensityOp) else as_matrix(rho, square=True)
    if m.shape[-2:] != (8, 8):
        raise ShapeError(f"weight ordering is defined for three qubits, got {m.shape[-2:]}")
    order = weight_order(3)
    return m[..., order[:, None], order[None, :]]


# -- JSON -------------------------------------------------------------------

def _pairs(values: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in np.ravel(values)]


def state_to_dict(state: PureState | DensityOp) -> dict:
    if isinstance(state, PureState):
        return {"labels": list(state.labels), "kind": "pure", "amplitudes": _pairs(state.amplitudes)}
    return {"labels": list(state.labels), "kind": "density", "matrix": _pairs(state.matrix)}


def state_from_dict(data: dict) -> PureState | DensityOp:
    try:
        labels = tuple(data["labels"])
        kind = data["kind"]
        key = "amplitudes" if kind == "pure" else "matrix"
        values = np.array([complex(re, im) for re, im in data[key]], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractError(f"malformed state JSON: {exc}") from None
    if kind == "pure":
        return PureState(labels, values)
    if kind == "density":
        d = 2 ** len(labels)
        if values.size != d * d:
            raise ShapeError(f"matrix for {len(labels)} qubits needs {d * d} entries, got {values.size}")
        return DensityOp(labels, values.reshape(d, d))
    raise ContractError(f"unknown state kind {kind!r}")


def dumps_state(state: PureState | DensityOp) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(state_to_dict(state), indent=1)


def loads_state(text: str) -> PureState | DensityOp:
    return state_from_dict(json.loads(text))
