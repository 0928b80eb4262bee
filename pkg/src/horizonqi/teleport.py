"""Teleportation fidelity from the Pauli correlation matrix.

For a two-qubit state with correlation matrix ``t[n, m] = Tr(rho s_n x s_m)``
the optimal fidelity is ``(1 + N/3) / 2`` where ``N`` is the sum of the
singular values of ``t``; the state beats the classical 2/3 iff ``N > 1``.
:func:`fully_entangled_fraction` is an independent numerical route to the
same number through ``f = (2F + 1) / 3``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .entanglement import _two_qubit
from .errors import ContractError
from .numkernel import hermitian_eig

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
# PAULI_PAIRS[n, m] = kron(PAULI[n], PAULI[m])
PAULI_PAIRS = np.einsum("nab,mcd->nmacbd", PAULI, PAULI).reshape(3, 3, 4, 4)

IMAG_TOL = 1e-10
RANGE_TOL = 1e-12


class CorrelationMatrix(NamedTuple):
    t: np.ndarray  # (..., 3, 3) real


class FidelityRecord(NamedTuple):
    n_value: float
    fidelity: float
    useful: bool
    u: np.ndarray  # eigenvalues of t^T t, descending


def correlation_matrix(rho) -> CorrelationMatrix:
    m = _two_qubit(rho)
    t = np.einsum("...ij,nmji->...nm", m, PAULI_PAIRS)
    if np.abs(t.imag).max(initial=0.0) > IMAG_TOL:
        raise ContractError("correlation traces have an imaginary part; input is not Hermitian")
    t = t.real
    if np.abs(t).max(initial=0.0) > 1 + RANGE_TOL:
        raise ContractError("correlation entries outside [-1, 1]")
    return CorrelationMatrix(t)


def singular_values(t: np.ndarray) -> np.ndarray:
    """Singular values of (a stack of) 3x3 real matrices, descending.

    Read off the symmetric dilation [[0, t], [t^T, 0]], whose top three
    eigenvalues are the singular values.  Taking square roots of the
    eigenvalues of t^T t instead would turn rounding noise of order 1e-16
    into errors of order 1e-8 for rank-deficient t.
    """
    dil = np.zeros(t.shape[:-2] + (6, 6))
    dil[..., :3, 3:] = t
    dil[..., 3:, :3] = np.swapaxes(t, -1, -2)
    return np.maximum(hermitian_eig(dil).eigenvalues[..., :3], 0.0)


def n_value(t: CorrelationMatrix | np.ndarray):
    """Sum of singular values of the correlation matrix."""
    t = t.t if isinstance(t, CorrelationMatrix) else np.asarray(t, dtype=float)
    n = singular_values(t).sum(axis=-1)
    return float(n) if n.ndim == 0 else n


def teleportation_fidelity(rho) -> FidelityRecord:
    t = correlation_matrix(rho).t
    sv = singular_values(t)
    u = sv ** 2
    n = sv.sum(axis=-1)
    f = 0.5 * (1 + n / 3)
    if n.ndim == 0:
        return FidelityRecord(float(n), float(f), bool(n > 1), u)
    return FidelityRecord(n, f, n > 1, u)


# -- fully entangled fraction oracle ----------------------------------------

def _zyz(alpha, beta, gamma) -> np.ndarray:
    """Rz(alpha) Ry(beta) Rz(gamma), broadcast over the angle arrays."""
    alpha, beta, gamma = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (alpha, beta, gamma)))
    ea = np.exp(-0.5j * alpha)
    eg = np.exp(-0.5j * gamma)
    cb, sb = np.cos(beta / 2), np.sin(beta / 2)
    u = np.empty(alpha.shape + (2, 2), dtype=np.complex128)
    u[..., 0, 0] = ea * cb * eg
    u[..., 0, 1] = -ea * sb * eg.conj()
    u[..., 1, 0] = ea.conj() * sb * eg
    u[..., 1, 1] = ea.conj() * cb * eg.conj()
    return u


def _overlaps(rho: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """<phi_U| rho |phi_U> for phi_U = (I x U)|Phi+>, one U per row of angles."""
    u = _zyz(angles[..., 0], angles[..., 1], angles[..., 2])
    # (I x U)(|00> + |11>)/sqrt2 has components U[b, a] at index 2a + b
    phi = np.swapaxes(u, -1, -2).reshape(u.shape[:-2] + (4,)) / np.sqrt(2)
    return np.einsum("...i,ij,...j->...", phi.conj(), rho, phi).real


def fully_entangled_fraction(rho, budget: int = 4000, seed: int = 0, iterations: int = 200) -> float:
    """Max overlap of rho with a maximally entangled state, estimated numerically.

    Samples ``budget`` Haar-random single-qubit unitaries (ZYZ angles with
    the Haar density sin(beta)/2), keeps the best, then runs coordinate
    descent on the three angles with step halving.
    """
    if budget < 1000:
        raise ContractError("fully_entangled_fraction needs budget >= 1000")
    m = _two_qubit(rho)
    if m.ndim != 2:
        raise ContractError("fully_entangled_fraction takes a single state")
    rng = np.random.default_rng(seed)
    angles = np.column_stack(
        [
            rng.uniform(0, 2 * np.pi, budget),
            np.arccos(1 - 2 * rng.uniform(0, 1, budget)),
            rng.uniform(0, 2 * np.pi, budget),
        ]
    )
    values = _overlaps(m, angles)
    best = angles[np.argmax(values)].copy()
    best_val = values.max()

    step = np.pi / 4
    for _ in range(iterations):
        improved = False
        for k in range(3):
            for sign in (1.0, -1.0):
                trial = best.copy()
                trial[k] += sign * step
                val = _overlaps(m, trial)
                if val > best_val:
                    best, best_val, improved = trial, val, True
                    break
        if not improved:
            step /= 2
    return float(best_val)
