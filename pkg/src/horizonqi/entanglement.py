"""Wootters concurrence, one-tangle and residual (three-way) tangle.

All two-qubit functions accept a :class:`~horizonqi.qstate.DensityOp` or a
raw array of shape ``(..., 4, 4)``; arrays are treated as a batch.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import LabelError, ShapeError
from .numkernel import hermitian_eig, psd_sqrt
from .qstate import DensityOp, partial_trace_matrix

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)

# entries an X-shaped 4x4 matrix may populate
X_PATTERN = np.eye(4, dtype=bool) | np.eye(4, dtype=bool)[::-1]


def _two_qubit(rho) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityOp) else np.asarray(rho, dtype=np.complex128)
    if m.shape[-2:] != (4, 4):
        raise ShapeError(f"expected a two-qubit (4x4) operator, got {m.shape[-2:]}")
    return m


def spin_flip(rho) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y), in the basis of rho."""
    return YY @ _two_qubit(rho).conj() @ YY


class WoottersSpectrum(NamedTuple):
    sqrt_eigs: np.ndarray  # (..., 4) descending, >= 0

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of rho @ spin_flip(rho)."""
        return self.sqrt_eigs ** 2


def wootters_spectrum(rho) -> WoottersSpectrum:
    """Square roots of the eigenvalues of rho @ rho_tilde, descending.

    rho @ rho_tilde has the spectrum of the Hermitian sqrt(rho) rho_tilde
    sqrt(rho) = R R^H with R = sqrt(rho) sqrt(rho_tilde).  The square roots
    wanted here are the singular values of R, which are read off the
    Hermitian dilation [[0, R], [R^H, 0]] so that nearly-zero values keep
    absolute (not square-root) accuracy.
    """
    m = _two_qubit(rho)
    root = psd_sqrt(m)
    r = root @ (YY @ root.conj() @ YY)
    dil = np.zeros(m.shape[:-2] + (8, 8), dtype=np.complex128)
    dil[..., :4, 4:] = r
    dil[..., 4:, :4] = np.swapaxes(r, -1, -2).conj()
    sv = hermitian_eig(dil).eigenvalues[..., :4]
    return WoottersSpectrum(np.maximum(sv, 0.0))


def concurrence(rho):
    """max(0, s1 - s2 - s3 - s4) over the Wootters spectrum."""
    s = wootters_spectrum(rho).sqrt_eigs
    c = np.maximum(0.0, s[..., 0] - s[..., 1] - s[..., 2] - s[..., 3])
    return float(c) if c.ndim == 0 else c


def is_x_state(rho, atol: float = 0.0):
    """True where every entry off the diagonal and anti-diagonal is <= atol."""
    m = _two_qubit(rho)
    return np.all(np.abs(m[..., ~X_PATTERN]) <= atol, axis=-1)


def concurrence_x_state(rho):
    """Closed form for X-shaped states; a cross-check, not the primary route."""
    m = _two_qubit(rho)
    d = m[..., np.arange(4), np.arange(4)].real.clip(min=0)
    a = np.abs(m[..., 0, 3]) - np.sqrt(d[..., 1] * d[..., 2])
    b = np.abs(m[..., 1, 2]) - np.sqrt(d[..., 0] * d[..., 3])
    c = 2 * np.maximum(0.0, np.maximum(a, b))
    return float(c) if c.ndim == 0 else c


def pure_state_concurrence(psi):
    """2 |a d - b c| for amplitudes (a, b, c, d) of a two-qubit pure state."""
    psi = np.asarray(psi)
    return 2 * np.abs(psi[..., 0] * psi[..., 3] - psi[..., 1] * psi[..., 2])


# -- tangle -----------------------------------------------------------------

def _three_qubit(rho3):
    if isinstance(rho3, DensityOp):
        if rho3.n_qubits != 3:
            raise ShapeError(f"expected three qubits, got {rho3.n_qubits}")
        return rho3.matrix, rho3.labels
    m = np.asarray(rho3, dtype=np.complex128)
    if m.shape[-2:] != (8, 8):
        raise ShapeError(f"expected an 8x8 operator, got {m.shape[-2:]}")
    return m, ("A", "B", "C")


def _pivot_index(labels, pivot) -> int:
    if isinstance(pivot, int):
        return pivot
    if pivot not in labels:
        raise LabelError(f"pivot {pivot!r} not in {labels}")
    return labels.index(pivot)


def one_tangle(rho3, pivot="A"):
    """4 det(rho_pivot).

    Equals C^2 of pivot versus the rest for pure states; for mixed
    three-qubit states it is used as a surrogate for that term.
    """
    m, labels = _three_qubit(rho3)
    single = partial_trace_matrix(m, 3, [_pivot_index(labels, pivot)])
    det = single[..., 0, 0] * single[..., 1, 1] - single[..., 0, 1] * single[..., 1, 0]
    t = 4 * det.real
    return float(t) if t.ndim == 0 else t


class TangleBreakdown(NamedTuple):
    """Residual tangle and its parts.

    ``c2_ab`` and ``c2_ac`` are the squared concurrences of the pivot with
    the other two qubits in register order (B and C when the pivot is A).
    """

    one_tangle: float
    c2_ab: float
    c2_ac: float
    residual: float


def residual_tangle(rho3, pivot="A") -> TangleBreakdown:
    """one_tangle - C^2(pivot, second) - C^2(pivot, third); reported unclamped."""
    m, labels = _three_qubit(rho3)
    p = _pivot_index(labels, pivot)
    others = [k for k in range(3) if k != p]
    tau1 = one_tangle(m, p)
    c_first = concurrence(partial_trace_matrix(m, 3, sorted([p, others[0]])))
    c_second = concurrence(partial_trace_matrix(m, 3, sorted([p, others[1]])))
    c2a, c2b = np.square(c_first), np.square(c_second)
    return TangleBreakdown(tau1, c2a, c2b, tau1 - c2a - c2b)
