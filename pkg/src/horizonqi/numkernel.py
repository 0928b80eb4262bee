"""Dense complex matrix helpers and a batched cyclic Jacobi eigensolver.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every
function that decomposes a matrix also accepts a stack of shape
``(..., n, n)`` and treats the leading axes as a batch, which is how the
sweep engine evaluates a whole parameter grid in one call.
"""

from __future__ import annotations

import contextlib
import dataclasses
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ContractError, NotPSDError, NumericError, ShapeError

__all__ = [
    "Tolerances",
    "tolerances",
    "override_tolerances",
    "as_matrix",
    "matmul",
    "kron",
    "dagger",
    "trace",
    "max_norm",
    "EigenResult",
    "hermitian_eig",
    "psd_sqrt",
]


@dataclasses.dataclass(frozen=True)
class Tolerances:
    hermitian: float = 1e-10        # admissible ||A - A^H|| (max norm)
    jacobi_offdiag: float = 1e-14   # stop when max |a_pq| <= this * ||A||
    jacobi_max_sweeps: int = 100
    psd_negative: float = 1e-10     # eigenvalues below -this are an error


_active = Tolerances()
_TINY = np.finfo(np.float64).tiny


def tolerances() -> Tolerances:
    """Return the tolerances currently in effect."""
    return _active


@contextlib.contextmanager
def override_tolerances(**changes) -> Iterator[Tolerances]:
    """Temporarily replace some tolerance fields::

        with override_tolerances(jacobi_offdiag=1e-12):
            ...
    """
    global _active
    previous = _active
    _active = dataclasses.replace(previous, **changes)
    try:
        yield _active
    finally:
        _active = previous


def as_matrix(a, *, square: bool = False) -> np.ndarray:
    """Coerce to a finite complex array with at least two dimensions."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim < 2:
        raise ShapeError(f"expected a matrix, got array of shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ContractError("matrix has non-finite entries")
    if square and m.shape[-1] != m.shape[-2]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape[-2:]}")
    return m


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[-1] != b.shape[-2]:
        raise ShapeError(f"cannot multiply {a.shape[-2:]} by {b.shape[-2:]}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product with block layout ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return np.swapaxes(as_matrix(a), -1, -2).conj()


def trace(a) -> complex | np.ndarray:
    m = as_matrix(a, square=True)
    t = np.trace(m, axis1=-2, axis2=-1)
    return complex(t) if t.ndim == 0 else t


def max_norm(a) -> float | np.ndarray:
    """Largest entry magnitude (over the last two axes)."""
    return np.abs(np.asarray(a)).max(axis=(-2, -1))


class EigenResult(NamedTuple):
    eigenvalues: np.ndarray   # (..., n), real, descending
    eigenvectors: np.ndarray  # (..., n, n), column i pairs with eigenvalue i


def hermitian_eig(a) -> EigenResult:
    """Eigen-decomposition of a Hermitian matrix (or stack) by cyclic Jacobi.

    Each sweep visits every pair ``p < q`` once and annihilates ``a[p, q]``
    with a complex Givens rotation.  A matrix stops being rotated as soon as
    its largest off-diagonal magnitude drops to ``jacobi_offdiag * ||A||``,
    so its result does not depend on what else is in the batch.

    Raises ``ContractError`` for non-Hermitian input and ``NumericError``
    when the sweep limit is reached.
    """
    tol = _active
    m = as_matrix(a, square=True)
    if np.max(np.abs(m - np.swapaxes(m, -1, -2).conj()), initial=0.0) > tol.hermitian:
        raise ContractError("hermitian_eig needs a Hermitian matrix")

    batch_shape, n = m.shape[:-2], m.shape[-1]
    # Work in (n, n, batch) layout so row and column slices are contiguous.
    A = np.moveaxis(m.reshape(-1, n, n), 0, -1).copy()
    A = 0.5 * (A + np.swapaxes(A, 0, 1).conj())
    idx = np.arange(n)
    A[idx, idx] = A[idx, idx].real
    V = np.zeros_like(A)
    V[idx, idx] = 1.0

    scale = np.abs(A).max(axis=(0, 1)) if A.size else np.zeros(A.shape[-1])
    off_mask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for sweep in range(tol.jacobi_max_sweeps + 1):
        off = np.abs(A[off_mask]).max(axis=0) if n > 1 else np.zeros(A.shape[-1])
        live = np.flatnonzero(off > tol.jacobi_offdiag * scale)
        if live.size == 0:
            break
        if sweep == tol.jacobi_max_sweeps:
            raise NumericError(
                f"Jacobi did not converge in {tol.jacobi_max_sweeps} sweeps"
            )
        a, v = A[:, :, live], V[:, :, live]
        for p, q in pairs:
            _rotate(a, v, p, q)
        A[:, :, live], V[:, :, live] = a, v

    evals = np.moveaxis(A[idx, idx].real, 0, -1)
    V = np.moveaxis(V, -1, 0)
    order = np.argsort(-evals, axis=-1, kind="stable")
    evals = np.take_along_axis(evals, order, axis=-1)
    V = np.take_along_axis(V, order[:, None, :], axis=-1)
    return EigenResult(evals.reshape(*batch_shape, n), V.reshape(*batch_shape, n, n))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] in place across the batch axis (last)."""
    apq = a[p, q]
    r = np.abs(apq)
    # subnormal entries would overflow the phase; drop them outright
    flush = (r > 0) & (r < _TINY)
    if flush.any():
        a[p, q] = np.where(flush, 0.0, a[p, q])
        a[q, p] = np.where(flush, 0.0, a[q, p])
        r = np.where(flush, 0.0, r)
    act = r > 0
    if not act.any():
        return
    r_safe = np.where(act, r, 1.0)
    ph = np.where(act, apq.conj() / r_safe, 1.0)
    app = a[p, p].real.copy()
    aqq = a[q, q].real.copy()
    diff = aqq - app
    sgn = np.where(diff < 0, -1.0, 1.0)
    denom = np.where(act, np.abs(diff) + np.hypot(diff, 2 * r), 1.0)
    t = np.where(act, sgn * 2 * r / denom, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # J = diag(1, ph) @ [[c, s], [-s, c]];  A <- J^H A J,  V <- V J
    j10, j11 = -s * ph, c * ph

    col_p, col_q = a[:, p].copy(), a[:, q]
    a[:, p] = col_p * c + col_q * j10
    a[:, q] = col_p * s + col_q * j11
    row_p, row_q = a[p].copy(), a[q]
    a[p] = row_p * c + row_q * j10.conj()
    a[q] = row_p * s + row_q * j11.conj()

    a[p, q] = np.where(act, 0.0, a[p, q])
    a[q, p] = np.where(act, 0.0, a[q, p])
    a[p, p] = np.where(act, app - t * r, app)
    a[q, q] = np.where(act, aqq + t * r, aqq)

    vp, vq = v[:, p].copy(), v[:, q]
    v[:, p] = vp * c + vq * j10
    v[:, q] = vp * s + vq * j11


def clamp_spectrum(evals: np.ndarray) -> np.ndarray:
    """Clamp rounding-level negative eigenvalues to 0; reject real negativity."""
    tol = _active
    if evals.size and evals.min() < -tol.psd_negative:
        raise NotPSDError(f"minimum eigenvalue {evals.min():.3e} below -{tol.psd_negative:g}")
    return np.maximum(evals, 0.0)


def psd_sqrt(a) -> np.ndarray:
    """Principal square root ``V diag(sqrt(lambda)) V^H`` of a PSD matrix (or stack)."""
    evals, vecs = hermitian_eig(a)
    roots = np.sqrt(clamp_spectrum(evals))
    return (vecs * roots[..., None, :]) @ np.swapaxes(vecs, -1, -2).conj()
