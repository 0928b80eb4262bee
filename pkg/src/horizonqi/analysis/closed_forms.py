"""Published closed-form expressions, evaluated verbatim for comparison.

These are diff targets only.  Nothing in the pipeline calls them.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError

NORMALIZATION_TOL = 1e-9


def _normalized(mu, nu):
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if np.any(np.abs(mu ** 2 + nu ** 2 - 1) > NORMALIZATION_TOL):
        raise ContractError("closed forms assume mu^2 + nu^2 = 1")
    return mu, nu


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def closed_form_fidelity_w(mu, nu):
    """1/2 + (mu^4 + nu^2)/18 + 2 (mu^3 + mu nu^2)/9, as printed for the W pair."""
    mu, nu = _normalized(mu, nu)
    return _out(0.5 + (mu ** 4 + nu ** 2) / 18 + 2 * (mu ** 3 + mu * nu ** 2) / 9)


def closed_form_concurrence_w(mu, nu):
    """sqrt(f1) - sqrt(f2) - sqrt(f3) - sqrt(f4) with the printed f's, clamped at 0."""
    mu, nu = _normalized(mu, nu)
    s = mu ** 2 + nu ** 2
    root = np.sqrt(s * (nu ** 4 + s))
    f1 = (nu ** 4 + 2 * s + 2 * root) * s * mu ** 2 / 9
    f2 = (nu ** 4 + 2 * s - 2 * root) * s * mu ** 2 / 9
    f3 = mu ** 2 * nu ** 2 * s / 9
    # f2 is a difference of nearly equal terms and can dip below 0 by rounding
    c = np.sqrt(f1) - np.sqrt(np.clip(f2, 0, None)) - 2 * np.sqrt(f3)
    return _out(np.maximum(c, 0.0))


def closed_form_tangle_ghz(mu, nu):
    """mu^2 + nu^2; deliberately not normalized so the bare formula can be probed."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    return _out(mu ** 2 + nu ** 2)
