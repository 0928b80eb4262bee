"""Black-hole models, Kruskal mode amplitudes and qubit dressing.

A qubit held near the horizon is replaced by an (outside, inside) mode
pair::

    |0>  ->  mu |0>|0> + nu |1>|1>
    |1>  ->  |1>|0>

with ``mu**2 = 1/(1 + exp(-x))`` and ``nu**2 = 1/(1 + exp(x))``.  The
exponent ``x`` is ``omega / T`` for a Schwarzschild hole and
``8 pi (M - D) omega`` for a GHS dilaton hole.  Everything downstream
depends on the model only through ``(mu, nu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.special import expit

from .errors import ConfigurationError, ContractError, DomainError, LabelError, UnsupportedError
from .qstate import DensityOp, PureState, make_family, reduce_amplitudes

BAR = "bar"
DEFAULT_DRESSED = ("B", "C")
FLAT_PARTY = "A"
AMPLITUDE_TOL = 1e-12


@dataclass(frozen=True)
class BlackHoleModel:
    """Schwarzschild (mass or temperature) or GHS dilaton (mass + dilaton or charge).

    Use the :meth:`schwarzschild` and :meth:`ghs_dilaton` constructors.
    """

    kind: str
    mass: float | None = None
    temperature: float | None = None
    dilaton: float | None = None
    charge: float | None = None

    def __post_init__(self):
        def positive(name, value):
            if value is not None and not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")

        if self.kind == "schwarzschild":
            if (self.mass is None) == (self.temperature is None):
                raise ConfigurationError("Schwarzschild model takes exactly one of mass or temperature")
            if self.dilaton is not None or self.charge is not None:
                raise ConfigurationError("Schwarzschild model has no dilaton or charge")
            positive("mass", self.mass)
            positive("temperature", self.temperature)
        elif self.kind == "dilaton":
            if self.mass is None:
                raise ConfigurationError("dilaton model needs the mass")
            if (self.dilaton is None) == (self.charge is None):
                raise ConfigurationError("dilaton model takes exactly one of dilaton or charge")
            if self.temperature is not None:
                raise ConfigurationError("dilaton model is not parametrized by temperature")
            positive("mass", self.mass)
            if self.dilaton is not None and not (math.isfinite(self.dilaton) and self.dilaton >= 0):
                raise DomainError(f"dilaton must be finite and >= 0, got {self.dilaton!r}")
            if self.charge is not None and not math.isfinite(self.charge):
                raise DomainError(f"charge must be finite, got {self.charge!r}")
        else:
            raise ConfigurationError(f"unknown black-hole model {self.kind!r}")

    @classmethod
    def schwarzschild(cls, *, mass=None, temperature=None) -> "BlackHoleModel":
        return cls("schwarzschild", mass=_opt_float(mass), temperature=_opt_float(temperature))

    @classmethod
    def ghs_dilaton(cls, *, mass, dilaton=None, charge=None) -> "BlackHoleModel":
        return cls("dilaton", mass=_opt_float(mass), dilaton=_opt_float(dilaton), charge=_opt_float(charge))

    @property
    def dilaton_value(self) -> float:
        """D, derived as Q^2 / (2M) when the model was given a charge."""
        if self.kind != "dilaton":
            raise UnsupportedError("only dilaton models carry D")
        if self.dilaton is not None:
            return self.dilaton
        return self.charge ** 2 / (2 * self.mass)

    @property
    def unphysical(self) -> bool:
        """True for dilaton holes outside the D < M regime."""
        return self.kind == "dilaton" and self.dilaton_value >= self.mass

    def exponent(self, omega):
        """Boltzmann-like exponent x with mu^2 = 1/(1 + e^-x)."""
        omega = _check_omega(omega)
        if self.kind == "schwarzschild":
            return omega / hawking_temperature(self)
        return 8 * np.pi * (self.mass - self.dilaton_value) * omega

    def to_dict(self) -> dict:
        out = {"type": self.kind}
        for key in ("mass", "temperature", "dilaton", "charge"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BlackHoleModel":
        data = dict(data)
        kind = data.pop("type", None)
        extra = set(data) - {"mass", "temperature", "dilaton", "charge"}
        if extra:
            raise ConfigurationError(f"unexpected model fields {sorted(extra)}")
        if kind == "schwarzschild":
            return cls.schwarzschild(**data)
        if kind == "dilaton":
            if "mass" not in data:
                raise ConfigurationError("dilaton model needs the mass")
            return cls.ghs_dilaton(**data)
        raise ConfigurationError(f"unknown black-hole model {kind!r}")


def _opt_float(x):
    return None if x is None else float(x)


def _check_omega(omega):
    w = np.asarray(omega, dtype=float)
    if np.any(~np.isfinite(w)) or np.any(w < 0):
        raise DomainError(f"frequency must be finite and >= 0, got {omega!r}")
    return float(w) if w.ndim == 0 else w


def hawking_temperature(model: BlackHoleModel) -> float:
    """T = 1/(8 pi M) in natural units, or the temperature the model was built with."""
    if model.kind != "schwarzschild":
        raise UnsupportedError("Hawking temperature is only provided for Schwarzschild models")
    if model.temperature is not None:
        return model.temperature
    return 1.0 / (8 * np.pi * model.mass)


@dataclass(frozen=True)
class ModeAmplitudes:
    mu: float
    nu: float

    def __post_init__(self):
        if not (0.0 <= self.mu <= 1.0 and 0.0 <= self.nu <= 1.0):
            raise ContractError(f"mode amplitudes out of range: mu={self.mu}, nu={self.nu}")
        if abs(self.mu ** 2 + self.nu ** 2 - 1.0) > AMPLITUDE_TOL:
            raise ContractError(f"mu^2 + nu^2 = {self.mu ** 2 + self.nu ** 2!r}, expected 1")


def amplitudes_from_exponent(x):
    """(mu, nu) arrays from the exponent; saturates instead of overflowing."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(expit(x)), np.sqrt(expit(-x))


def mode_amplitudes(model: BlackHoleModel, omega: float) -> ModeAmplitudes:
    mu, nu = amplitudes_from_exponent(model.exponent(omega))
    return ModeAmplitudes(float(mu), float(nu))


# -- dressing ----------------------------------------------------------------

def dressing_map(mu, nu) -> np.ndarray:
    """Isometry (..., 4, 2) from one qubit onto its (out, in) mode pair."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    k = np.zeros(mu.shape + (4, 2), dtype=np.complex128)
    k[..., 0b00, 0] = mu
    k[..., 0b11, 0] = nu
    k[..., 0b10, 1] = 1.0
    return k


def dress_amplitudes(psi: np.ndarray, n: int, positions: Sequence[int], mu, nu) -> np.ndarray:
    """Dress the qubits at ``positions`` for a batch of (mu, nu).

    ``psi`` has shape (2**n,) and ``mu``/``nu`` share any batch shape; the
    result has shape batch + (2**(n + len(positions)),) with each partner
    mode inserted right after its qubit.
    """
    k = dressing_map(mu, nu)
    batch = k.shape[:-2]
    t = np.broadcast_to(np.asarray(psi, dtype=np.complex128).reshape((2,) * n), batch + (2,) * n)
    nb = len(batch)
    kb = k.reshape((-1, 4, 2))
    t = t.reshape((kb.shape[0],) + (2,) * n)
    for pos in sorted(positions, reverse=True):
        t = np.moveaxis(t, 1 + pos, -1)
        t = np.einsum("b...j,bkj->b...k", t, kb)
        t = np.moveaxis(t, -1, 1 + pos)
        t = t.reshape(t.shape[: 1 + pos] + (2, 2) + t.shape[2 + pos:])
    return t.reshape(batch + (-1,)) if nb else t.reshape(-1)


def dressed_labels(labels: Sequence[str], parties: Iterable[str]) -> tuple[str, ...]:
    parties = set(parties)
    out = []
    for lab in labels:
        out.append(lab)
        if lab in parties:
            out.append(lab + BAR)
    return tuple(out)


def _dressed_positions(labels: Sequence[str], parties: Iterable[str]) -> list[int]:
    parties = set(parties)
    unknown = parties - set(labels)
    if unknown:
        raise LabelError(f"cannot dress {sorted(unknown)}: not in register {tuple(labels)}")
    return [i for i, lab in enumerate(labels) if lab in parties]


def dress_state(s: PureState, parties: Iterable[str], amps: ModeAmplitudes) -> PureState:
    """Replace each qubit in ``parties`` by its (q, q + 'bar') mode pair."""
    parties = tuple(parties)
    positions = _dressed_positions(s.labels, parties)
    psi = dress_amplitudes(s.amplitudes, s.n_qubits, positions, amps.mu, amps.nu)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > AMPLITUDE_TOL:
        raise ContractError(f"dressing changed the norm to {norm!r}")
    return PureState(dressed_labels(s.labels, parties), psi / norm)


# -- scenarios ---------------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    family: str
    model: BlackHoleModel
    omega: float
    dressed_parties: tuple[str, ...] = field(default=DEFAULT_DRESSED)
    traced_party: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", self.family.lower())
        object.__setattr__(self, "dressed_parties", tuple(self.dressed_parties))
        _check_omega(self.omega)
        make_family(self.family)
        base = ("A", "B", "C")
        bad = set(self.dressed_parties) - set(base)
        if bad:
            raise LabelError(f"dressed parties {sorted(bad)} not in {base}")
        if self.traced_party is not None and self.traced_party not in base:
            raise LabelError(f"traced party {self.traced_party!r} not in {base}")
        # A sits in the flat region and is only ever discarded for GHZ
        if self.traced_party == FLAT_PARTY and self.family != "ghz":
            raise ConfigurationError(f"tracing out the flat-region party A is only supported for ghz, not {self.family}")

    @property
    def amplitudes(self) -> ModeAmplitudes:
        return mode_amplitudes(self.model, self.omega)

    def to_dict(self) -> dict:
        out = {
            "family": self.family,
            "model": self.model.to_dict(),
            "omega": self.omega,
            "dressed": list(self.dressed_parties),
        }
        if self.traced_party is not None:
            out["trace"] = self.traced_party
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            return cls(
                family=data["family"],
                model=BlackHoleModel.from_dict(data["model"]),
                omega=float(data["omega"]),
                dressed_parties=tuple(data.get("dressed", DEFAULT_DRESSED)),
                traced_party=data.get("trace"),
            )
        except KeyError as exc:
            raise ConfigurationError(f"scenario is missing field {exc}") from None


def reduced_matrices(family: str, mu, nu, dressed=DEFAULT_DRESSED, traced: str | None = None):
    """Batched core of :func:`build_reduced`.

    Returns ``(labels, matrices)`` where ``matrices`` has shape
    ``mu.shape + (d, d)``.  All partner modes are traced out, then
    ``traced`` if given.
    """
    base = make_family(family)
    positions = _dressed_positions(base.labels, dressed)
    psi = dress_amplitudes(base.amplitudes, base.n_qubits, positions, mu, nu)
    full = dressed_labels(base.labels, dressed)
    keep = [lab for lab in base.labels if lab != traced]
    kept = [full.index(lab) for lab in keep]
    return tuple(keep), reduce_amplitudes(psi, len(full), kept)


def build_reduced(sc: Scenario) -> DensityOp:
    amps = sc.amplitudes
    labels, rho = reduced_matrices(sc.family, amps.mu, amps.nu, sc.dressed_parties, sc.traced_party)
    return DensityOp(labels, rho)
