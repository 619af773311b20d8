"""Thermal occupation and the thermal Bogoliubov parameter.

Two conventions relate the Bogoliubov angle ``theta`` to the mean thermal
photon number ``n0``:

* ``PAPER``: ``n0 = sinh(theta)``
* ``STANDARD``: ``n0 = sinh(theta)**2`` (the usual thermo-field-dynamics result)

Both are kept so the Fock-space oracle can evaluate either.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .units import UnitSystem

__all__ = [
    "ThetaConvention",
    "ThermalFockSpec",
    "BogoliubovParams",
    "energy_ratio",
    "thermal_photon_number",
    "theta_from_n0",
    "SERIES_SWITCHOVER",
]

# below this energy ratio n0 is evaluated from its Laurent expansion
SERIES_SWITCHOVER = 1e-8


class ThetaConvention(str, enum.Enum):
    PAPER = "PAPER"
    STANDARD = "STANDARD"


@dataclass(frozen=True)
class ThermalFockSpec:
    """Thermal Fock state ``|n, n_tilde>_T`` of a mode at ``omega`` in a bath at ``temperature``.

    ``n_tilde`` defaults to ``n``.
    """

    n: int
    temperature: float
    omega: float
    n_tilde: Optional[int] = None

    def __post_init__(self):
        if self.n_tilde is None:
            object.__setattr__(self, "n_tilde", self.n)
        for name in ("n", "n_tilde"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DomainError(f"{name} must be an integer >= 0, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not (self.temperature >= 0) or math.isnan(self.temperature):
            raise DomainError(f"temperature must be >= 0, got {self.temperature!r}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"omega must be finite and > 0, got {self.omega!r}")


@dataclass(frozen=True)
class BogoliubovParams:
    theta: float
    mu: float
    tau: float
    convention: ThetaConvention

    @classmethod
    def from_theta(cls, theta: float, convention=ThetaConvention.PAPER):
        if not (theta >= 0) or not math.isfinite(theta):
            raise DomainError(f"theta must be finite and >= 0, got {theta!r}")
        return cls(theta, math.cosh(theta), math.sinh(theta), ThetaConvention(convention))

    @property
    def n0(self) -> float:
        """Thermal photon number implied by ``theta`` under this convention."""
        if self.convention is ThetaConvention.PAPER:
            return self.tau
        return self.tau * self.tau


def energy_ratio(omega: float, temperature: float, units: UnitSystem) -> float:
    """``x = hbar*omega / (k_B*T)``; ``inf`` at ``T == 0``."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and > 0, got {omega!r}")
    if not (temperature >= 0) or math.isnan(temperature):
        raise DomainError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == 0:
        return math.inf
    return (units.hbar * omega) / (units.k_boltzmann * temperature)


def thermal_photon_number(x: float) -> float:
    """Bose-Einstein occupation ``1/(exp(x) - 1)``.

    Uses ``1/x - 1/2 + x/12`` for ``x < 1e-8`` and the ``exp(-x)`` form for
    ``x >= 1`` so neither end cancels or overflows.
    """
    if math.isnan(x) or x <= 0:
        raise DomainError(f"energy ratio must be > 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    if x < SERIES_SWITCHOVER:
        return 1.0 / x - 0.5 + x / 12.0
    if x >= 1.0:
        return math.exp(-x) / -math.expm1(-x)
    return 1.0 / math.expm1(x)


def theta_from_n0(n0: float, convention=ThetaConvention.PAPER) -> BogoliubovParams:
    if math.isnan(n0) or n0 < 0:
        raise DomainError(f"n0 must be >= 0, got {n0!r}")
    convention = ThetaConvention(convention)
    if convention is ThetaConvention.PAPER:
        theta = math.asinh(n0)
    else:
        theta = math.asinh(math.sqrt(n0))
    return BogoliubovParams.from_theta(theta, convention)
