"""Physical constants and the two supported unit systems.

``SI`` carries the CODATA 2018 values of the reduced Planck constant and the
Boltzmann constant. ``NATURAL`` sets both to one, so the energy ratio
``hbar*omega/(k_B*T)`` collapses to ``omega/T``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "UnitKind",
    "UnitSystem",
    "SI",
    "NATURAL",
    "FrequencyConvention",
    "FrequencySpec",
    "to_angular",
    "unit_system",
]


class UnitKind(str, enum.Enum):
    SI = "SI"
    NATURAL = "NATURAL"


@dataclass(frozen=True)
class UnitSystem:
    kind: UnitKind
    hbar: float
    k_boltzmann: float

    def __post_init__(self):
        if not (self.hbar > 0 and self.k_boltzmann > 0):
            raise DomainError("hbar and k_boltzmann must be positive")


SI = UnitSystem(UnitKind.SI, hbar=1.054571817e-34, k_boltzmann=1.380649e-23)
NATURAL = UnitSystem(UnitKind.NATURAL, hbar=1.0, k_boltzmann=1.0)


def unit_system(name: str | UnitKind) -> UnitSystem:
    """Look up a unit system by name (case-insensitive)."""
    try:
        kind = UnitKind(str(getattr(name, "value", name)).upper())
    except ValueError:
        raise DomainError(f"unknown unit system {name!r}") from None
    return SI if kind is UnitKind.SI else NATURAL


class FrequencyConvention(str, enum.Enum):
    ANGULAR = "ANGULAR"  # rad/s
    CYCLIC = "CYCLIC"  # Hz


@dataclass(frozen=True)
class FrequencySpec:
    value: float
    convention: FrequencyConvention = FrequencyConvention.ANGULAR


def to_angular(f: FrequencySpec) -> float:
    """Return the angular frequency in rad/s.

    Raises:
        DomainError: if the value is negative or not finite.
    """
    value = float(f.value)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"frequency must be finite and >= 0, got {f.value!r}")
    if FrequencyConvention(f.convention) is FrequencyConvention.CYCLIC:
        return 2.0 * math.pi * value
    return value
