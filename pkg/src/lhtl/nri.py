"""Current fluctuation of the unit cell and the negative refractive index.

The variance of the cell current in a thermal Fock state is

    <(dj)^2> = c^2 * [2 n0^2 + 2 (n+1) n0 + 2 n + 1],   c^2 = hbar*omega / (2 L_l z0)

and the refractive index follows by solving that relation for ``-sqrt(eps*mu)``.
With ``E = exp(x)`` and ``x = hbar*omega/(k_B*T)`` both the unsimplified closed form
and the inversion of the variance reduce to

    n_r = -2 z0 Z_l dj2 (E - 1)^2 / (hbar omega^3 [(2n+1) E^2 - 2 n E + 1])

which is evaluated here after dividing through by ``E^2`` so that large ``x``
neither overflows nor cancels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .thermal import ThermalFockSpec, energy_ratio, thermal_photon_number
from .units import UnitSystem

__all__ = [
    "NriMethod",
    "CellContext",
    "FluctuationResult",
    "NriResult",
    "ConsistencyReport",
    "current_prefactor_sq",
    "constitutive_prefactor_sq",
    "fluctuation_bracket",
    "current_fluctuation",
    "nri_eq11",
    "nri_chain",
    "nri_zero_T_limit",
    "nri",
    "consistency_report",
    "LITERAL_X_MAX",
]

# the unsimplified form multiplies exp(x) by cosh(x); past this it overflows
LITERAL_X_MAX = 300.0


class NriMethod(str, enum.Enum):
    EQ11 = "EQ11"
    CHAIN = "CHAIN"


@dataclass(frozen=True)
class CellContext:
    """Geometry and line data entering the prefactor.

    Attributes:
        z0: cell length (m).
        z_char: characteristic impedance ``Z_l`` (Ohm).
        omega: angular frequency (rad/s).
        l_cell: ``L_l`` (H*m); only needed for :func:`current_prefactor_sq`.
    """

    z0: float
    z_char: float
    omega: float
    l_cell: Optional[float] = None

    def __post_init__(self):
        for name in ("z0", "z_char", "omega", "l_cell"):
            value = getattr(self, name)
            if value is None and name == "l_cell":
                continue
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class FluctuationResult:
    prefactor: float
    bracket: float
    variance: float
    x: float
    n0: float


@dataclass(frozen=True)
class NriResult:
    n_r: float
    x: float
    n0: float
    method: NriMethod


@dataclass(frozen=True)
class ConsistencyReport:
    eq11: float
    chain: float
    rel_diff: float


def current_prefactor_sq(ctx: CellContext, units: UnitSystem) -> float:
    """Squared current amplitude ``c^2 = hbar*omega/(2 L_l z0)`` of one photon in the cell."""
    if ctx.l_cell is None:
        raise DomainError("l_cell is required for the current prefactor")
    return units.hbar * ctx.omega / (2.0 * ctx.l_cell * ctx.z0)


def constitutive_prefactor_sq(
    ctx: CellContext, eps_eff: float, mu_eff: float, units: UnitSystem
) -> float:
    """The same prefactor written as ``hbar omega^3 sqrt(eps*mu) / (2 z0 Z_l)``.

    Equal to :func:`current_prefactor_sq` whenever eps, mu and Z_l come from
    the same ``(C_l, L_l, omega)``.
    """
    return (
        units.hbar * ctx.omega**3 * math.sqrt(eps_eff * mu_eff) / (2.0 * ctx.z0 * ctx.z_char)
    )


def fluctuation_bracket(n: int, n0: float) -> float:
    if n < 0 or n0 < 0 or math.isnan(n0):
        raise DomainError(f"need n >= 0 and n0 >= 0, got n={n!r}, n0={n0!r}")
    return 2.0 * n0 * n0 + 2.0 * (n + 1) * n0 + 2.0 * n + 1.0


def current_fluctuation(
    spec: ThermalFockSpec, ctx: CellContext, units: UnitSystem
) -> FluctuationResult:
    _check_same_omega(spec, ctx)
    x = energy_ratio(spec.omega, spec.temperature, units)
    n0 = thermal_photon_number(x)
    prefactor = current_prefactor_sq(ctx, units)
    bracket = fluctuation_bracket(spec.n, n0)
    return FluctuationResult(prefactor, bracket, prefactor * bracket, x, n0)


def _check_same_omega(spec: ThermalFockSpec, ctx: CellContext) -> None:
    if not math.isclose(spec.omega, ctx.omega, rel_tol=1e-12):
        raise DomainError(
            f"state omega {spec.omega!r} differs from cell omega {ctx.omega!r}"
        )


def _check_dj2(dj2: float) -> float:
    dj2 = float(dj2)
    if math.isnan(dj2) or dj2 < 0 or math.isinf(dj2):
        raise DomainError(f"dj2 must be finite and >= 0, got {dj2!r}")
    return dj2


def _scale(ctx: CellContext, units: UnitSystem) -> float:
    # 2 z0 Z_l / (hbar omega^3); dj2 is multiplied in last so n_r is exactly linear in it
    return 2.0 * ctx.z0 * ctx.z_char / (units.hbar * ctx.omega**3)


def _literal_ratio(x: float, n: int) -> float:
    e = math.exp(x)
    ch = math.cosh(x) - 1.0
    common = (e - 1.0) * ch
    return common / (common + 2.0 * n * e * ch + e - 1.0)


def _stable_ratio(x: float, n: int) -> float:
    one_minus = -math.expm1(-x)  # 1 - exp(-x)
    return one_minus * one_minus / (2.0 * n * one_minus + 1.0 + math.exp(-2.0 * x))


def nri_eq11(
    dj2: float,
    spec: ThermalFockSpec,
    ctx: CellContext,
    units: UnitSystem,
    literal: bool = False,
) -> NriResult:
    """Refractive index from the closed form in ``(n, T, omega, dj2)``.

    ``literal=True`` evaluates the unsimplified expression with ``exp`` and
    ``cosh`` (debugging aid, ``x <= 300`` only).
    """
    dj2 = _check_dj2(dj2)
    _check_same_omega(spec, ctx)
    if spec.temperature <= 0:
        raise DomainError("temperature must be > 0; use nri_zero_T_limit at T = 0")
    x = energy_ratio(spec.omega, spec.temperature, units)
    if literal:
        if x > LITERAL_X_MAX:
            raise DomainError(f"literal form limited to x <= {LITERAL_X_MAX}, got {x!r}")
        ratio = _literal_ratio(x, spec.n)
    else:
        ratio = _stable_ratio(x, spec.n)
    n_r = -dj2 * (_scale(ctx, units) * ratio) + 0.0  # no -0.0
    return NriResult(n_r, x, thermal_photon_number(x), NriMethod.EQ11)


def nri_chain(
    dj2: float, spec: ThermalFockSpec, ctx: CellContext, units: UnitSystem
) -> NriResult:
    """Refractive index by inverting the variance formula through ``n0(x)``. Allows ``T == 0``."""
    dj2 = _check_dj2(dj2)
    _check_same_omega(spec, ctx)
    x = energy_ratio(spec.omega, spec.temperature, units)
    n0 = thermal_photon_number(x)
    n_r = -dj2 * (_scale(ctx, units) / fluctuation_bracket(spec.n, n0)) + 0.0
    return NriResult(n_r, x, n0, NriMethod.CHAIN)


def nri_zero_T_limit(dj2: float, n: int, ctx: CellContext, units: UnitSystem) -> float:
    dj2 = _check_dj2(dj2)
    if int(n) != n or n < 0:
        raise DomainError(f"n must be an integer >= 0, got {n!r}")
    return -dj2 * (_scale(ctx, units) / (2.0 * n + 1.0)) + 0.0


def nri(dj2, spec, ctx, units, method=NriMethod.EQ11) -> NriResult:
    """Dispatch on ``method``; EQ11 at ``T == 0`` falls back to the zero-temperature limit."""
    if NriMethod(method) is NriMethod.CHAIN:
        return nri_chain(dj2, spec, ctx, units)
    if spec.temperature == 0:
        _check_same_omega(spec, ctx)
        return NriResult(
            nri_zero_T_limit(dj2, spec.n, ctx, units), math.inf, 0.0, NriMethod.EQ11
        )
    return nri_eq11(dj2, spec, ctx, units)


def consistency_report(
    dj2: float, spec: ThermalFockSpec, ctx: CellContext, units: UnitSystem
) -> ConsistencyReport:
    eq11 = nri_eq11(dj2, spec, ctx, units).n_r
    chain = nri_chain(dj2, spec, ctx, units).n_r
    rel = abs(eq11 - chain) / max(abs(eq11), 1e-300)
    return ConsistencyReport(eq11, chain, rel)
