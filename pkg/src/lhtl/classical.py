"""Classical per-cell quantities of the lossless series-C/shunt-L line.

All quantities follow from the cell capacitance ``C_l`` and inductance ``L_l``.
The line is left-handed: the phase constant and phase velocity are negative
while the group velocity is positive, and both effective constitutive
parameters are negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError

__all__ = [
    "LineParams",
    "ClassicalTlQuantities",
    "WaveSolution",
    "line_quantities",
    "cell_length",
    "wave_residual",
]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class LineParams:
    """Unit-cell element values.

    Attributes:
        c_cell: series capacitance ``C_l = C'_l * dz`` (F*m).
        l_cell: shunt inductance ``L_l = L'_l * dz`` (H*m).
        delta_z: discretization length, bookkeeping only (m).
    """

    c_cell: float
    l_cell: float
    delta_z: Optional[float] = None

    def __post_init__(self):
        _positive("c_cell", self.c_cell)
        _positive("l_cell", self.l_cell)
        if self.delta_z is not None:
            _positive("delta_z", self.delta_z)

    @classmethod
    def from_per_length(cls, c_per_length: float, l_per_length: float, delta_z: float):
        return cls(c_per_length * delta_z, l_per_length * delta_z, delta_z)


@dataclass(frozen=True)
class ClassicalTlQuantities:
    omega: float
    gamma: complex
    beta: float
    z_char: float
    v_phase: float
    v_group: float
    eps_eff: float
    mu_eff: float
    z_series: complex
    y_shunt: complex

    @property
    def refractive_index(self) -> float:
        """Classical index ``-sqrt(eps*mu)``; equals ``beta/omega``."""
        return -math.sqrt(self.eps_eff * self.mu_eff)


@dataclass(frozen=True)
class WaveSolution:
    amp_current: complex
    amp_voltage: complex
    grid: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size < 5:
            raise DomainError("wave grid needs at least 5 points")
        if not np.all(np.diff(grid) > 0):
            raise DomainError("wave grid must be strictly increasing")
        object.__setattr__(self, "grid", grid)


def line_quantities(p: LineParams, omega: float) -> ClassicalTlQuantities:
    """Evaluate the dispersion bundle of the unit cell at angular frequency ``omega``."""
    omega = _positive("omega", omega)
    c, l = p.c_cell, p.l_cell
    sqrt_lc = math.sqrt(c * l)
    beta = -1.0 / (omega * sqrt_lc)
    v_group = omega * omega * sqrt_lc
    return ClassicalTlQuantities(
        omega=omega,
        gamma=complex(0.0, beta),
        beta=beta,
        z_char=math.sqrt(l / c),
        v_phase=-v_group,
        v_group=v_group,
        eps_eff=-1.0 / (omega * omega * l),
        mu_eff=-1.0 / (omega * omega * c),
        z_series=1.0 / complex(0.0, omega * c),
        y_shunt=1.0 / complex(0.0, omega * l),
    )


def cell_length(m: int, omega: float, p: LineParams) -> float:
    """Unit length ``z0 = m * lambda`` with ``lambda = 2*pi/|beta|``."""
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")
    omega = _positive("omega", omega)
    wavelength = 2.0 * math.pi * omega * math.sqrt(p.c_cell * p.l_cell)
    return int(m) * wavelength


def _relative_residual(amp: complex, gamma: complex, z: np.ndarray) -> float:
    if amp == 0:
        return 0.0
    # j(z) = A exp(-i gamma z) + conj(A) exp(i gamma z)
    field = amp * np.exp(-1j * gamma * z) + np.conj(amp) * np.exp(1j * gamma * z)
    scale = np.max(np.abs(field))
    if scale == 0:
        return 0.0
    h = np.diff(z)
    h_left, h_right = h[:-1], h[1:]
    # non-uniform three-point second derivative; reduces to the central stencil on uniform grids
    d2 = 2.0 * (
        field[2:] / (h_right * (h_left + h_right))
        - field[1:-1] / (h_left * h_right)
        + field[:-2] / (h_left * (h_left + h_right))
    )
    residual = d2 + gamma * gamma * field[1:-1]
    return float(np.max(np.abs(residual)) / scale)


def wave_residual(q: ClassicalTlQuantities, w: WaveSolution) -> float:
    """Max-norm finite-difference residual of ``d2f/dz2 + gamma**2 f`` for the
    traveling-wave current and voltage, each relative to its own peak magnitude.

    The result is O(h**2) in the grid spacing.
    """
    z = w.grid
    return max(
        _relative_residual(complex(w.amp_current), q.gamma, z),
        _relative_residual(complex(w.amp_voltage), q.gamma, z),
    )
