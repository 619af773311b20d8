"""Truncated two-mode Fock-space oracle for the thermal current variance.

Basis index of ``|n_a, n_tilde>`` is ``n_a * D + n_tilde``: the physical mode
varies slowest. The thermal unitary is ``exp(K)`` with
``K = theta * (a^dag at^dag - a at)``, which preserves ``n_a - n_tilde``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError
from .expm import matrix_exponential
from .nri import fluctuation_bracket
from .thermal import (
    BogoliubovParams,
    ThermalFockSpec,
    ThetaConvention,
    energy_ratio,
    thermal_photon_number,
    theta_from_n0,
)
from .units import UnitSystem

__all__ = [
    "Slot",
    "TruncatedTwoModeSpace",
    "OracleReport",
    "annihilation_matrix",
    "embed",
    "quadrature_matrices",
    "thermal_generator",
    "thermal_fock_state",
    "current_operator",
    "current_variance_oracle",
    "current_mean_oracle",
    "leakage",
    "adaptive_thermal_state",
    "oracle_at_theta",
    "oracle_vs_paper",
    "bogoliubov_bracket",
    "dump_json",
    "DEFAULT_DIM_CAP",
]

DEFAULT_DIM_CAP = 64
_DIM_MARGIN = 16
_DIM_STEP = 8


class Slot(str, enum.Enum):
    A_MODE = "A_MODE"
    TILDE_MODE = "TILDE_MODE"


@dataclass(frozen=True)
class TruncatedTwoModeSpace:
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"truncation dimension must be an integer >= 2, got {self.dim!r}")

    @property
    def total_dim(self) -> int:
        return self.dim * self.dim

    def index(self, n_a: int, n_tilde: int) -> int:
        if not (0 <= n_a < self.dim and 0 <= n_tilde < self.dim):
            raise DomainError(f"occupation ({n_a}, {n_tilde}) outside truncation {self.dim}")
        return n_a * self.dim + n_tilde

    def occupations(self):
        """Arrays ``(n_a, n_tilde)`` for every basis index."""
        k = np.arange(self.total_dim)
        return k // self.dim, k % self.dim


@dataclass(frozen=True)
class OracleReport:
    n: int
    n_tilde: int
    theta: float
    n0: float
    dim: int
    variance_oracle: float  # in units of c^2
    bracket_paper: float
    bracket_bogoliubov_analytic: float
    leakage: float
    convention: ThetaConvention
    rel_diff_vs_paper: float
    rel_diff_vs_analytic: float


def _check_dim(dim) -> int:
    return TruncatedTwoModeSpace(dim).dim


def annihilation_matrix(dim: int) -> np.ndarray:
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def embed(op, slot: Slot, dim: int) -> np.ndarray:
    """Lift a single-mode ``dim x dim`` operator to the two-mode space."""
    dim = _check_dim(dim)
    op = np.asarray(op)
    if op.shape != (dim, dim):
        raise DomainError(f"operator shape {op.shape} does not match dimension {dim}")
    eye = np.eye(dim)
    if Slot(slot) is Slot.A_MODE:
        return np.kron(op, eye)
    return np.kron(eye, op)


def quadrature_matrices(dim: int, omega: float, units: UnitSystem):
    """Position and momentum quadratures ``(q, p)`` of one mode."""
    if not (math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and > 0, got {omega!r}")
    a = annihilation_matrix(dim).astype(complex)
    ad = a.conj().T
    q = math.sqrt(units.hbar / (2.0 * omega)) * (a + ad)
    p = 1j * math.sqrt(units.hbar * omega / 2.0) * (ad - a)
    return q, p


def thermal_generator(theta: float, dim: int, sign: int = 1) -> np.ndarray:
    """Anti-Hermitian generator ``sign * theta * (a^dag at^dag - a at)`` on ``dim**2`` states.

    ``sign=-1`` flips the exponent for sensitivity checks.
    """
    if not (math.isfinite(theta) and theta >= 0):
        raise DomainError(f"theta must be finite and >= 0, got {theta!r}")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    a = annihilation_matrix(dim)
    # kron(X, Y) == embed(X, A) @ embed(Y, TILDE), built directly to skip a dense product
    pair = np.kron(a.T, a.T) - np.kron(a, a)
    return (sign * theta) * pair


def _sector_generator(theta: float, dim: int, diff: int, sign: int) -> np.ndarray:
    """Block of the generator on states ``(m, m - diff)``, ordered by increasing ``m``.

    Equal to ``thermal_generator(...)[np.ix_(idx, idx)]`` for that sector but
    built without the ``dim**2`` matrix.
    """
    m = np.arange(max(diff, 0), min(dim, dim + diff))
    # a^dag at^dag: (m, m - diff) -> (m + 1, m + 1 - diff)
    up = np.sqrt(m[:-1] + 1.0) * np.sqrt(m[:-1] - diff + 1.0)
    return (sign * theta) * (np.diag(up, k=-1) - np.diag(up, k=1))


def thermal_fock_state(
    n: int, n_tilde: int, theta: float, dim: int, sign: int = 1, full: bool = False
) -> np.ndarray:
    """Apply ``exp(K)`` to the basis vector ``|n, n_tilde>``.

    The generator only connects states with equal ``n_a - n_tilde``, so by
    default just that invariant block is exponentiated; ``full=True``
    exponentiates the whole ``dim**2`` matrix instead. Both give the same
    vector.
    """
    space = TruncatedTwoModeSpace(dim)
    start = space.index(n, n_tilde)
    if not (math.isfinite(theta) and theta >= 0):
        raise DomainError(f"theta must be finite and >= 0, got {theta!r}")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    state = np.zeros(space.total_dim)
    if full:
        state[:] = matrix_exponential(thermal_generator(theta, dim, sign))[:, start]
        return state
    diff = n - n_tilde
    n_a, n_t = space.occupations()
    idx = np.flatnonzero(n_a - n_t == diff)
    block = _sector_generator(theta, dim, diff, sign)
    state[idx] = matrix_exponential(block)[:, n - max(diff, 0)]
    return state


def _as_modes(state) -> tuple[np.ndarray, int]:
    psi = np.asarray(state)
    dim = math.isqrt(psi.size)
    if psi.ndim != 1 or dim * dim != psi.size or dim < 2:
        raise DomainError(f"state length {psi.size} is not a square >= 4")
    return psi.reshape(dim, dim), dim


def current_operator(dim: int, c_sq: float, phase: float) -> np.ndarray:
    """Single-mode current ``c (a e^{i phase} + a^dag e^{-i phase})``."""
    if not c_sq > 0:
        raise DomainError(f"c_sq must be > 0, got {c_sq!r}")
    a = annihilation_matrix(dim)
    return math.sqrt(c_sq) * (a * np.exp(1j * phase) + a.T * np.exp(-1j * phase))


def _current_moments(state, c_sq: float, phase: float):
    psi, dim = _as_modes(state)
    # the current acts on the physical mode only: contract on the slow index
    j_psi = current_operator(dim, c_sq, phase) @ psi
    norm = np.vdot(psi, psi).real
    mean = np.vdot(psi, j_psi) / norm
    second = np.vdot(j_psi, j_psi).real / norm
    return mean, second


def current_variance_oracle(state, c_sq: float = 1.0, phase: float = 0.0) -> float:
    """``<j^2> - <j>^2`` for the cell current in ``state``."""
    mean, second = _current_moments(state, c_sq, phase)
    return float(second - abs(mean) ** 2)


def current_mean_oracle(state, c_sq: float = 1.0, phase: float = 0.0) -> complex:
    return complex(_current_moments(state, c_sq, phase)[0])


def leakage(state, dim: Optional[int] = None) -> float:
    """Probability on the truncation edge, ``n_a == D-1`` or ``n_tilde == D-1``."""
    psi, d = _as_modes(state)
    if dim is not None and dim != d:
        raise DomainError(f"state has dimension {d}, expected {dim}")
    prob = np.abs(psi) ** 2
    total = prob.sum()
    edge = prob[-1, :].sum() + prob[:-1, -1].sum()
    return float(min(max(edge / total, 0.0), 1.0))


def adaptive_thermal_state(
    n: int,
    n_tilde: int,
    theta: float,
    tol: float = 1e-8,
    dim_cap: int = DEFAULT_DIM_CAP,
    sign: int = 1,
):
    """Grow the truncation from ``max(n, n_tilde) + 16`` in steps of 8 until leakage < ``tol``.

    Returns:
        ``(state, dim, leakage)``

    Raises:
        ConvergenceError: if ``dim_cap`` is reached first.
    """
    dim = max(n, n_tilde) + _DIM_MARGIN
    if dim > dim_cap:
        raise ConvergenceError(f"starting dimension {dim} already exceeds cap {dim_cap}")
    while True:
        state = thermal_fock_state(n, n_tilde, theta, dim, sign=sign)
        leak = leakage(state, dim)
        if leak < tol:
            return state, dim, leak
        if dim + _DIM_STEP > dim_cap:
            raise ConvergenceError(
                f"leakage {leak:.3e} >= tol {tol:.3e} at dimension {dim} (cap {dim_cap})"
            )
        dim += _DIM_STEP


def bogoliubov_bracket(n: int, n_tilde: int, bog: BogoliubovParams) -> float:
    """Variance bracket ``2 <a^dag a>_T + 1`` with ``<a^dag a>_T = mu^2 n + tau^2 (n_tilde + 1)``."""
    return 2.0 * (bog.mu**2 * n + bog.tau**2 * (n_tilde + 1)) + 1.0


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def oracle_at_theta(
    n: int,
    n_tilde: int,
    theta: float,
    convention=ThetaConvention.PAPER,
    tol: float = 1e-8,
    dim_cap: int = DEFAULT_DIM_CAP,
    sign: int = 1,
) -> OracleReport:
    """Compare the oracle variance with both closed-form brackets at a given ``theta``.

    The thermal photon number fed to the closed-form bracket is the one ``theta``
    implies under ``convention``.
    """
    bog = BogoliubovParams.from_theta(theta, convention)
    state, dim, leak = adaptive_thermal_state(n, n_tilde, theta, tol, dim_cap, sign)
    variance = current_variance_oracle(state, 1.0, 0.0)
    paper = fluctuation_bracket(n, bog.n0)
    analytic = bogoliubov_bracket(n, n_tilde, bog)
    return OracleReport(
        n=n,
        n_tilde=n_tilde,
        theta=theta,
        n0=bog.n0,
        dim=dim,
        variance_oracle=variance,
        bracket_paper=paper,
        bracket_bogoliubov_analytic=analytic,
        leakage=leak,
        convention=bog.convention,
        rel_diff_vs_paper=_rel(variance, paper),
        rel_diff_vs_analytic=_rel(variance, analytic),
    )


def oracle_vs_paper(
    spec: ThermalFockSpec,
    convention,
    units: UnitSystem,
    tol: float = 1e-8,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> OracleReport:
    """Oracle comparison for a state given by temperature and frequency."""
    x = energy_ratio(spec.omega, spec.temperature, units)
    bog = theta_from_n0(thermal_photon_number(x), convention)
    return oracle_at_theta(spec.n, spec.n_tilde, bog.theta, convention, tol, dim_cap)


def dump_json(array) -> str:
    """Debug dump: ``{"shape": [...], "data": [[re, im], ...]}`` in row-major order."""
    a = np.asarray(array, dtype=complex)
    flat = a.reshape(-1)
    return json.dumps(
        {"shape": list(a.shape), "data": [[float(z.real), float(z.imag)] for z in flat]}
    )
