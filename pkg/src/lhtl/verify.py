"""Self-checks of the closed forms, the classical identities and the Fock-space oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import LineParams, WaveSolution, line_quantities, wave_residual
from .nri import (
    CellContext,
    constitutive_prefactor_sq,
    current_prefactor_sq,
    nri_chain,
    nri_eq11,
    nri_zero_T_limit,
)
from .oracle import oracle_at_theta
from .thermal import ThermalFockSpec, ThetaConvention
from .units import NATURAL, SI

__all__ = [
    "Check",
    "VerificationReport",
    "X_GRID",
    "N_GRID",
    "DJ2_GRID",
    "equivalence_max_rel_diff",
    "limit_errors",
    "classical_identity_errors",
    "wave_convergence_ratio",
    "run_verification",
]

X_GRID = np.geomspace(1e-6, 50.0, 10)
N_GRID = (0, 1, 2, 5, 10, 20, 50, 100)
DJ2_GRID = (0.1, 1.0, 10.0, 100.0, 600.0)

ORACLE_N = (0, 1, 3, 5)
ORACLE_THETA = (0.1, 0.5, 1.0)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    discrepancy: list = field(default_factory=list)  # OracleReport rows, report-only

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list:
        out = [f"check={c.name} status={'PASS' if c.passed else 'FAIL'} {c.detail}"
               for c in self.checks]
        out.append("# paper-bracket discrepancy (report only)")
        for r in self.discrepancy:
            out.append(
                f"convention={r.convention.value} n={r.n} n_tilde={r.n_tilde} "
                f"theta={r.theta:.6g} n0={r.n0:.6e} dim={r.dim} "
                f"variance_oracle={r.variance_oracle:.9e} bracket_paper={r.bracket_paper:.9e} "
                f"bracket_analytic={r.bracket_bogoliubov_analytic:.9e} "
                f"rel_diff_vs_paper={r.rel_diff_vs_paper:.6e} "
                f"rel_diff_vs_analytic={r.rel_diff_vs_analytic:.6e}"
            )
        out.append(f"overall={'PASS' if self.passed else 'FAIL'}")
        return out


def _natural_state(x: float, n: int) -> tuple:
    # omega = 1 in natural units, so T = 1/x
    return ThermalFockSpec(n, 1.0 / x, 1.0), CellContext(1.0, 1.0, 1.0)


def equivalence_max_rel_diff(xs=X_GRID, ns=N_GRID, dj2s=DJ2_GRID) -> float:
    worst = 0.0
    for x in xs:
        for n in ns:
            spec, ctx = _natural_state(float(x), n)
            for dj2 in dj2s:
                a = nri_eq11(dj2, spec, ctx, NATURAL).n_r
                b = nri_chain(dj2, spec, ctx, NATURAL).n_r
                worst = max(worst, abs(a - b) / abs(a))
    return worst


def limit_errors(ns=N_GRID, dj2=1.0) -> tuple:
    """``(worst high-x relative error, worst low-x |n_r|/|zero-T limit|)``."""
    high, low = 0.0, 0.0
    for n in ns:
        for x in (50.5, 100.0, 1e3, 1e6):
            spec, ctx = _natural_state(x, n)
            ref = nri_zero_T_limit(dj2, n, ctx, NATURAL)
            for f in (nri_eq11, nri_chain):
                high = max(high, abs(f(dj2, spec, ctx, NATURAL).n_r - ref) / abs(ref))
        for x in (9e-7, 1e-7, 1e-9):
            spec, ctx = _natural_state(x, n)
            ref = nri_zero_T_limit(dj2, n, ctx, NATURAL)
            for f in (nri_eq11, nri_chain):
                low = max(low, abs(f(dj2, spec, ctx, NATURAL).n_r) / abs(ref))
    return high, low


def classical_identity_errors(samples: int = 100, seed: int = 0) -> float:
    """Worst relative error of the four classical identities over random lines."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        c = 10 ** rng.uniform(-13, -9)
        l = 10 ** rng.uniform(-10, -6)
        omega = 10 ** rng.uniform(6, 11)
        z0 = 10 ** rng.uniform(-4, -1)
        q = line_quantities(LineParams(c, l), omega)
        ctx = CellContext(z0, q.z_char, omega, l)
        errs = [
            abs(q.gamma - 1j * q.beta) / abs(q.beta),
            abs(q.v_phase + q.v_group) / abs(q.v_group),
            abs(-math.sqrt(q.eps_eff * q.mu_eff) - q.beta / omega) / abs(q.beta / omega),
        ]
        lhs = constitutive_prefactor_sq(ctx, q.eps_eff, q.mu_eff, SI)
        rhs = current_prefactor_sq(ctx, SI)
        errs.append(abs(lhs - rhs) / rhs)
        worst = max(worst, *errs)
    return worst


def wave_convergence_ratio(h: float = 1e-2, amp: complex = 1.0 + 0.5j) -> float:
    """Residual at spacing ``h`` divided by the residual at ``h/2`` (about 4)."""
    q = line_quantities(LineParams(1.0, 1.0), 1.0)

    def residual(step):
        grid = np.linspace(0.0, 2 * math.pi, int(round(2 * math.pi / step)) + 1)
        return wave_residual(q, WaveSolution(amp, amp, grid))

    return residual(h) / residual(h / 2)


def run_verification(
    theta_max: float = 1.0, dim_cap: int = 128, tol: float = 1e-8
) -> VerificationReport:
    """Run every assertable check and collect the paper-bracket comparison table.

    Raises:
        ConvergenceError: if an oracle run cannot reach ``tol`` within ``dim_cap``.
    """
    report = VerificationReport()
    add = report.checks.append

    eq = equivalence_max_rel_diff()
    add(Check("eq11_chain_equivalence", eq <= 1e-12, f"max_rel_diff={eq:.3e} limit=1e-12"))

    high, low = limit_errors()
    add(Check("zero_T_limit", high <= 1e-10, f"max_rel_err={high:.3e} limit=1e-10"))
    add(Check("high_T_limit", low <= 1e-5, f"max_ratio={low:.3e} limit=1e-5"))

    cl = classical_identity_errors()
    add(Check("classical_identities", cl <= 1e-12, f"max_rel_err={cl:.3e} limit=1e-12"))
    ratio = wave_convergence_ratio()
    add(Check("wave_residual_order", abs(ratio - 4.0) <= 0.8,
              f"halving_ratio={ratio:.4f} expected=4+-0.8"))

    theta_cal = min(0.5, theta_max)
    cal = oracle_at_theta(0, 0, theta_cal, tol=tol, dim_cap=dim_cap)
    target = math.cosh(2 * theta_cal)
    err = abs(cal.variance_oracle - target)
    add(Check("oracle_squeezed_vacuum", err <= 1e-6,
              f"theta={theta_cal:g} variance={cal.variance_oracle:.9f} "
              f"expected={target:.9f} abs_err={err:.3e} dim={cal.dim}"))

    worst = 0.0
    thetas = [t for t in ORACLE_THETA if t <= theta_max] or [theta_max]
    for convention in ThetaConvention:
        for n in ORACLE_N:
            for theta in thetas:
                r = oracle_at_theta(n, n, theta, convention, tol=tol, dim_cap=dim_cap)
                worst = max(worst, r.rel_diff_vs_analytic)
                report.discrepancy.append(r)
    add(Check("oracle_vs_bogoliubov", worst <= 1e-6, f"max_rel_diff={worst:.3e} limit=1e-6"))
    return report
